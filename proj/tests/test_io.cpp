#include <doctest.h>

#include <string>

#include "synclift/experiments.hpp"
#include "synclift/games.hpp"
#include "synclift/io.hpp"

using namespace synclift;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return ErrorCode::NumericalFailure;
}

std::string message_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("JSON round trips are value-identical") {
  SUBCASE("matrices") {
    Rng rng(1);
    for (Eigen::Index n : {1, 3, 8}) {
      const Matrix m = gaussian_matrix(n, n, rng);
      CHECK(io::matrix_from_json(io::parse_json(io::dump(io::to_json(m)))) == m);
    }
  }
  SUBCASE("player reps") {
    const PlayerRep rep = random_rep(5, 3, 2, 9);
    const PlayerRep back = io::rep_from_json(io::parse_json(io::dump(io::to_json(rep))));
    REQUIRE(back.questions == 3);
    REQUIRE(back.answers == 2);
    for (int x = 0; x < 3; ++x)
      for (int a = 0; a < 2; ++a) CHECK(back.e(a, x) == rep.e(a, x));
  }
  SUBCASE("trace specs") {
    const TraceSpec tau({{2, 0.1}, {3, 0.9}});
    const TraceSpec back = io::trace_from_json(io::parse_json(io::dump(io::to_json(tau))));
    REQUIRE(back.blocks().size() == 2);
    CHECK(back.blocks()[1].dim == 3);
    CHECK(back.blocks()[0].weight == 0.1);
  }
  SUBCASE("sequences") {
    const auto s = perturbed_sequence(random_rep(3, 2, 2, 4), {0.1, 0.05}, 2, true);
    const auto back = io::sequence_from_json(io::parse_json(io::dump(io::to_json(s))));
    REQUIRE(back.indices.size() == 2);
    CHECK(back.indices[1].dim == 6);
    CHECK(back.indices[1].tuples[1].elements[0] == s.indices[1].tuples[1].elements[0]);
    CHECK(io::dump(io::to_json(back)) == io::dump(io::to_json(s)));
  }
  SUBCASE("tables and games") {
    const auto t = correlation_from_rep(random_rep(3, 2, 3, 6), TraceSpec::normalized(3));
    CHECK(io::table_from_json(io::parse_json(io::dump(io::to_json(t)))).values() == t.values());
    const Game g = pentagon_coloring_game(3);
    const Game back = io::game_from_json(io::parse_json(io::dump(io::to_json(g))));
    CHECK(back.predicate() == g.predicate());
    CHECK(back.lambda() == g.lambda());
    CHECK(back.synchronous());
  }
}

TEST_CASE("malformed input") {
  SUBCASE("syntax errors carry line and column") {
    const std::string msg = message_of([] { io::parse_json("{\n  \"dim\": 2,\n  \"entries\": [[1, 2\n"); });
    CHECK(msg.find("line 4") != std::string::npos);
    CHECK(code_of([] { io::parse_json("{\"dim\": }"); }) == ErrorCode::MalformedInput);
    const std::string inline_msg = message_of([] { io::parse_json("{\"dim\": }"); });
    CHECK(inline_msg.find("line 1, column 9") != std::string::npos);
  }
  SUBCASE("schema errors") {
    CHECK(code_of([] { io::matrix_from_json(io::parse_json(R"({"entries": []})")); }) == ErrorCode::MalformedInput);
    CHECK(code_of([] { io::matrix_from_json(io::parse_json(R"({"dim": 1, "entries": [[[1]]]})")); }) ==
          ErrorCode::MalformedInput);
    CHECK(code_of([] { io::matrix_from_json(io::parse_json(R"({"dim": 2, "entries": [[[1, 0]]]})")); }) ==
          ErrorCode::MalformedInput);
    CHECK(code_of([] { io::matrix_from_json(io::parse_json(R"({"dim": 1, "entries": [[["x", 0]]]})")); }) ==
          ErrorCode::MalformedInput);
    CHECK(code_of([] { io::table_from_json(io::parse_json(R"({"questions": 1, "answers": 2, "values": [1]})")); }) ==
          ErrorCode::MalformedInput);
    CHECK(code_of([] { io::rep_from_json(io::parse_json("[1, 2]")); }) == ErrorCode::MalformedInput);
  }
  CHECK(code_of([] { io::read_json_file("/nonexistent/file.json"); }) == ErrorCode::MalformedInput);
}

TEST_CASE("CSV writers") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(1.0) == "1");
  const auto t = deterministic_table({1}, 2);
  CHECK(io::table_csv(t) == "a,b,x,y,p\n0,0,0,0,0\n0,1,0,0,0\n1,0,0,0,0\n1,1,0,0,1\n");
  const auto csv = io::defects_csv({}, "index", "3");
  CHECK(csv == "index,question,element,projection_defect,rounding_distance,certified_bound,original_distance\n");
}
