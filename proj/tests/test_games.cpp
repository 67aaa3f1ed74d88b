#include <doctest.h>

#include <cmath>
#include <functional>

#include "synclift/experiments.hpp"
#include "synclift/games.hpp"

using namespace synclift;

namespace {

// Plain nested-loop value of a deterministic strategy, kept apart from the
// library's compensated sum.
double strategy_value(const Game& g, const std::vector<int>& f) {
  double v = 0;
  for (int x = 0; x < g.questions(); ++x)
    for (int y = 0; y < g.questions(); ++y) v += g.lambda(x, y) * g.predicate(f[x], f[y], x, y);
  return v;
}

double brute_force_value(const Game& g) {
  std::vector<int> f(g.questions(), 0);
  double best = -1;
  std::function<void(int)> rec = [&](int x) {
    if (x == g.questions()) {
      best = std::max(best, strategy_value(g, f));
      return;
    }
    for (int a = 0; a < g.answers(); ++a) {
      f[x] = a;
      rec(x + 1);
    }
  };
  rec(0);
  return best;
}

}  // namespace

TEST_CASE("game_value") {
  const auto t = correlation_from_rep(random_rep(4, 3, 2, 8), TraceSpec::normalized(4));
  CHECK(game_value(trivial_game(3, 2, true), t) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(game_value(trivial_game(3, 2, false), t) == 0.0);
  CHECK(game_value(triangle_coloring_game(3), deterministic_table({0, 1, 2}, 3)) == 1.0);
  CHECK(game_value(triangle_coloring_game(3), deterministic_table({0, 0, 2}, 3)) == doctest::Approx(7.0 / 9));
  CHECK_THROWS_AS(game_value(triangle_coloring_game(3), t), Error);

  SUBCASE("monotone in the predicate") {
    const Game g = triangle_coloring_game(2);
    const auto table = correlation_from_rep(random_rep(3, 3, 2, 2), TraceSpec::normalized(3));
    const double before = game_value(g, table);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int x = 0; x < 3; ++x)
          for (int y = 0; y < 3; ++y) CHECK(game_value(g.with_predicate(a, b, x, y), table) >= before - 1e-15);
  }
}

TEST_CASE("Game validation") {
  CHECK_THROWS_AS(Game(2, 2, {{0.5, 0.5}, {0.5, 0.5}}, std::vector<int>(16, 1), false), Error);
  CHECK_THROWS_AS(Game(2, 2, {{0.5, 0.5}}, std::vector<int>(16, 1), false), Error);
  CHECK_THROWS_AS(Game(1, 2, {{1.0}}, std::vector<int>(3, 1), false), Error);
  CHECK_THROWS_AS(Game(1, 2, {{1.0}}, {1, 1, 1, 1}, true), Error);
  CHECK_NOTHROW(Game(1, 2, {{1.0}}, {1, 0, 0, 1}, true));
  CHECK_THROWS_AS(coloring_game(3, {{0, 0}}, 2), Error);
}

TEST_CASE("classical_sync_value") {
  const auto three = classical_sync_value(triangle_coloring_game(3));
  CHECK(three.value == 1.0);
  CHECK(three.argmax == std::vector<int>{0, 1, 2});

  // Every 2-coloring of a triangle has one monochromatic edge: 7/9.
  const auto two = classical_sync_value(triangle_coloring_game(2));
  CHECK(std::abs(two.value - 7.0 / 9) <= 1e-12);
  CHECK(std::abs(two.value - brute_force_value(triangle_coloring_game(2))) <= 1e-12);
  CHECK(two.argmax == std::vector<int>{0, 0, 1});

  CHECK(std::abs(classical_sync_value(pentagon_coloring_game(3)).value - 1.0) <= 1e-12);
  CHECK(std::abs(classical_sync_value(pentagon_coloring_game(2)).value - 13.0 / 15) <= 1e-12);

  SUBCASE("single question with the equality predicate") {
    const Game g(1, 3, {{1.0}}, {1, 0, 0, 0, 1, 0, 0, 0, 1}, true);
    CHECK(classical_sync_value(g).value == 1.0);
  }
  SUBCASE("argmax re-evaluates to the value") {
    for (const Game& g : {triangle_coloring_game(2), pentagon_coloring_game(2), pentagon_coloring_game(3),
                          coloring_game(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}, 3)}) {
      const auto best = classical_sync_value(g);
      CHECK(std::abs(game_value(g, deterministic_table(best.argmax, g.answers())) - best.value) <= 1e-12);
      CHECK(std::abs(best.value - brute_force_value(g)) <= 1e-12);
    }
  }
  SUBCASE("search space limit") {
    try {
      classical_sync_value(trivial_game(8, 8, true));
      FAIL("expected SearchSpaceTooLarge");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SearchSpaceTooLarge);
    }
  }
}

namespace {

// Moves every off-diagonal p(ab|xx) onto p(aa|xx).
CorrelationTable synchronize_table(CorrelationTable q) {
  for (int x = 0; x < q.questions(); ++x)
    for (int a = 0; a < q.answers(); ++a)
      for (int b = 0; b < q.answers(); ++b)
        if (a != b) {
          q(a, a, x, x) += q(a, b, x, x);
          q(a, b, x, x) = 0;
        }
  return q;
}

double max_lambda(const Game& g) {
  double m = 0;
  for (const auto& row : g.lambda())
    for (double w : row) m = std::max(m, w);
  return m;
}

}  // namespace

TEST_CASE("synchronizing a table moves the value by at most delta A^2 max lambda") {
  const Game g = pentagon_coloring_game(3);
  const int answers = g.answers();
  SUBCASE("planted violations on one question") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      CorrelationTable p = correlation_from_rep(random_rep(4, 5, 3, seed), TraceSpec::normalized(4));
      const int x = static_cast<int>(seed % 5);
      const double t = 0.01 * static_cast<double>(seed);
      for (int a = 0; a < answers; ++a)
        for (int b = 0; b < answers; ++b)
          if (a != b) {
            const double moved = std::min(t, p(a, a, x, x) / answers);
            p(a, a, x, x) -= moved;
            p(a, b, x, x) += moved;
          }
      const double delta = check_table(p, 1e-10).max_synchronicity;
      const CorrelationTable q = synchronize_table(p);
      CHECK(check_table(q, 1e-10).max_synchronicity == 0.0);
      CHECK(std::abs(game_value(g, p) - game_value(g, q)) <= delta * answers * answers * max_lambda(g) + 1e-12);
    }
  }
  SUBCASE("violations spread over all questions") {
    // Off-diagonal mass on every question: the change is bounded by
    // delta (A^2 - A) sum_x lambda(x, x).
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto tuples = perturb_rep(random_rep(4, 5, 3, seed), 0.05, seed + 100);
      CorrelationTable p(5, 3);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y)
              p(a, b, x, y) = normalized_trace((tuples[x].elements[a] * tuples[y].elements[b] +
                                                tuples[y].elements[b] * tuples[x].elements[a]) / 2.0);
      const double delta = check_table(p, 1e-10).max_synchronicity;
      double diagonal_weight = 0;
      for (int x = 0; x < 5; ++x) diagonal_weight += g.lambda(x, x);
      CHECK(std::abs(game_value(g, p) - game_value(g, synchronize_table(p))) <=
            delta * (answers * answers - answers) * diagonal_weight + 1e-12);
    }
  }
}

TEST_CASE("seesaw_optimize") {
  const Game k3 = triangle_coloring_game(3);
  SUBCASE("trajectory length and bookkeeping") {
    const auto r = seesaw_optimize(k3, 3, 1, 1);
    REQUIRE(r.trajectory.size() == 2);
    CHECK(r.trajectory[0].first == 0);
    CHECK(r.trajectory[1].first == 1);
    CHECK(r.rounding_invocations == 3);
  }
  SUBCASE("accept-all game is already optimal") {
    const auto r = seesaw_optimize(trivial_game(2, 2, true), 2, 5, 3);
    CHECK(std::abs(r.trajectory[0].second - 1.0) <= 1e-12);
    CHECK(std::abs(r.value - 1.0) <= 1e-12);
  }
  SUBCASE("never worse than the start and always a PVM") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto r = seesaw_optimize(pentagon_coloring_game(3), 3, 30, seed);
      CHECK(r.value >= r.trajectory[0].second);
      CHECK(validate_player_rep(r.rep, 1e-10).valid);
      CHECK(std::abs(game_value(pentagon_coloring_game(3), correlation_from_rep(r.rep, TraceSpec::normalized(3))) -
                     r.value) <= 1e-12);
    }
  }
  SUBCASE("reaches the classical value on K3 within a few restarts") {
    double best = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) best = std::max(best, seesaw_optimize(k3, 3, 200, seed).value);
    CHECK(best >= classical_sync_value(k3).value - 1e-3);
  }
  CHECK_THROWS_AS(seesaw_optimize(k3, 0, 10, 1), Error);
  CHECK_THROWS_AS(seesaw_optimize(k3, 3, 0, 1), Error);
}
