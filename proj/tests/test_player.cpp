#include <doctest.h>

#include "oracles.hpp"
#include "synclift/io.hpp"
#include "synclift/player.hpp"

using namespace synclift;

TEST_CASE("deterministic_rep") {
  SUBCASE("identity function") {
    const PlayerRep rep = deterministic_rep({0, 1}, 2, 2);
    CHECK(rep.dim == 1);
    CHECK(rep.e(0, 0)(0, 0) == Complex(1.0));
    CHECK(rep.e(1, 0)(0, 0) == Complex(0.0));
    CHECK(rep.e(0, 1)(0, 0) == Complex(0.0));
    CHECK(rep.e(1, 1)(0, 0) == Complex(1.0));
  }
  SUBCASE("constant function") {
    const PlayerRep rep = deterministic_rep({0, 0, 0}, 3, 4);
    for (int x = 0; x < 3; ++x) CHECK(rep.e(0, x)(0, 0) == Complex(1.0));
  }
  SUBCASE("always an exact PVM") {
    const auto report = validate_player_rep(deterministic_rep({2, 0, 1}, 3, 3), 0.0);
    CHECK(report.valid);
    CHECK(report.max_projection_defect == 0.0);
    CHECK(report.max_sum_defect == 0.0);
  }
  SUBCASE("out of range") {
    try {
      deterministic_rep({0, 2}, 2, 2);
      FAIL("expected InvalidFunctionRange");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidFunctionRange);
    }
  }
}

TEST_CASE("validate_player_rep") {
  SUBCASE("half a projection has defect 1/4") {
    PlayerRep rep = random_rep(4, 2, 2, 3);
    rep.pvms[1].projections[0] *= 0.5;
    const auto report = validate_player_rep(rep, 1e-10);
    CHECK_FALSE(report.valid);
    CHECK(report.max_projection_defect == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(report.per_question[0].projection <= 1e-12);
  }
  SUBCASE("shape problems are reported, not thrown") {
    PlayerRep rep = random_rep(3, 2, 2, 3);
    rep.pvms.pop_back();
    const auto report = validate_player_rep(rep, 1e-10);
    CHECK_FALSE(report.valid);
    CHECK_FALSE(report.message.empty());
  }
  SUBCASE("non-orthogonal answers are caught") {
    PlayerRep rep = deterministic_rep({0}, 1, 2);
    rep.pvms[0].projections[1] = rep.pvms[0].projections[0];
    const auto report = validate_player_rep(rep, 1e-10);
    CHECK(report.max_orthogonality_defect == doctest::Approx(1.0));
    CHECK(report.max_sum_defect == doctest::Approx(1.0));
  }
}

TEST_CASE("random_rep") {
  SUBCASE("valid PVMs up to dim 64") {
    for (Eigen::Index dim : {1, 4, 7, 16, 64}) {
      const int answers = static_cast<int>(std::min<Eigen::Index>(dim, 3));
      const auto report = validate_player_rep(random_rep(dim, 3, answers, 7 + dim), 1e-10);
      CHECK(report.valid);
    }
    CHECK(validate_player_rep(random_rep(4, 2, 2, 7), 1e-10).valid);
  }
  SUBCASE("dim one with a single answer") {
    const PlayerRep rep = random_rep(1, 3, 1, 5);
    for (int x = 0; x < 3; ++x) CHECK(std::abs(rep.e(0, x)(0, 0) - Complex(1.0)) <= 1e-15);
  }
  SUBCASE("round-robin ranks") {
    const PlayerRep rep = random_rep(5, 1, 2, 9);
    CHECK(oracle::normalized_trace(rep.e(0, 0)).real() * 5 == doctest::Approx(3.0));
    CHECK(oracle::normalized_trace(rep.e(1, 0)).real() * 5 == doctest::Approx(2.0));
  }
  SUBCASE("same seed gives byte-identical output") {
    CHECK(io::dump(io::to_json(random_rep(4, 2, 3, 123))) == io::dump(io::to_json(random_rep(4, 2, 3, 123))));
    CHECK(io::dump(io::to_json(random_rep(4, 2, 3, 123))) != io::dump(io::to_json(random_rep(4, 2, 3, 124))));
  }
  SUBCASE("more answers than dimensions") {
    try {
      random_rep(2, 1, 3, 1);
      FAIL("expected AnswerCountExceedsDim");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::AnswerCountExceedsDim);
    }
    const PlayerRep rep = random_rep(2, 1, 3, 1, {.allow_zero_projections = true});
    CHECK(validate_player_rep(rep, 1e-10).valid);
    CHECK(oracle::max_abs(rep.e(2, 0)) == 0.0);
  }
}

TEST_CASE("perturb_rep") {
  const PlayerRep rep = random_rep(4, 2, 2, 17);
  SUBCASE("eps = 0 is the identity") {
    const auto tuples = perturb_rep(rep, 0.0, 1);
    for (int x = 0; x < 2; ++x)
      for (int a = 0; a < 2; ++a) CHECK(tuples[x].elements[a] == rep.e(a, x));
  }
  SUBCASE("eps = 0.05 produces a small nonzero defect") {
    const auto tuples = perturb_rep(rep, 0.05, 1);
    double defect = 0;
    for (const auto& t : tuples)
      for (const auto& a : t.elements) {
        defect = std::max(defect, projection_defect(a));
        CHECK(is_positive_contraction(a, 1e-12));
      }
    CHECK(defect > 0.0);
    CHECK(defect < 0.15);
  }
  SUBCASE("defect <= 4 eps on the seed corpus") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const PlayerRep base = random_rep(2 + seed % 5, 2, 2, seed);
      for (double eps : {0.2, 0.1, 0.05, 0.01, 0.001}) {
        double defect = 0;
        for (const auto& t : perturb_rep(base, eps, seed * 31))
          for (const auto& a : t.elements) defect = std::max(defect, projection_defect(a));
        CHECK(defect <= 4 * eps);
      }
    }
  }
  CHECK_THROWS_AS(perturb_rep(rep, 0.3, 1), Error);
  CHECK_THROWS_AS(perturb_rep(rep, -0.1, 1), Error);
}

TEST_CASE("TraceSpec and apply_trace") {
  SUBCASE("single block on the identity") { CHECK(apply_trace(TraceSpec::normalized(3), Matrix::Identity(3, 3)) == doctest::Approx(1.0)); }
  SUBCASE("two scalar blocks") {
    const TraceSpec tau({{1, 0.3}, {1, 0.7}});
    Matrix a = Matrix::Zero(2, 2);
    a(0, 0) = 2;
    a(1, 1) = 4;
    CHECK(apply_trace(tau, a) == doctest::Approx(3.4).epsilon(1e-15));
  }
  SUBCASE("tracial, linear and unital on random block-diagonal matrices") {
    const TraceSpec tau({{2, 0.25}, {3, 0.5}, {1, 0.25}});
    Rng rng(31);
    auto block_diagonal = [&] {
      Matrix m = Matrix::Zero(6, 6);
      m.block(0, 0, 2, 2) = gaussian_matrix(2, 2, rng);
      m.block(2, 2, 3, 3) = gaussian_matrix(3, 3, rng);
      m.block(5, 5, 1, 1) = gaussian_matrix(1, 1, rng);
      return m;
    };
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix x = block_diagonal(), y = block_diagonal();
      CHECK(std::abs(apply_trace_complex(tau, x * y) - apply_trace_complex(tau, y * x)) <= 1e-10);
      const Complex alpha(0.3, -1.2), beta(-2.0, 0.5);
      CHECK(std::abs(apply_trace_complex(tau, alpha * x + beta * y) -
                     (alpha * apply_trace_complex(tau, x) + beta * apply_trace_complex(tau, y))) <= 1e-12);
    }
    CHECK(apply_trace(tau, Matrix::Identity(6, 6)) == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("PVM elements sum to one under any trace") {
    const PlayerRep rep = direct_sum(random_rep(3, 2, 3, 1), random_rep(4, 2, 3, 2));
    const TraceSpec tau({{3, 0.4}, {4, 0.6}});
    for (int x = 0; x < 2; ++x) {
      double total = 0;
      for (int a = 0; a < 3; ++a) total += apply_trace(tau, rep.e(a, x));
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("errors") {
    const TraceSpec tau({{1, 0.5}, {1, 0.5}});
    try {
      apply_trace(tau, Matrix::Identity(3, 3));
      FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
    Matrix leaky = Matrix::Identity(2, 2);
    leaky(0, 1) = leaky(1, 0) = 0.1;
    try {
      apply_trace(tau, leaky);
      FAIL("expected BlockLeakage");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BlockLeakage);
    }
    CHECK_THROWS_AS(TraceSpec({{1, 0.5}, {1, 0.6}}), Error);
    CHECK_THROWS_AS(TraceSpec({{1, -0.5}, {1, 1.5}}), Error);
    CHECK_THROWS_AS(TraceSpec({}), Error);
  }
}
