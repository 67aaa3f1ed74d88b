#pragma once

// Synchronous nonlocal games (lambda, V), their value on correlation tables,
// a brute-force classical oracle and a rounding-based local search.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "synclift/correlations.hpp"
#include "synclift/player.hpp"

namespace synclift {

class Game {
 public:
  /// lambda is X x X (row x, column y). predicate is flat [a][b][x][y] with y
  /// fastest, entries 0 or 1.
  Game(int questions, int answers, std::vector<std::vector<double>> lambda,
       std::vector<int> predicate, bool synchronous, const Tolerances& tol = {});

  int questions() const { return questions_; }
  int answers() const { return answers_; }
  bool synchronous() const { return synchronous_; }
  double lambda(int x, int y) const { return lambda_[x][y]; }
  const std::vector<std::vector<double>>& lambda() const { return lambda_; }
  int predicate(int a, int b, int x, int y) const {
    return predicate_[((static_cast<std::size_t>(a) * answers_ + b) * questions_ + x) * questions_ + y];
  }
  const std::vector<int>& predicate() const { return predicate_; }

  /// Copy with V(a,b|x,y) set to one.
  Game with_predicate(int a, int b, int x, int y) const;

 private:
  int questions_;
  int answers_;
  std::vector<std::vector<double>> lambda_;
  std::vector<int> predicate_;
  bool synchronous_;
};

/// Graph coloring game: lambda uniform over ordered pairs (x, y) with x == y
/// or {x, y} an edge; V requires equal colors on equal vertices and distinct
/// colors on edges.
Game coloring_game(int vertices, const std::vector<std::pair<int, int>>& edges, int colors);

Game triangle_coloring_game(int colors);
Game pentagon_coloring_game(int colors);

/// V == 1 (value 1) or V == 0 (value 0) on a single question pair, uniform lambda.
Game trivial_game(int questions, int answers, bool accept_all);

/// sum_{x,y} lambda(x,y) sum_{a,b} V(a,b|x,y) p(ab|xy).
double game_value(const Game& g, const CorrelationTable& t);

/// The deterministic-strategy table: p(ab|xy) = [a = f(x)][b = f(y)].
CorrelationTable deterministic_table(const std::vector<int>& f, int answers);

struct ClassicalValue {
  double value = 0;
  std::vector<int> argmax;  // lexicographically smallest maximizer
};

/// Exhaustive search over f: X -> A. Throws SearchSpaceTooLarge if A^X > 10^7.
ClassicalValue classical_sync_value(const Game& g);

struct OptimizationResult {
  PlayerRep rep;
  double value = 0;
  std::vector<std::pair<int, double>> trajectory;  // (iteration, value); iteration 0 is the start
  int rounding_invocations = 0;
};

struct SeesawOptions {
  double step = 0.1;
};

/// Projected ascent from random_rep(dim, X, A, seed): for each question in
/// turn, step every e(a|x) along the gradient of the value under tr_n, clamp
/// to a positive contraction, and restore the PVM with orthogonalize_tuple
/// (pad_last). Returns the best iterate seen.
OptimizationResult seesaw_optimize(const Game& g, Eigen::Index dim, int iters, std::uint64_t seed,
                                   SeesawOptions options = {});

}  // namespace synclift
