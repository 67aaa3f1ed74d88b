#include "synclift/games.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "synclift/lift.hpp"

namespace synclift {

Game::Game(int questions, int answers, std::vector<std::vector<double>> lambda,
           std::vector<int> predicate, bool synchronous, const Tolerances& tol)
    : questions_(questions),
      answers_(answers),
      lambda_(std::move(lambda)),
      predicate_(std::move(predicate)),
      synchronous_(synchronous) {
  if (questions_ < 1 || answers_ < 1)
    throw Error(ErrorCode::InvalidArgument, "Game: questions and answers must be >= 1");
  if (static_cast<int>(lambda_.size()) != questions_)
    throw Error(ErrorCode::ShapeMismatch, "Game: lambda must have one row per question");
  double total = 0;
  for (const auto& row : lambda_) {
    if (static_cast<int>(row.size()) != questions_)
      throw Error(ErrorCode::ShapeMismatch, "Game: lambda must be square");
    for (double w : row) {
      if (!(w >= 0) || !std::isfinite(w)) throw Error(ErrorCode::InvalidArgument, "Game: lambda entries must be >= 0");
      total += w;
    }
  }
  if (!(std::abs(total - 1.0) <= tol.trace)) {
    std::ostringstream os;
    os << "Game: lambda sums to " << total;
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  const std::size_t expected = static_cast<std::size_t>(answers_) * answers_ * questions_ * questions_;
  if (predicate_.size() != expected)
    throw Error(ErrorCode::ShapeMismatch, "Game: predicate must have A*A*X*X entries");
  for (int v : predicate_)
    if (v != 0 && v != 1) throw Error(ErrorCode::InvalidArgument, "Game: predicate entries must be 0 or 1");
  if (synchronous_) {
    for (int x = 0; x < questions_; ++x)
      for (int a = 0; a < answers_; ++a)
        for (int b = 0; b < answers_; ++b)
          if (a != b && this->predicate(a, b, x, x) != 0) {
            std::ostringstream os;
            os << "Game: synchronous game accepts V(" << a << "," << b << "|" << x << "," << x << ")";
            throw Error(ErrorCode::InvalidArgument, os.str());
          }
  }
}

Game Game::with_predicate(int a, int b, int x, int y) const {
  Game out = *this;
  out.predicate_[((static_cast<std::size_t>(a) * answers_ + b) * questions_ + x) * questions_ + y] = 1;
  if (out.synchronous_ && x == y && a != b) out.synchronous_ = false;
  return out;
}

Game coloring_game(int vertices, const std::vector<std::pair<int, int>>& edges, int colors) {
  std::set<std::pair<int, int>> adjacent;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= vertices || v >= vertices || u == v)
      throw Error(ErrorCode::InvalidArgument, "coloring_game: bad edge");
    adjacent.insert({u, v});
    adjacent.insert({v, u});
  }
  const double support = static_cast<double>(vertices + adjacent.size());
  std::vector<std::vector<double>> lambda(vertices, std::vector<double>(vertices, 0.0));
  for (int x = 0; x < vertices; ++x)
    for (int y = 0; y < vertices; ++y)
      if (x == y || adjacent.count({x, y})) lambda[x][y] = 1.0 / support;

  std::vector<int> predicate(static_cast<std::size_t>(colors) * colors * vertices * vertices, 0);
  std::size_t i = 0;
  for (int a = 0; a < colors; ++a)
    for (int b = 0; b < colors; ++b)
      for (int x = 0; x < vertices; ++x)
        for (int y = 0; y < vertices; ++y, ++i) {
          bool ok = true;
          if (x == y) ok = a == b;
          else if (adjacent.count({x, y})) ok = a != b;
          predicate[i] = ok ? 1 : 0;
        }
  return Game(vertices, colors, std::move(lambda), std::move(predicate), true);
}

Game triangle_coloring_game(int colors) { return coloring_game(3, {{0, 1}, {1, 2}, {0, 2}}, colors); }

Game pentagon_coloring_game(int colors) {
  return coloring_game(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}, colors);
}

Game trivial_game(int questions, int answers, bool accept_all) {
  const double w = 1.0 / (static_cast<double>(questions) * questions);
  std::vector<std::vector<double>> lambda(questions, std::vector<double>(questions, w));
  std::vector<int> predicate(static_cast<std::size_t>(answers) * answers * questions * questions,
                             accept_all ? 1 : 0);
  return Game(questions, answers, std::move(lambda), std::move(predicate), false);
}

namespace {

// Neumaier compensated sum; lambda = 1/9 summed nine times comes out as 1.0.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    compensation_ += std::abs(sum_) >= std::abs(v) ? (sum_ - t) + v : (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0;
  double compensation_ = 0;
};

}  // namespace

double game_value(const Game& g, const CorrelationTable& t) {
  if (g.questions() != t.questions() || g.answers() != t.answers())
    throw Error(ErrorCode::ShapeMismatch, "game_value: table shape differs from game");
  CompensatedSum value;
  for (int x = 0; x < g.questions(); ++x)
    for (int y = 0; y < g.questions(); ++y) {
      const double w = g.lambda(x, y);
      if (w == 0) continue;
      for (int a = 0; a < g.answers(); ++a)
        for (int b = 0; b < g.answers(); ++b)
          if (g.predicate(a, b, x, y)) value.add(w * t(a, b, x, y));
    }
  return value.value();
}

CorrelationTable deterministic_table(const std::vector<int>& f, int answers) {
  CorrelationTable t(static_cast<int>(f.size()), answers);
  for (int x = 0; x < t.questions(); ++x)
    for (int y = 0; y < t.questions(); ++y) t(f[x], f[y], x, y) = 1.0;
  return t;
}

ClassicalValue classical_sync_value(const Game& g) {
  const int nx = g.questions(), na = g.answers();
  double space = 1;
  for (int x = 0; x < nx; ++x) space *= na;
  if (space > 1e7) {
    std::ostringstream os;
    os << "classical_sync_value: " << na << "^" << nx << " strategies exceed 10^7";
    throw Error(ErrorCode::SearchSpaceTooLarge, os.str());
  }
  std::vector<int> f(nx, 0);
  ClassicalValue best{-1.0, f};
  while (true) {
    CompensatedSum sum;
    for (int x = 0; x < nx; ++x)
      for (int y = 0; y < nx; ++y)
        if (g.predicate(f[x], f[y], x, y)) sum.add(g.lambda(x, y));
    const double value = sum.value();
    if (value > best.value) best = {value, f};
    // Odometer with f[0] most significant gives lexicographic order.
    int pos = nx - 1;
    while (pos >= 0 && ++f[pos] == na) f[pos--] = 0;
    if (pos < 0) break;
  }
  return best;
}

namespace {

double rep_value(const Game& g, const PlayerRep& rep) {
  return game_value(g, correlation_from_rep(rep, TraceSpec::normalized(rep.dim)));
}

// d/d e(a|x) of the value under <X, Y> = tr_n(X Y).
Matrix value_gradient(const Game& g, const PlayerRep& rep, int a, int x) {
  Matrix grad = Matrix::Zero(rep.dim, rep.dim);
  for (int y = 0; y < g.questions(); ++y)
    for (int b = 0; b < g.answers(); ++b) {
      const double w = g.lambda(x, y) * g.predicate(a, b, x, y) + g.lambda(y, x) * g.predicate(b, a, y, x);
      if (w != 0) grad += w * rep.e(b, y);
    }
  return grad;
}

}  // namespace

OptimizationResult seesaw_optimize(const Game& g, Eigen::Index dim, int iters, std::uint64_t seed,
                                   SeesawOptions options) {
  if (dim < 1 || iters < 1) throw Error(ErrorCode::InvalidArgument, "seesaw_optimize: dim and iters must be >= 1");
  PlayerRep rep = random_rep(dim, g.questions(), g.answers(), seed, {.allow_zero_projections = true});
  const State phi = State::normalized_trace(dim);

  OptimizationResult result;
  result.value = rep_value(g, rep);
  result.rep = rep;
  result.trajectory.emplace_back(0, result.value);
  for (int it = 1; it <= iters; ++it) {
    for (int x = 0; x < g.questions(); ++x) {
      PositiveTuple tuple{dim, {}};
      for (int a = 0; a < g.answers(); ++a)
        tuple.elements.push_back(clamp_to_unit_interval(rep.e(a, x) + options.step * value_gradient(g, rep, a, x)));
      auto rounded = orthogonalize_tuple(tuple, phi, RoundingMode::pad_last);
      ++result.rounding_invocations;
      rep.pvms[x].projections = std::move(rounded.projections);
    }
    const double value = rep_value(g, rep);
    result.trajectory.emplace_back(it, value);
    if (value > result.value) {
      result.value = value;
      result.rep = rep;
    }
  }
  return result;
}

}  // namespace synclift
