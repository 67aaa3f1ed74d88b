#pragma once

// Finite-dimensional representations of the player algebra: one PVM per
// question, all on a common Hilbert space dimension, plus tracial states on
// block-diagonal subalgebras.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "synclift/linalg.hpp"
#include "synclift/random.hpp"

namespace synclift {

/// Projection-valued measure: projections[a] for each answer a.
struct PVM {
  std::vector<Matrix> projections;

  Eigen::Index dim() const { return projections.empty() ? 0 : projections.front().rows(); }
  int answers() const { return static_cast<int>(projections.size()); }
};

/// e(a|x) = pvms[x].projections[a].
struct PlayerRep {
  Eigen::Index dim = 0;
  int questions = 0;
  int answers = 0;
  std::vector<PVM> pvms;

  const Matrix& e(int a, int x) const { return pvms[x].projections[a]; }
};

/// Tuple of positive contractions standing in for an approximate PVM.
struct PositiveTuple {
  Eigen::Index dim = 0;
  std::vector<Matrix> elements;
};

struct TraceBlock {
  Eigen::Index dim = 0;
  double weight = 0;
};

/// Tracial state sum_i weight_i * tr_{n_i}(block_i) on a block-diagonal
/// algebra M_{n_1} + ... + M_{n_k}.
class TraceSpec {
 public:
  /// Validates weights (nonnegative, summing to one) and block dims.
  explicit TraceSpec(std::vector<TraceBlock> blocks, const Tolerances& tol = {});

  /// Single block with weight one: the normalized trace on M_dim.
  static TraceSpec normalized(Eigen::Index dim);

  const std::vector<TraceBlock>& blocks() const { return blocks_; }
  Eigen::Index total_dim() const { return total_dim_; }

 private:
  std::vector<TraceBlock> blocks_;
  Eigen::Index total_dim_ = 0;
};

/// Per-question defects of the PVM relations, operator norm.
struct QuestionDefects {
  double hermiticity = 0;
  double projection = 0;     // max_a ||P_a^2 - P_a||
  double orthogonality = 0;  // max_{a != b} ||P_a P_b||
  double sum = 0;            // ||sum_a P_a - I||
};

struct RepValidation {
  bool valid = false;
  std::vector<QuestionDefects> per_question;
  double max_projection_defect = 0;
  double max_orthogonality_defect = 0;
  double max_sum_defect = 0;
  double max_hermiticity_defect = 0;
  std::string message;  // shape problems, empty when shapes are consistent
};

/// Checks the defining relations of every PVM. Never throws.
RepValidation validate_player_rep(const PlayerRep& rep, double tol);

/// Dimension-one representation of the deterministic strategy x -> f(x).
PlayerRep deterministic_rep(const std::vector<int>& f, int questions, int answers);

struct RandomRepOptions {
  bool allow_zero_projections = false;
};

/// Random PVMs U_x D_a U_x*: D_a are 0/1 diagonal cells with basis slot i
/// assigned to answer i mod A, and U_x Haar per question.
PlayerRep random_rep(Eigen::Index dim, int questions, int answers, std::uint64_t seed,
                     RandomRepOptions options = {});

/// Replaces every projection P by clamp_[0,1](P + eps * H), H a seeded
/// Hermitian of unit operator norm. One tuple per question.
std::vector<PositiveTuple> perturb_rep(const PlayerRep& rep, double eps, std::uint64_t seed);

/// Wraps the PVMs of an exact rep as positive tuples.
std::vector<PositiveTuple> as_tuples(const PlayerRep& rep);

/// Weighted sum of block normalized traces of a Hermitian block-diagonal a.
double apply_trace(const TraceSpec& tau, const Matrix& a, const Tolerances& tol = {});

/// Same functional on an arbitrary block-diagonal matrix (complex valued).
Complex apply_trace_complex(const TraceSpec& tau, const Matrix& a, const Tolerances& tol = {});

/// Largest |entry| outside the diagonal blocks of tau.
double off_block_mass(const TraceSpec& tau, const Matrix& a);

/// Block-diagonal direct sum of two reps with the same (X, A).
PlayerRep direct_sum(const PlayerRep& first, const PlayerRep& second);

}  // namespace synclift
