#pragma once

// Rounding positive contractions to projections and tuples of them to PVMs,
// applied indexwise to finite truncations of bounded matrix sequences.

#include <optional>
#include <string>
#include <vector>

#include "synclift/linalg.hpp"
#include "synclift/player.hpp"

namespace synclift {

struct RoundingReport {
  double distance = 0;  // ||a - p(a)||_phi
  double bound = 0;     // 2 ||a^2 - a||_phi
};

struct RoundedElement {
  Matrix projection;
  RoundingReport report;
};

/// p(a) = 1_[1/2, 1](a) together with the distance and the certified bound.
RoundedElement spectral_round(const Matrix& a, const State& phi, const Tolerances& tol = {});

enum class RoundingMode { report_only, pad_last };

/// Per-element record of the sequential rounding. All norms are phi-norms.
struct ElementDefect {
  double projection_defect = 0;  // ||a_k^2 - a_k|| of the input element
  double rounding_distance = 0;  // ||p(a'_k) - a'_k||, a'_k the compressed element
  double certified_bound = 0;    // 2 ||a'_k^2 - a'_k||
  double original_distance = 0;  // ||p_k - a_k|| for the output projection p_k
};

struct DefectReport {
  std::vector<ElementDefect> per_element;
  double sum_defect = 0;  // ||sum_k p(a'_k) - I|| before any padding
  double max_orthogonality_defect = 0;  // max_{j != k} ||p_j p_k||_op of the output
  bool padded = false;
};

struct OrthogonalizedTuple {
  std::vector<Matrix> projections;
  DefectReport report;
};

/// Sequential cut-off rounding: p_1 = p(a_1), and for k > 1
/// p_k = p(Q a_k Q) with Q = I - (p_1 + ... + p_{k-1}). In pad_last mode the
/// final projection is replaced by I - (p_1 + ... + p_{m-1}).
///
/// Compressions are carried out in an orthonormal basis of the running
/// complement, so every p_k lives inside it and the output projections are
/// orthogonal to working precision regardless of the input.
OrthogonalizedTuple orthogonalize_tuple(const PositiveTuple& tuple, const State& phi,
                                        RoundingMode mode = RoundingMode::pad_last,
                                        const Tolerances& tol = {});

struct UnitalizedTuple {
  PositiveTuple tuple;
  double clamping_loss = 0;  // ||clamped - (a_m + rem)||_2 for the last element
};

/// Adds rem = I - sum_k a_k to the last element, then clamps its spectrum to [0, 1].
UnitalizedTuple unitalize_tuple(const PositiveTuple& tuple, const Tolerances& tol = {});

/// Truncated bounded sequence (a_1, a_2, ...) of matrices of varying size.
struct MatrixSequence {
  std::vector<Matrix> entries;
  double declared_sup_norm = 1;
};

/// Throws if some entry exceeds the declared sup norm by more than tol.pos.
void validate_sequence(const MatrixSequence& s, const Tolerances& tol = {});

struct TailStatistics {
  std::vector<double> per_index;  // ||a_n||_2 = sqrt(tr_n(a_n* a_n))
  double tail_sup = 0;
  double tail_inf = 0;
  std::size_t tail_length = 0;
};

/// Trace 2-norms and their sup/inf over the last ceil(tail_fraction * N) entries.
TailStatistics seq_two_norm_tail(const MatrixSequence& s, double tail_fraction);

struct ApproxRepIndex {
  Eigen::Index dim = 0;
  std::vector<PositiveTuple> tuples;  // one per question
};

struct ApproxRepSequence {
  int questions = 0;
  int answers = 0;
  std::vector<ApproxRepIndex> indices;
};

/// Throws unless every tuple has the declared shape and consists of positive contractions.
void validate_sequence(const ApproxRepSequence& s, const Tolerances& tol = {});

struct IndexLift {
  std::optional<PlayerRep> rep;
  std::vector<DefectReport> reports;  // one per question
  std::string error;                  // empty on success

  bool ok() const { return rep.has_value(); }
};

/// Rounds every index independently under the normalized trace tr_n.
/// Failures are recorded per index and do not stop the others. Up to
/// `threads` indices run concurrently; results are in index order.
std::vector<IndexLift> lift_sequence(const ApproxRepSequence& s,
                                     RoundingMode mode = RoundingMode::pad_last,
                                     const Tolerances& tol = {}, unsigned threads = 1);

}  // namespace synclift
