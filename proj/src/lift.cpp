#include "synclift/lift.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace synclift {

namespace {

void require_positive_contraction(const Matrix& a, const Tolerances& tol, const char* what) {
  const auto es = eig_hermitian(a, tol);
  const Eigen::Index n = es.eigenvalues.size();
  if (es.eigenvalues(0) < -tol.pos || es.eigenvalues(n - 1) > 1 + tol.pos) {
    std::ostringstream os;
    os << what << ": spectrum [" << es.eigenvalues(0) << ", " << es.eigenvalues(n - 1)
       << "] not inside [0, 1]";
    throw Error(ErrorCode::NotPositiveContraction, os.str());
  }
}

Matrix hermitian_part(const Matrix& a) { return (a + a.adjoint()) / 2.0; }

}  // namespace

RoundedElement spectral_round(const Matrix& a, const State& phi, const Tolerances& tol) {
  require_square(a, "spectral_round");
  if (a.rows() != phi.dim()) throw Error(ErrorCode::DimensionMismatch, "spectral_round: state dim differs");
  Matrix p = spectral_projection_upper_half(a, tol);
  RoundingReport report;
  report.distance = state_two_norm(a - p, phi);
  report.bound = 2.0 * state_two_norm(a * a - a, phi);
  return {std::move(p), report};
}

OrthogonalizedTuple orthogonalize_tuple(const PositiveTuple& tuple, const State& phi,
                                        RoundingMode mode, const Tolerances& tol) {
  const Eigen::Index n = tuple.dim;
  if (tuple.elements.empty()) throw Error(ErrorCode::InvalidArgument, "orthogonalize_tuple: empty tuple");
  if (n != phi.dim()) throw Error(ErrorCode::DimensionMismatch, "orthogonalize_tuple: state dim differs");
  for (const auto& a : tuple.elements) {
    if (a.rows() != n || a.cols() != n)
      throw Error(ErrorCode::DimensionMismatch, "orthogonalize_tuple: element dim differs from tuple dim");
    require_positive_contraction(a, tol, "orthogonalize_tuple");
  }

  const std::size_t m = tuple.elements.size();
  const Matrix identity = Matrix::Identity(n, n);
  OrthogonalizedTuple out;
  out.report.per_element.resize(m);

  // Orthonormal basis of the range of I - (p_1 + ... + p_k).
  Matrix complement = identity;
  Matrix complement_before_last = identity;
  Matrix rounded_sum = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < m; ++k) {
    const Matrix& a = tuple.elements[k];
    auto& record = out.report.per_element[k];
    record.projection_defect = state_two_norm(a * a - a, phi);
    if (k + 1 == m) complement_before_last = complement;

    const Eigen::Index rank = complement.cols();
    Matrix p = Matrix::Zero(n, n);
    Matrix compressed = Matrix::Zero(n, n);
    if (rank > 0) {
      const Matrix restricted = hermitian_part(complement.adjoint() * a * complement);
      compressed = hermitian_part(complement * restricted * complement.adjoint());
      const auto es = eig_hermitian(restricted, tol);
      Eigen::Index first = 0;
      while (first < rank && es.eigenvalues(first) < 0.5 - tol.thresh) ++first;
      const Matrix upper = complement * es.eigenvectors.rightCols(rank - first);
      p = hermitian_part(upper * upper.adjoint());
      complement = (complement * es.eigenvectors.leftCols(first)).eval();
    }
    record.rounding_distance = state_two_norm(p - compressed, phi);
    record.certified_bound = 2.0 * state_two_norm(compressed * compressed - compressed, phi);
    rounded_sum += p;
    out.projections.push_back(std::move(p));
  }
  out.report.sum_defect = state_two_norm(rounded_sum - identity, phi);

  if (mode == RoundingMode::pad_last) {
    Matrix last = hermitian_part(complement_before_last * complement_before_last.adjoint());
    const double defect = projection_defect(last);
    if (!(defect <= tol.proj)) {
      std::ostringstream os;
      os << "orthogonalize_tuple: padded element has projection defect " << defect;
      throw Error(ErrorCode::PadLastNotProjection, os.str());
    }
    out.projections.back() = std::move(last);
    out.report.padded = true;
  }

  for (std::size_t k = 0; k < m; ++k) {
    out.report.per_element[k].original_distance =
        state_two_norm(out.projections[k] - tuple.elements[k], phi);
    for (std::size_t j = 0; j < k; ++j)
      out.report.max_orthogonality_defect = std::max(
          out.report.max_orthogonality_defect, operator_norm(out.projections[j] * out.projections[k]));
  }
  return out;
}

UnitalizedTuple unitalize_tuple(const PositiveTuple& tuple, const Tolerances& tol) {
  if (tuple.elements.empty()) throw Error(ErrorCode::InvalidArgument, "unitalize_tuple: empty tuple");
  const Eigen::Index n = tuple.dim;
  Matrix sum = Matrix::Zero(n, n);
  for (const auto& a : tuple.elements) {
    if (a.rows() != n || a.cols() != n)
      throw Error(ErrorCode::DimensionMismatch, "unitalize_tuple: element dim differs from tuple dim");
    require_positive_contraction(a, tol, "unitalize_tuple");
    sum += a;
  }
  const Matrix remainder = hermitian_part(Matrix::Identity(n, n) - sum);
  const double min_eig = eig_hermitian(remainder, tol).eigenvalues(0);
  if (min_eig < -0.5) {
    std::ostringstream os;
    os << "unitalize_tuple: remainder has eigenvalue " << min_eig;
    throw Error(ErrorCode::RemainderTooNegative, os.str());
  }
  UnitalizedTuple out{tuple, 0.0};
  const Matrix shifted = hermitian_part(tuple.elements.back() + remainder);
  Matrix clamped = clamp_to_unit_interval(shifted, tol);
  out.clamping_loss = trace_two_norm(clamped - shifted);
  out.tuple.elements.back() = std::move(clamped);
  return out;
}

void validate_sequence(const MatrixSequence& s, const Tolerances& tol) {
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    const double norm = operator_norm(s.entries[i]);
    if (norm > s.declared_sup_norm + tol.pos) {
      std::ostringstream os;
      os << "MatrixSequence: entry " << i << " has norm " << norm << " above declared "
         << s.declared_sup_norm;
      throw Error(ErrorCode::InvalidArgument, os.str());
    }
  }
}

TailStatistics seq_two_norm_tail(const MatrixSequence& s, double tail_fraction) {
  if (s.entries.empty()) throw Error(ErrorCode::EmptySequence, "seq_two_norm_tail: no entries");
  if (!(tail_fraction > 0 && tail_fraction <= 1))
    throw Error(ErrorCode::InvalidArgument, "seq_two_norm_tail: tail_fraction must lie in (0, 1]");
  TailStatistics out;
  for (const auto& a : s.entries) out.per_index.push_back(trace_two_norm(a));
  const std::size_t count = s.entries.size();
  out.tail_length = std::min<std::size_t>(
      count, static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(count) - 1e-9)));
  out.tail_length = std::max<std::size_t>(out.tail_length, 1);
  const auto first = out.per_index.end() - static_cast<std::ptrdiff_t>(out.tail_length);
  out.tail_sup = *std::max_element(first, out.per_index.end());
  out.tail_inf = *std::min_element(first, out.per_index.end());
  return out;
}

void validate_sequence(const ApproxRepSequence& s, const Tolerances& tol) {
  if (s.questions < 1 || s.answers < 1)
    throw Error(ErrorCode::InvalidArgument, "ApproxRepSequence: questions and answers must be >= 1");
  for (std::size_t n = 0; n < s.indices.size(); ++n) {
    const auto& index = s.indices[n];
    if (static_cast<int>(index.tuples.size()) != s.questions) {
      std::ostringstream os;
      os << "ApproxRepSequence: index " << n << " has " << index.tuples.size() << " tuples";
      throw Error(ErrorCode::ShapeMismatch, os.str());
    }
    for (const auto& t : index.tuples) {
      if (static_cast<int>(t.elements.size()) != s.answers || t.dim != index.dim) {
        std::ostringstream os;
        os << "ApproxRepSequence: index " << n << " has a malformed tuple";
        throw Error(ErrorCode::ShapeMismatch, os.str());
      }
      for (const auto& a : t.elements) {
        if (a.rows() != index.dim || a.cols() != index.dim)
          throw Error(ErrorCode::DimensionMismatch, "ApproxRepSequence: element dim differs from index dim");
        require_positive_contraction(a, tol, "ApproxRepSequence");
      }
    }
  }
}

namespace {

IndexLift lift_index(const ApproxRepSequence& s, const ApproxRepIndex& index, RoundingMode mode,
                     const Tolerances& tol) {
  IndexLift out;
  try {
    if (static_cast<int>(index.tuples.size()) != s.questions)
      throw Error(ErrorCode::ShapeMismatch, "wrong number of tuples");
    const State phi = State::normalized_trace(index.dim);
    PlayerRep rep{index.dim, s.questions, s.answers, {}};
    for (const auto& tuple : index.tuples) {
      if (static_cast<int>(tuple.elements.size()) != s.answers || tuple.dim != index.dim)
        throw Error(ErrorCode::ShapeMismatch, "malformed tuple");
      auto rounded = orthogonalize_tuple(tuple, phi, mode, tol);
      rep.pvms.push_back(PVM{std::move(rounded.projections)});
      out.reports.push_back(std::move(rounded.report));
    }
    out.rep = std::move(rep);
  } catch (const Error& e) {
    out.error = e.what();
    out.reports.clear();
  }
  return out;
}

}  // namespace

std::vector<IndexLift> lift_sequence(const ApproxRepSequence& s, RoundingMode mode,
                                     const Tolerances& tol, unsigned threads) {
  std::vector<IndexLift> out(s.indices.size());
  const std::size_t count = s.indices.size();
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), count));
  if (workers <= 1) {
    for (std::size_t n = 0; n < count; ++n) out[n] = lift_index(s, s.indices[n], mode, tol);
    return out;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t n = next++; n < count; n = next++) out[n] = lift_index(s, s.indices[n], mode, tol);
      });
    }
  }
  return out;
}

}  // namespace synclift
