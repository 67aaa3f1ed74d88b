#include "synclift/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace synclift {

CorrelationTable::CorrelationTable(int questions, int answers)
    : questions_(questions), answers_(answers) {
  if (questions < 1 || answers < 1)
    throw Error(ErrorCode::InvalidArgument, "CorrelationTable: questions and answers must be >= 1");
  values_.assign(static_cast<std::size_t>(answers) * answers * questions * questions, 0.0);
}

TableValidation check_table(const CorrelationTable& t, double tol) {
  TableValidation r;
  const int nx = t.questions(), na = t.answers();
  for (int x = 0; x < nx; ++x) {
    for (int y = 0; y < nx; ++y) {
      double total = 0;
      for (int a = 0; a < na; ++a) {
        for (int b = 0; b < na; ++b) {
          const double p = t(a, b, x, y);
          total += p;
          r.max_negativity = std::max(r.max_negativity, -p);
          if (x == y && a != b) r.max_synchronicity = std::max(r.max_synchronicity, p);
          r.max_symmetry = std::max(r.max_symmetry, std::abs(p - t(b, a, y, x)));
        }
      }
      r.max_normalization = std::max(r.max_normalization, std::abs(total - 1.0));
    }
  }
  r.valid = r.max_negativity <= tol && r.max_normalization <= tol && r.max_synchronicity <= tol;
  return r;
}

namespace {

void require_compatible(const PlayerRep& rep, const TraceSpec& tau, const Tolerances& tol) {
  if (rep.dim != tau.total_dim()) {
    std::ostringstream os;
    os << "rep dim " << rep.dim << " vs trace dim " << tau.total_dim();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  const auto validation = validate_player_rep(rep, tol.proj);
  if (!validation.valid) {
    std::ostringstream os;
    os << "rep fails PVM validation: projection " << validation.max_projection_defect
       << ", orthogonality " << validation.max_orthogonality_defect << ", sum "
       << validation.max_sum_defect << ", hermiticity " << validation.max_hermiticity_defect;
    if (!validation.message.empty()) os << " (" << validation.message << ")";
    throw Error(ErrorCode::InvalidRep, os.str());
  }
  if (tau.blocks().size() > 1) {
    for (const auto& pvm : rep.pvms)
      for (const auto& p : pvm.projections)
        if (off_block_mass(tau, p) > tol.herm)
          throw Error(ErrorCode::BlockLeakage, "a projection is not block diagonal for the trace");
  }
}

// tau(e f) = sum_blocks w / n sum_{i,j in block} e_ij f_ji, for block-diagonal e, f.
Complex trace_of_product(const TraceSpec& tau, const Matrix& e, const Matrix& f) {
  Complex value = 0;
  Eigen::Index start = 0;
  for (const auto& block : tau.blocks()) {
    const auto eb = e.block(start, start, block.dim, block.dim);
    const auto fb = f.block(start, start, block.dim, block.dim);
    value += block.weight * eb.cwiseProduct(fb.transpose()).sum() / static_cast<double>(block.dim);
    start += block.dim;
  }
  return value;
}

constexpr double kMaxImaginary = 1e-8;

}  // namespace

CorrelationTable correlation_from_rep(const PlayerRep& rep, const TraceSpec& tau, const Tolerances& tol) {
  require_compatible(rep, tau, tol);
  CorrelationTable t(rep.questions, rep.answers);
  for (int x = 0; x < rep.questions; ++x)
    for (int y = 0; y < rep.questions; ++y)
      for (int a = 0; a < rep.answers; ++a)
        for (int b = 0; b < rep.answers; ++b) {
          const Complex value = trace_of_product(tau, rep.e(a, x), rep.e(b, y));
          if (std::abs(value.imag()) > kMaxImaginary) {
            std::ostringstream os;
            os << "tau(e(" << a << "|" << x << ") e(" << b << "|" << y << ")) has imaginary part "
               << value.imag();
            throw Error(ErrorCode::InvalidRep, os.str());
          }
          t(a, b, x, y) = value.real();
        }
  return t;
}

GramCheck gram_psd_check(const PlayerRep& rep, const TraceSpec& tau, const Tolerances& tol) {
  if (rep.dim != tau.total_dim()) throw Error(ErrorCode::DimensionMismatch, "gram_psd_check: rep and trace dims differ");
  const int size = rep.answers * rep.questions;
  GramCheck out;
  out.moment_matrix = Matrix::Zero(size, size);
  for (int x = 0; x < rep.questions; ++x)
    for (int a = 0; a < rep.answers; ++a)
      for (int y = 0; y < rep.questions; ++y)
        for (int b = 0; b < rep.answers; ++b)
          out.moment_matrix(a + rep.answers * x, b + rep.answers * y) =
              trace_of_product(tau, rep.e(a, x), rep.e(b, y));
  const Matrix sym = (out.moment_matrix + out.moment_matrix.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::NumericalFailure, "gram_psd_check: eigensolver failed");
  out.min_eigenvalue = solver.eigenvalues()(0);
  out.psd = out.min_eigenvalue >= -tol.psd;
  return out;
}

double table_distance(const CorrelationTable& p, const CorrelationTable& q, TableMetric metric) {
  if (!p.same_shape(q)) throw Error(ErrorCode::ShapeMismatch, "table_distance: tables differ in shape");
  double out = 0;
  for (std::size_t i = 0; i < p.values().size(); ++i) {
    const double d = std::abs(p.values()[i] - q.values()[i]);
    out = metric == TableMetric::sup ? std::max(out, d) : out + d;
  }
  return out;
}

ConvergenceReport pipeline_correlations(const ApproxRepSequence& s, const CorrelationTable& target,
                                        TableMetric metric, const Tolerances& tol, unsigned threads) {
  if (s.indices.empty()) throw Error(ErrorCode::EmptySequence, "pipeline_correlations: empty sequence");
  if (s.questions != target.questions() || s.answers != target.answers())
    throw Error(ErrorCode::ShapeMismatch, "pipeline_correlations: target shape differs from sequence");

  const auto lifted = lift_sequence(s, RoundingMode::pad_last, tol, threads);
  ConvergenceReport report;
  report.metric = metric;
  report.final_distance = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < lifted.size(); ++n) {
    PipelineIndex row;
    row.dim = s.indices[n].dim;
    if (!lifted[n].ok()) {
      row.error = lifted[n].error;
      report.indices.push_back(std::move(row));
      continue;
    }
    for (const auto& defects : lifted[n].reports)
      for (const auto& e : defects.per_element) {
        row.max_defect = std::max(row.max_defect, e.projection_defect);
        row.max_bound = std::max(row.max_bound, e.certified_bound);
      }
    try {
      const auto table = correlation_from_rep(*lifted[n].rep, TraceSpec::normalized(row.dim), tol);
      row.distance = table_distance(table, target, metric);
      row.ok = true;
      report.per_index_distance.push_back(row.distance);
      report.final_distance = row.distance;
    } catch (const Error& e) {
      row.error = e.what();
    }
    report.indices.push_back(std::move(row));
  }
  return report;
}

std::string to_string(TableMetric metric) { return metric == TableMetric::sup ? "sup" : "l1"; }

}  // namespace synclift
