#include "synclift/player.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace synclift {

TraceSpec::TraceSpec(std::vector<TraceBlock> blocks, const Tolerances& tol)
    : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw Error(ErrorCode::InvalidArgument, "TraceSpec: no blocks");
  double total = 0;
  for (const auto& block : blocks_) {
    if (block.dim < 1) throw Error(ErrorCode::InvalidArgument, "TraceSpec: block dim must be >= 1");
    if (!(block.weight >= 0) || !std::isfinite(block.weight))
      throw Error(ErrorCode::InvalidArgument, "TraceSpec: weights must be finite and >= 0");
    total += block.weight;
    total_dim_ += block.dim;
  }
  if (!(std::abs(total - 1.0) <= tol.trace)) {
    std::ostringstream os;
    os << "TraceSpec: weights sum to " << total << ", not 1";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
}

TraceSpec TraceSpec::normalized(Eigen::Index dim) { return TraceSpec({{dim, 1.0}}); }

RepValidation validate_player_rep(const PlayerRep& rep, double tol) {
  RepValidation report;
  std::ostringstream problems;
  if (rep.dim < 1) problems << "dim must be >= 1; ";
  if (rep.questions < 1 || rep.answers < 1) problems << "questions and answers must be >= 1; ";
  if (static_cast<int>(rep.pvms.size()) != rep.questions)
    problems << "expected " << rep.questions << " PVMs, got " << rep.pvms.size() << "; ";
  for (std::size_t x = 0; x < rep.pvms.size(); ++x) {
    const auto& pvm = rep.pvms[x];
    if (pvm.answers() != rep.answers)
      problems << "question " << x << " has " << pvm.answers() << " outcomes; ";
    for (const auto& p : pvm.projections)
      if (p.rows() != rep.dim || p.cols() != rep.dim)
        problems << "question " << x << " has a " << p.rows() << "x" << p.cols() << " element; ";
  }
  report.message = problems.str();
  if (!report.message.empty()) return report;

  const Matrix identity = Matrix::Identity(rep.dim, rep.dim);
  for (const auto& pvm : rep.pvms) {
    QuestionDefects d;
    Matrix sum = Matrix::Zero(rep.dim, rep.dim);
    for (int a = 0; a < rep.answers; ++a) {
      const Matrix& p = pvm.projections[a];
      d.hermiticity = std::max(d.hermiticity, hermiticity_defect(p));
      d.projection = std::max(d.projection, projection_defect(p));
      for (int b = a + 1; b < rep.answers; ++b)
        d.orthogonality = std::max(d.orthogonality, operator_norm(p * pvm.projections[b]));
      sum += p;
    }
    d.sum = operator_norm(sum - identity);
    report.max_hermiticity_defect = std::max(report.max_hermiticity_defect, d.hermiticity);
    report.max_projection_defect = std::max(report.max_projection_defect, d.projection);
    report.max_orthogonality_defect = std::max(report.max_orthogonality_defect, d.orthogonality);
    report.max_sum_defect = std::max(report.max_sum_defect, d.sum);
    report.per_question.push_back(d);
  }
  report.valid = report.max_hermiticity_defect <= tol && report.max_projection_defect <= tol &&
                 report.max_orthogonality_defect <= tol && report.max_sum_defect <= tol;
  return report;
}

PlayerRep deterministic_rep(const std::vector<int>& f, int questions, int answers) {
  if (questions < 1 || answers < 1 || static_cast<int>(f.size()) != questions)
    throw Error(ErrorCode::InvalidFunctionRange, "deterministic_rep: f must be defined on every question");
  PlayerRep rep{1, questions, answers, {}};
  for (int x = 0; x < questions; ++x) {
    if (f[x] < 0 || f[x] >= answers) {
      std::ostringstream os;
      os << "deterministic_rep: f(" << x << ") = " << f[x] << " outside [0, " << answers << ")";
      throw Error(ErrorCode::InvalidFunctionRange, os.str());
    }
    PVM pvm;
    for (int a = 0; a < answers; ++a) pvm.projections.push_back(Matrix::Constant(1, 1, a == f[x] ? 1.0 : 0.0));
    rep.pvms.push_back(std::move(pvm));
  }
  return rep;
}

PlayerRep random_rep(Eigen::Index dim, int questions, int answers, std::uint64_t seed,
                     RandomRepOptions options) {
  if (dim < 1 || questions < 1 || answers < 1)
    throw Error(ErrorCode::InvalidArgument, "random_rep: dim, questions and answers must be >= 1");
  if (answers > dim && !options.allow_zero_projections) {
    std::ostringstream os;
    os << "random_rep: " << answers << " answers on dim " << dim << " leaves empty cells";
    throw Error(ErrorCode::AnswerCountExceedsDim, os.str());
  }
  Rng rng(seed);
  PlayerRep rep{dim, questions, answers, {}};
  for (int x = 0; x < questions; ++x) {
    const Matrix u = haar_unitary(dim, rng);
    PVM pvm;
    for (int a = 0; a < answers; ++a) {
      RealVector cell = RealVector::Zero(dim);
      for (Eigen::Index i = a; i < dim; i += answers) cell(i) = 1.0;
      Matrix p = u * cell.cast<Complex>().asDiagonal() * u.adjoint();
      pvm.projections.push_back((p + p.adjoint()) / 2.0);
    }
    rep.pvms.push_back(std::move(pvm));
  }
  return rep;
}

std::vector<PositiveTuple> as_tuples(const PlayerRep& rep) {
  std::vector<PositiveTuple> out;
  for (const auto& pvm : rep.pvms) out.push_back({rep.dim, pvm.projections});
  return out;
}

std::vector<PositiveTuple> perturb_rep(const PlayerRep& rep, double eps, std::uint64_t seed) {
  if (!(eps >= 0 && eps <= 0.2))
    throw Error(ErrorCode::InvalidArgument, "perturb_rep: eps must lie in [0, 0.2]");
  if (eps == 0) return as_tuples(rep);
  Rng rng(seed);
  std::vector<PositiveTuple> out;
  for (const auto& pvm : rep.pvms) {
    PositiveTuple tuple{rep.dim, {}};
    for (const auto& p : pvm.projections) {
      const Matrix h = random_hermitian_unit(rep.dim, rng);
      tuple.elements.push_back(clamp_to_unit_interval(p + eps * h));
    }
    out.push_back(std::move(tuple));
  }
  return out;
}

double off_block_mass(const TraceSpec& tau, const Matrix& a) {
  double mass = 0;
  Eigen::Index start = 0;
  for (const auto& block : tau.blocks()) {
    const Eigen::Index end = start + block.dim;
    for (Eigen::Index i = start; i < end; ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j)
        if (j < start || j >= end) mass = std::max(mass, std::abs(a(i, j)));
    start = end;
  }
  return mass;
}

Complex apply_trace_complex(const TraceSpec& tau, const Matrix& a, const Tolerances& tol) {
  if (a.rows() != tau.total_dim() || a.cols() != tau.total_dim()) {
    std::ostringstream os;
    os << "apply_trace: matrix is " << a.rows() << "x" << a.cols() << ", trace expects dim "
       << tau.total_dim();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  if (tau.blocks().size() > 1) {
    const double leak = off_block_mass(tau, a);
    if (leak > tol.herm) {
      std::ostringstream os;
      os << "apply_trace: off-block entry of magnitude " << leak;
      throw Error(ErrorCode::BlockLeakage, os.str());
    }
  }
  Complex value = 0;
  Eigen::Index start = 0;
  for (const auto& block : tau.blocks()) {
    value += block.weight * a.block(start, start, block.dim, block.dim).trace() /
             static_cast<double>(block.dim);
    start += block.dim;
  }
  return value;
}

double apply_trace(const TraceSpec& tau, const Matrix& a, const Tolerances& tol) {
  require_hermitian(a, tol.herm, "apply_trace");
  return apply_trace_complex(tau, a, tol).real();
}

PlayerRep direct_sum(const PlayerRep& first, const PlayerRep& second) {
  if (first.questions != second.questions || first.answers != second.answers)
    throw Error(ErrorCode::ShapeMismatch, "direct_sum: reps differ in questions or answers");
  const Eigen::Index n = first.dim + second.dim;
  PlayerRep out{n, first.questions, first.answers, {}};
  for (int x = 0; x < first.questions; ++x) {
    PVM pvm;
    for (int a = 0; a < first.answers; ++a) {
      Matrix p = Matrix::Zero(n, n);
      p.topLeftCorner(first.dim, first.dim) = first.e(a, x);
      p.bottomRightCorner(second.dim, second.dim) = second.e(a, x);
      pvm.projections.push_back(std::move(p));
    }
    out.pvms.push_back(std::move(pvm));
  }
  return out;
}

}  // namespace synclift
