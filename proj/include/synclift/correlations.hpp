#pragma once

// Synchronous correlations p(ab|xy) = tau(e(a|x) e(b|y)) of tracial states on
// finite-dimensional player representations.

#include <string>
#include <vector>

#include "synclift/lift.hpp"
#include "synclift/player.hpp"

namespace synclift {

/// p(ab|xy) over answers x answers x questions x questions.
class CorrelationTable {
 public:
  CorrelationTable() = default;
  CorrelationTable(int questions, int answers);

  int questions() const { return questions_; }
  int answers() const { return answers_; }

  double& operator()(int a, int b, int x, int y) { return values_[index(a, b, x, y)]; }
  double operator()(int a, int b, int x, int y) const { return values_[index(a, b, x, y)]; }

  /// Flat storage, ordered [a][b][x][y] with y fastest.
  const std::vector<double>& values() const { return values_; }

  bool same_shape(const CorrelationTable& other) const {
    return questions_ == other.questions_ && answers_ == other.answers_;
  }

 private:
  std::size_t index(int a, int b, int x, int y) const {
    return ((static_cast<std::size_t>(a) * answers_ + b) * questions_ + x) * questions_ + y;
  }

  int questions_ = 0;
  int answers_ = 0;
  std::vector<double> values_;
};

struct TableValidation {
  bool valid = false;
  double max_negativity = 0;       // max(0, -p)
  double max_normalization = 0;    // max_{x,y} |sum_{ab} p - 1|
  double max_synchronicity = 0;    // max_{x, a != b} p(ab|xx)
  double max_symmetry = 0;         // max |p(ab|xy) - p(ba|yx)|
};

/// Reports every defect; valid iff all but symmetry are <= tol. Symmetry is
/// reported as a finding since non-tracial synchronous tables are not in scope.
TableValidation check_table(const CorrelationTable& t, double tol);

/// Throws InvalidRep if the rep fails PVM validation at tol.proj or a
/// trace value carries an imaginary part above 1e-8.
CorrelationTable correlation_from_rep(const PlayerRep& rep, const TraceSpec& tau,
                                      const Tolerances& tol = {});

struct GramCheck {
  double min_eigenvalue = 0;
  bool psd = false;
  Matrix moment_matrix;  // M[(a,x),(b,y)] = tau(e(a|x) e(b|y)), row a + A*x
};

GramCheck gram_psd_check(const PlayerRep& rep, const TraceSpec& tau, const Tolerances& tol = {});

enum class TableMetric { sup, l1 };

double table_distance(const CorrelationTable& p, const CorrelationTable& q,
                      TableMetric metric = TableMetric::sup);

struct PipelineIndex {
  Eigen::Index dim = 0;
  bool ok = false;
  std::string error;
  double max_defect = 0;  // max ||a^2 - a||_2 over input elements
  double max_bound = 0;   // max certified bound over rounding steps
  double distance = 0;    // table distance to the target
};

struct ConvergenceReport {
  std::vector<double> per_index_distance;  // failed indices are omitted
  double final_distance = 0;               // last successful index
  TableMetric metric = TableMetric::sup;
  std::vector<PipelineIndex> indices;
};

/// Lift every index (pad_last), take correlations under tr_n, compare with
/// the target. Per-index failures are recorded, not thrown; final_distance is
/// +inf when no index succeeds.
ConvergenceReport pipeline_correlations(const ApproxRepSequence& s, const CorrelationTable& target,
                                        TableMetric metric = TableMetric::sup,
                                        const Tolerances& tol = {}, unsigned threads = 1);

std::string to_string(TableMetric metric);

}  // namespace synclift
