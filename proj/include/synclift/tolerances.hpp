#pragma once

#include <string_view>

namespace synclift {

/// Numerical tolerances shared by all modules. Every field is overridable
/// from the command line as --tol.<name>.
struct Tolerances {
  double herm = 1e-10;    ///< max |a_ij - conj(a_ji)|
  double eig = 1e-10;     ///< eigendecomposition reconstruction
  double proj = 1e-10;    ///< P^2 = P = P*, orthogonality, sum to identity
  double pos = 1e-9;      ///< spectrum inside [-pos, 1 + pos]
  double psd = 1e-9;      ///< min eigenvalue of PSD objects
  double trace = 1e-10;   ///< unit-trace / weights-sum-to-one checks
  double thresh = 1e-12;  ///< eigenvalues >= 1/2 - thresh count as inside [1/2, 1]
  double corr = 1e-10;    ///< correlation table invariants

  /// Sets a field by name; returns false for unknown names.
  bool set(std::string_view name, double value) {
    if (name == "herm") herm = value;
    else if (name == "eig") eig = value;
    else if (name == "proj") proj = value;
    else if (name == "pos") pos = value;
    else if (name == "psd") psd = value;
    else if (name == "trace") trace = value;
    else if (name == "thresh") thresh = value;
    else if (name == "corr") corr = value;
    else return false;
    return true;
  }
};

}  // namespace synclift
