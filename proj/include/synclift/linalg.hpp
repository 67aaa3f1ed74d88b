#pragma once

// Dense Hermitian linear algebra on complex Eigen matrices.
//
// Functions take Eigen::MatrixBase<Derived> so that expressions can be passed
// without materializing temporaries; the scalar type is std::complex<Real>
// and Real flows through from the argument.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "synclift/errors.hpp"
#include "synclift/tolerances.hpp"

namespace synclift {

template <typename Real>
using MatrixX = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using RealVectorX = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using Matrix = MatrixX<double>;
using RealVector = RealVectorX<double>;

template <typename Real>
struct EigenSystem {
  RealVectorX<Real> eigenvalues;  // ascending
  MatrixX<Real> eigenvectors;     // orthonormal columns, same order
};

/// Max entrywise |a_ij - conj(a_ji)|. Zero for an empty matrix.
template <typename Derived>
typename Derived::RealScalar hermiticity_defect(const Eigen::MatrixBase<Derived>& a) {
  if (a.size() == 0) return 0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    std::ostringstream os;
    os << what << ": expected a nonempty square matrix, got " << a.rows() << "x" << a.cols();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

template <typename Derived>
void require_hermitian(const Eigen::MatrixBase<Derived>& a, double tol, const char* what) {
  require_square(a, what);
  const double defect = static_cast<double>(hermiticity_defect(a));
  if (!(defect <= tol)) {
    std::ostringstream os;
    os << what << ": hermiticity defect " << defect << " exceeds " << tol;
    throw Error(ErrorCode::NonHermitianInput, os.str());
  }
}

/// Eigendecomposition of a Hermitian matrix. Eigenvalues ascending; for
/// repeated eigenvalues the basis is whatever the tridiagonal QR iteration
/// returns, which is deterministic for a fixed input.
template <typename Derived>
EigenSystem<typename Derived::RealScalar> eig_hermitian(const Eigen::MatrixBase<Derived>& a,
                                                        const Tolerances& tol = {}) {
  using Real = typename Derived::RealScalar;
  require_hermitian(a, tol.herm, "eig_hermitian");
  // Only the lower triangle is read; symmetrize so both halves contribute.
  const MatrixX<Real> h = (a + a.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<MatrixX<Real>> solver(h);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "eig_hermitian: decomposition did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// V diag(f(lambda)) V* for a real function f.
template <typename Real, typename F>
MatrixX<Real> reassemble(const EigenSystem<Real>& es, F&& f) {
  const auto& v = es.eigenvectors;
  RealVectorX<Real> mapped = es.eigenvalues.unaryExpr(f);
  MatrixX<Real> out = v * mapped.template cast<std::complex<Real>>().asDiagonal() * v.adjoint();
  return (out + out.adjoint()) / Real(2);
}

/// Functional calculus f(a) for Hermitian a.
template <typename Derived, typename F>
MatrixX<typename Derived::RealScalar> apply_spectral_function(const Eigen::MatrixBase<Derived>& a,
                                                              F&& f, const Tolerances& tol = {}) {
  return reassemble(eig_hermitian(a, tol), std::forward<F>(f));
}

/// Eigenvalue clamping to [0, 1]: the nearest positive contraction in
/// Frobenius norm.
template <typename Derived>
MatrixX<typename Derived::RealScalar> clamp_to_unit_interval(const Eigen::MatrixBase<Derived>& a,
                                                             const Tolerances& tol = {}) {
  using Real = typename Derived::RealScalar;
  return apply_spectral_function(
      a, [](Real x) { return std::clamp(x, Real(0), Real(1)); }, tol);
}

/// (1/dim) * sum_i a_ii, real part.
template <typename Derived>
typename Derived::RealScalar normalized_trace(const Eigen::MatrixBase<Derived>& a,
                                              const Tolerances& tol = {}) {
  require_hermitian(a, tol.herm, "normalized_trace");
  return a.trace().real() / static_cast<typename Derived::RealScalar>(a.rows());
}

/// Normalized trace of an arbitrary square matrix (complex valued).
template <typename Derived>
typename Derived::Scalar normalized_trace_complex(const Eigen::MatrixBase<Derived>& a) {
  require_square(a, "normalized_trace_complex");
  return a.trace() / static_cast<typename Derived::RealScalar>(a.rows());
}

/// ||x||_2 = sqrt(tr_n(x* x)) for the normalized trace, without forming x* x.
template <typename Derived>
typename Derived::RealScalar trace_two_norm(const Eigen::MatrixBase<Derived>& x) {
  require_square(x, "trace_two_norm");
  return std::sqrt(x.squaredNorm() / static_cast<typename Derived::RealScalar>(x.rows()));
}

/// Largest singular value.
template <typename Derived>
typename Derived::RealScalar operator_norm(const Eigen::MatrixBase<Derived>& x) {
  using Real = typename Derived::RealScalar;
  if (x.size() == 0) return Real(0);
  const MatrixX<Real> gram = x.adjoint() * x;
  Eigen::SelfAdjointEigenSolver<MatrixX<Real>> solver(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(Real(0), solver.eigenvalues().maxCoeff()));
}

/// A state phi(x) = tr(density * x) on M_dim.
template <typename Real>
class StateVectorSpec {
 public:
  /// The normalized trace tr_n, i.e. density I/n.
  static StateVectorSpec normalized_trace(Eigen::Index dim) {
    if (dim < 1) throw Error(ErrorCode::InvalidArgument, "state dimension must be positive");
    return StateVectorSpec(MatrixX<Real>::Identity(dim, dim) / Real(dim), true);
  }

  /// Validates positivity and unit trace of the density.
  static StateVectorSpec from_density(MatrixX<Real> density, const Tolerances& tol = {}) {
    require_hermitian(density, tol.herm, "StateVectorSpec");
    const Real tr = density.trace().real();
    if (!(std::abs(tr - Real(1)) <= tol.trace)) {
      std::ostringstream os;
      os << "StateVectorSpec: density trace " << tr << " is not 1";
      throw Error(ErrorCode::InvalidArgument, os.str());
    }
    const auto es = eig_hermitian(density, tol);
    if (es.eigenvalues(0) < -tol.psd) {
      std::ostringstream os;
      os << "StateVectorSpec: density has eigenvalue " << es.eigenvalues(0);
      throw Error(ErrorCode::InvalidArgument, os.str());
    }
    return StateVectorSpec(std::move(density), false);
  }

  Eigen::Index dim() const { return density_.rows(); }
  const MatrixX<Real>& density() const { return density_; }
  bool is_normalized_trace() const { return tracial_; }

 private:
  StateVectorSpec(MatrixX<Real> density, bool tracial)
      : density_(std::move(density)), tracial_(tracial) {}

  MatrixX<Real> density_;
  bool tracial_;
};

using State = StateVectorSpec<double>;

/// ||x||_phi = sqrt(phi(x* x)).
template <typename Derived, typename Real>
Real state_two_norm(const Eigen::MatrixBase<Derived>& x, const StateVectorSpec<Real>& phi) {
  require_square(x, "state_two_norm");
  if (x.rows() != phi.dim()) {
    std::ostringstream os;
    os << "state_two_norm: matrix dim " << x.rows() << " vs state dim " << phi.dim();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  if (phi.is_normalized_trace()) return trace_two_norm(x);
  // tr(rho x* x) = sum_ij (x rho)_ij conj(x_ij) since rho is Hermitian.
  const MatrixX<Real> x_rho = x * phi.density();
  const Real value = (x_rho.cwiseProduct(x.conjugate())).sum().real();
  return std::sqrt(std::max(Real(0), value));
}

/// True iff every eigenvalue lies in [-tol, 1 + tol].
template <typename Derived>
bool is_positive_contraction(const Eigen::MatrixBase<Derived>& a, double tol,
                             const Tolerances& tols = {}) {
  const auto es = eig_hermitian(a, tols);
  return es.eigenvalues(0) >= -tol && es.eigenvalues(es.eigenvalues.size() - 1) <= 1 + tol;
}

/// Sum of v v* over eigenvectors whose eigenvalue is at least 1/2 - thresh.
template <typename Real>
MatrixX<Real> upper_half_projection(const EigenSystem<Real>& es, double thresh) {
  const Eigen::Index n = es.eigenvalues.size();
  Eigen::Index first = 0;
  while (first < n && es.eigenvalues(first) < Real(0.5) - Real(thresh)) ++first;
  const auto upper = es.eigenvectors.rightCols(n - first);
  MatrixX<Real> p = upper * upper.adjoint();
  return (p + p.adjoint()) / Real(2);
}

/// The spectral projection 1_[1/2, 1](a) of a positive contraction. The
/// eigenvalue 1/2 itself is included.
template <typename Derived>
MatrixX<typename Derived::RealScalar> spectral_projection_upper_half(
    const Eigen::MatrixBase<Derived>& a, const Tolerances& tol = {}) {
  const auto es = eig_hermitian(a, tol);
  const Eigen::Index n = es.eigenvalues.size();
  if (es.eigenvalues(0) < -tol.pos || es.eigenvalues(n - 1) > 1 + tol.pos) {
    std::ostringstream os;
    os << "spectral_projection_upper_half: spectrum [" << es.eigenvalues(0) << ", "
       << es.eigenvalues(n - 1) << "] not inside [0, 1]";
    throw Error(ErrorCode::NotPositiveContraction, os.str());
  }
  return upper_half_projection(es, tol.thresh);
}

/// max ||P^2 - P||_op, used wherever a single projection is validated.
template <typename Derived>
typename Derived::RealScalar projection_defect(const Eigen::MatrixBase<Derived>& p) {
  return operator_norm(p * p - p);
}

}  // namespace synclift
