#include "synclift/random.hpp"

#include <cmath>
#include <numbers>

namespace synclift {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (spare_) {
    const double out = *spare_;
    spare_.reset();
    return out;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im) / std::numbers::sqrt2;
}

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Matrix g(rows, cols);
  // Row-major fill order so the stream layout does not depend on Eigen storage.
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = rng.complex_normal();
  return g;
}

Matrix haar_unitary(Eigen::Index dim, Rng& rng) {
  const Matrix g = gaussian_matrix(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    const Complex phase = mag > 0 ? r(j, j) / mag : Complex(1.0);
    q.col(j) *= phase;
  }
  return q;
}

Matrix random_hermitian_unit(Eigen::Index dim, Rng& rng) {
  const Matrix g = gaussian_matrix(dim, dim, rng);
  Matrix h = (g + g.adjoint()) / 2.0;
  const double norm = operator_norm(h);
  if (norm > 0) h /= norm;
  return h;
}

Matrix random_positive_contraction(Eigen::Index dim, Rng& rng) {
  const Matrix u = haar_unitary(dim, rng);
  RealVector lambda(dim);
  for (Eigen::Index i = 0; i < dim; ++i) lambda(i) = rng.uniform();
  Matrix a = u * lambda.cast<Complex>().asDiagonal() * u.adjoint();
  return (a + a.adjoint()) / 2.0;
}

Matrix random_faithful_density(Eigen::Index dim, Rng& rng) {
  const Matrix g = gaussian_matrix(dim, dim, rng);
  Matrix w = g * g.adjoint();
  w /= w.trace().real();
  Matrix rho = 0.9 * w + (0.1 / static_cast<double>(dim)) * Matrix::Identity(dim, dim);
  return (rho + rho.adjoint()) / 2.0;
}

}  // namespace synclift
