#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "synclift/linalg.hpp"

namespace synclift {

/// Seeded generator used for every random instance in the library.
///
/// The engine is std::mt19937_64 (fully specified by the C++ standard). The
/// transforms on top of it are fixed here rather than delegated to
/// <random> distributions, whose algorithms are implementation-defined:
///   uniform(): (next() >> 11) * 2^-53, in [0, 1)
///   normal():  Box-Muller on (1 - uniform(), uniform()), both outputs used
///              in order (cos branch first)
///   complex_normal(): (normal() + i normal()) / sqrt(2)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform();
  double normal();
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// rows x cols matrix of i.i.d. standard complex Gaussians.
Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
/// of diag(R) absorbed into Q.
Matrix haar_unitary(Eigen::Index dim, Rng& rng);

/// GUE-type Hermitian matrix rescaled to unit operator norm (zero if dim == 0).
Matrix random_hermitian_unit(Eigen::Index dim, Rng& rng);

/// U diag(lambda) U* with U Haar and lambda_i uniform in [0, 1].
Matrix random_positive_contraction(Eigen::Index dim, Rng& rng);

/// Full-rank density: 0.9 * G G* / tr(G G*) + 0.1 * I / dim.
Matrix random_faithful_density(Eigen::Index dim, Rng& rng);

}  // namespace synclift
