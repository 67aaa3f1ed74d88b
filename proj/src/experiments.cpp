#include "synclift/experiments.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include <unsupported/Eigen/KroneckerProduct>

#include "synclift/random.hpp"

namespace synclift {

double bound_ratio(double distance, double bound) {
  if (bound > 0) return distance / bound;
  return distance == 0 ? 0.0 : std::numeric_limits<double>::infinity();
}

std::vector<BoundSample> run_bound_trials(int trials, const std::vector<Eigen::Index>& dims,
                                          std::uint64_t base_seed, bool force_half) {
  if (trials < 1 || dims.empty()) throw Error(ErrorCode::InvalidArgument, "run_bound_trials: need trials and dims");
  std::vector<BoundSample> out;
  out.reserve(static_cast<std::size_t>(trials));
  for (int i = 0; i < trials; ++i) {
    BoundSample s;
    s.dim = dims[static_cast<std::size_t>(i) % dims.size()];
    s.seed = base_seed + static_cast<std::uint64_t>(i);
    const int state_slot = static_cast<int>((static_cast<std::size_t>(i) / dims.size()) % 6);
    Rng rng(s.seed);

    Matrix a;
    std::optional<State> phi;
    if (force_half) {
      a = Matrix::Identity(s.dim, s.dim) / 2.0;
      s.has_half_eigenvalue = true;
    } else {
      if (i % 10 == 0) {
        RealVector lambda(s.dim);
        lambda(0) = 0.5;
        for (Eigen::Index k = 1; k < s.dim; ++k) lambda(k) = rng.uniform() < 0.5 ? 0.0 : 1.0;
        const Matrix u = haar_unitary(s.dim, rng);
        a = u * lambda.cast<Complex>().asDiagonal() * u.adjoint();
        a = (a + a.adjoint()) / 2.0;
        s.has_half_eigenvalue = true;
      } else {
        a = random_positive_contraction(s.dim, rng);
      }
      if (state_slot > 0) {
        phi = State::from_density(random_faithful_density(s.dim, rng));
        s.faithful_random_state = true;
      }
    }
    if (!phi) phi = State::normalized_trace(s.dim);
    const Matrix p = spectral_projection_upper_half(a);
    s.distance = state_two_norm(a - p, *phi);
    s.bound = 2.0 * state_two_norm(a * a - a, *phi);
    s.ratio = bound_ratio(s.distance, s.bound);
    out.push_back(s);
  }
  return out;
}

std::vector<double> geometric_schedule(int levels) {
  std::vector<double> eps;
  for (int n = 1; n <= levels; ++n) eps.push_back(std::min(std::ldexp(1.0, -n), 0.2));
  return eps;
}

PlayerRep amplify(const PlayerRep& rep, Eigen::Index factor) {
  if (factor < 1) throw Error(ErrorCode::InvalidArgument, "amplify: factor must be >= 1");
  if (factor == 1) return rep;
  PlayerRep out{rep.dim * factor, rep.questions, rep.answers, {}};
  for (const auto& pvm : rep.pvms) {
    PVM amplified;
    for (const auto& p : pvm.projections) amplified.projections.push_back(Eigen::kroneckerProduct(p, Matrix::Identity(factor, factor)).eval());
    out.pvms.push_back(std::move(amplified));
  }
  return out;
}

ApproxRepSequence perturbed_sequence(const PlayerRep& base, const std::vector<double>& eps,
                                     std::uint64_t seed, bool amplify_dims) {
  ApproxRepSequence s{base.questions, base.answers, {}};
  for (std::size_t n = 0; n < eps.size(); ++n) {
    const PlayerRep rep = amplify(base, amplify_dims ? static_cast<Eigen::Index>(n + 1) : 1);
    s.indices.push_back({rep.dim, perturb_rep(rep, eps[n], seed + n)});
  }
  return s;
}

PlayerRep mub_rep(Eigen::Index dim) {
  const int d = static_cast<int>(dim);
  PlayerRep rep{dim, 2, d, {}};
  PVM computational, fourier;
  for (int a = 0; a < d; ++a) {
    Matrix e = Matrix::Zero(dim, dim);
    e(a, a) = 1.0;
    computational.projections.push_back(std::move(e));
    Eigen::VectorXcd v(dim);
    for (int k = 0; k < d; ++k)
      v(k) = std::polar(1.0 / std::sqrt(static_cast<double>(d)), 2.0 * std::numbers::pi * a * k / d);
    fourier.projections.push_back(v * v.adjoint());
  }
  rep.pvms = {std::move(computational), std::move(fourier)};
  return rep;
}

}  // namespace synclift
