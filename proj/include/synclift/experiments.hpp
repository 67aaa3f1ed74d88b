#pragma once

// Seeded corpora shared by the CLI drivers, the fixtures and the acceptance suite.

#include <cstdint>
#include <vector>

#include "synclift/correlations.hpp"
#include "synclift/lift.hpp"
#include "synclift/player.hpp"

namespace synclift {

struct BoundSample {
  Eigen::Index dim = 0;
  std::uint64_t seed = 0;
  bool faithful_random_state = false;  // false: normalized trace
  bool has_half_eigenvalue = false;
  double distance = 0;
  double bound = 0;
  double ratio = 0;  // distance / bound, 0 when both vanish
};

/// Trial i uses dim = dims[i % |dims|] and seed = base_seed + i. The state
/// cycles per dim through {normalized trace, 5 random faithful densities}.
/// Every tenth trial has spectrum {1/2} plus random 0/1 eigenvalues, which is
/// where the bound is attained; the rest are U diag(uniform) U*.
/// With force_half every trial is a = I/2 under the normalized trace.
std::vector<BoundSample> run_bound_trials(int trials, const std::vector<Eigen::Index>& dims,
                                          std::uint64_t base_seed, bool force_half = false);

double bound_ratio(double distance, double bound);

/// min(2^-n, 0.2) for n = 1..levels (perturb_rep accepts eps <= 0.2).
std::vector<double> geometric_schedule(int levels);

/// P (x) I_k on dim * k.
PlayerRep amplify(const PlayerRep& rep, Eigen::Index factor);

/// Index n (0-based) holds perturb_rep(amplify(base, amplify ? n + 1 : 1),
/// eps[n], seed + n).
ApproxRepSequence perturbed_sequence(const PlayerRep& base, const std::vector<double>& eps,
                                     std::uint64_t seed, bool amplify_dims);

/// Computational basis for question 0 and the discrete Fourier basis for
/// question 1, on C^dim with A = dim answers: a pair of mutually unbiased bases.
PlayerRep mub_rep(Eigen::Index dim);

}  // namespace synclift
