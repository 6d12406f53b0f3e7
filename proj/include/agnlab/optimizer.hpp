#pragma once

#include <cstdint>

#include "agnlab/model.hpp"

namespace agnlab {

struct OptimizerConfig {
  double tol = 1e-10;                  // function-value convergence tolerance
  std::size_t max_iter = 20000;        // objective evaluations per restart
  std::size_t sign_search_limit = 20;  // largest n enumerated exhaustively
  std::size_t restarts = 40;           // multi-start count for local searches
  std::uint64_t seed = 1;              // seeds the restart perturbations
  bool p2_continuous_only = false;     // skip the exhaustive branch of P2

  bool operator==(const OptimizerConfig&) const = default;
};

// All four rate problems below are posed in the classical convention: constant
// AR coefficient c, constant innovation variance K_W, known initial noise
// state (so the first-step noise variance is K_W), error variance recursion
// seeded with Sigma_1 = K_W / (g_1^2 + K_W) at unit message variance.
// Channels with ktheta != 1 are handled by the exact rescaling
// g_t -> g_t sqrt(ktheta), which leaves every kappa_t and information term
// unchanged; kv1 and the configured state/constraint kinds do not enter.
// Channels with non-constant c or kw are rejected with std::invalid_argument.

// Fixed-gain-ratio scheme under the pointwise power constraint
// kappa_t = kappa:  chi_2 = 1 + kappa/K_W,
// chi_t = sqrt(1 + (1 + |c|/chi_t-1)^2 kappa/K_W), and
//
//   rate = (1/n) [ (1/2) log(1 + kappa/K_W)
//                  + sum_{t=2..n} (1/2) log(1 + (1 + |c|/chi_t)^2 kappa/K_W) ].
//
// The returned trace carries the scheme's own bookkeeping: sigma is its error
// variance sequence, kappa_t = kappa exactly, chi holds chi_2..chi_n from the
// recursion above (note chi_2 seeds the recursion and is not itself a gain
// ratio; the realized |g_2/g_1| is sqrt(chi_2)), and mi_increments are the
// bracketed half-log terms.  Deterministic, no search involved.
RateResult solve_b2(const ChannelParams& params);

// Gains realizing a ratio schedule chi_2..chi_n (one entry per t = 2..n)
// under kappa_t = kappa: |g_1| = sqrt(kappa / ktheta), |g_t| chosen so the
// per-step power stays at kappa, signs alternating against the noise
// correlation (sgn g_t = -sgn(c g_{t-1}); ties resolved to +1).  Throws
// std::runtime_error naming the step if the error variance underflows to 0.
GainSequence recover_gains_from_chi(const std::vector<double>& chi,
                                    const ChannelParams& params);

// Best linear feedback scheme under the pointwise constraint kappa_t = kappa
// for every t.  The feasible set collapses to sign patterns: |g_t| is pinned
// by the running error variance, g_1 >= 0 without loss of generality, and the
// remaining n-1 signs are enumerated exhaustively for n <= sign_search_limit
// (authoritative branch).  A penalized multi-start simplex search over the
// unconstrained gains runs alongside as corroboration; its final point is
// projected back to the feasible sign pattern before comparison.  The better
// branch is reported in RateResult::branch.  With p2_continuous_only the
// exhaustive branch is skipped; without it, n > sign_search_limit throws
// std::invalid_argument advising the continuous branch.
RateResult solve_p2(const ChannelParams& params, const OptimizerConfig& cfg);

// Best linear feedback scheme under the total average power constraint
// sum_t kappa_t = n kappa.  Multi-start simplex search over the gains; each
// candidate is scaled onto the power shell by a monotone one-dimensional
// bracketing search before evaluation, so every reported point is feasible.
// Warm starts include the fixed-ratio scheme and (for n within
// sign_search_limit) the best pointwise sign pattern, which guarantees the
// result dominates both.  converged reflects the restart that produced the
// returned point.
RateResult solve_p1(const ChannelParams& params, const OptimizerConfig& cfg);

// solve_p1 restricted to the alternating sign pattern
// sgn g_t = (-sgn c)^{t-1} (all positive when c = 0): the search runs over
// gain magnitudes only.
RateResult solve_b1(const ChannelParams& params, const OptimizerConfig& cfg);

}  // namespace agnlab
