#pragma once

#include "agnlab/model.hpp"

namespace agnlab {

// Long-horizon limit of the gain-ratio recursion under a constant-parameter
// channel with per-symbol power kappa.  chi is the unique root >= 1 of
//
//   chi^4 - chi^2 - (kappa / kw) (chi + |c|)^2 = 0
//
// and the limiting rate is log(chi) nats per transmission (kappa = 0 gives
// chi = 1, rate 0).  |c| > 1 is accepted; the root and rate are still well
// defined even though the noise process itself is then nonstationary.
struct AsymptoteResult {
  double chi = 1.0;
  double rate = 0.0;        // nats per transmission
  std::size_t iterations = 0;
  double residual = 0.0;    // |quartic(chi)| at the returned root
};

AsymptoteResult solve_asymptote(double kappa, double kw, double c);

// Iterates chi_2 = 1 + kappa/kw, chi_t = sqrt(1 + (1 + |c|/chi_{t-1})^2 kappa/kw)
// until successive iterates differ by less than tol or n_max terms have been
// produced.  The sequence alternates around its limit, so the stopping gap
// bounds the distance to the limit.
struct FixedPointResult {
  std::vector<double> chi;     // chi_2, chi_3, ...
  double limit = 1.0;
  bool converged = false;
  std::size_t iterations = 0;  // number of recursion steps taken
  bool matches_quartic = false;
  double quartic_gap = 0.0;    // |limit - solve_asymptote(...).chi|
};

FixedPointResult chi_fixed_point_iteration(double kappa, double kw, double c,
                                           std::size_t n_max, double tol);

// Growth classification of a gain sequence from the tail average L of the
// consecutive ratios |g_t / g_{t-1}|:  L > 1 + margin means the gains (and
// with them the sensitivity |g_n| eps to a fixed feedback perturbation)
// diverge; L < 1 - margin means they die out; otherwise inconclusive.
enum class RatioVerdict { DivergesToInfinity, ConvergesToZero, Inconclusive };

struct RatioTestResult {
  RatioVerdict verdict = RatioVerdict::Inconclusive;
  double limit_estimate = 1.0;  // tail-window average of |g_t / g_{t-1}|
  std::size_t window = 0;       // number of ratios averaged
};

// window = 0 picks min(10, n-1).  Requires at least 3 nonzero gains and a
// zero-free tail window; throws otherwise.
RatioTestResult ratio_test_verdict(const GainSequence& gains, std::size_t window = 0,
                                   double margin = 1e-3);

std::string ratio_verdict_name(RatioVerdict v);

}  // namespace agnlab
