#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

// Core value types shared by every module.
//
// Channel model: a scalar Gaussian message Theta ~ G(0, K_Theta) is sent over
// n uses of an additive Gaussian noise channel whose noise has first-order
// autoregressive memory,
//
//   Y_t = X_t + V_t,      V_t = c_t V_{t-1} + W_t,     W_t ~ G(0, K_{W_t}),
//
// with the linear feedback scheme X_t = g_t (Theta - E{Theta | Y^{t-1}})
// and X_1 = g_1 Theta.  Two variants differ in the first noise sample:
//
//   NoInitialState    — nothing is known about V_0; V_1 ~ G(0, kv1).
//   KnownInitialState — V_0 = v_0 is known at both ends, so the effective
//                       first-step noise variance is K_{W_1} (kw[0]).
//
// All types are immutable value objects once validated; they can be shared
// freely between threads.

namespace agnlab {

enum class ConstraintKind { TotalAverage, PointwisePerSymbol };
enum class StateKind { NoInitialState, KnownInitialState };

struct ChannelParams {
  std::size_t n = 0;         // horizon (number of transmissions)
  std::vector<double> c;     // AR coefficients c_1..c_n
  std::vector<double> kw;    // innovation variances K_{W_1}..K_{W_n}
  double kv1 = 1.0;          // Var(V_1) in the NoInitialState variant
  double ktheta = 1.0;       // message variance K_Theta
  double kappa = 1.0;        // power budget
  ConstraintKind constraint = ConstraintKind::PointwisePerSymbol;
  StateKind state = StateKind::NoInitialState;

  // Variance of the noise seen by the first transmission: kv1, or kw[0]
  // when the initial state is known.
  double first_step_noise_variance() const {
    return state == StateKind::KnownInitialState ? kw.front() : kv1;
  }

  bool has_constant_coeff() const;
  bool has_constant_kw() const;

  // Convenience builder for the common constant-parameter channel.
  static ChannelParams constant(std::size_t n, double c, double kw,
                                double ktheta = 1.0, double kv1 = 1.0,
                                double kappa = 1.0,
                                ConstraintKind constraint = ConstraintKind::PointwisePerSymbol,
                                StateKind state = StateKind::NoInitialState);

  bool operator==(const ChannelParams&) const = default;
};

// Checks every invariant (positive variances, kappa >= 0, list lengths,
// n >= 1, finite entries) and returns the params unchanged.
// Throws std::invalid_argument naming the offending field.
ChannelParams validate(ChannelParams p);

struct GainSequence {
  std::vector<double> g;  // encoder gains g_1..g_n

  bool operator==(const GainSequence&) const = default;
};

// Throws unless gains.g has length params.n and every entry is finite.
void check_gains(const ChannelParams& params, const GainSequence& gains);

// Time-indexed record produced by the recursion evaluators.
// Index conventions: sigma[t] = Sigma_t for t = 0..n with Sigma_0 = K_Theta;
// kappa_t[t-1] = kappa_t = g_t^2 Sigma_{t-1}; chi[t-2] = chi_t for t = 2..n;
// mi_increments[t-1] = the t-th half-log term in nats.  snr is filled only
// by the closed-form evaluator and is empty otherwise.  chi entries are NaN
// where the previous gain is zero.
struct RecursionTrace {
  std::vector<double> sigma;
  std::vector<double> kappa_t;
  std::vector<double> chi;
  std::vector<double> mi_increments;
  std::vector<double> snr;

  bool operator==(const RecursionTrace&) const = default;
};

enum class ProblemKind { B1, B2, BAsymptotic, P1, P2, Evaluation };

std::string problem_name(ProblemKind p);
ProblemKind problem_from_name(const std::string& name);

struct RateResult {
  double rate = 0.0;      // nats per transmission
  double total_mi = 0.0;  // nats over the whole horizon
  RecursionTrace trace;
  GainSequence gains;
  ProblemKind problem = ProblemKind::Evaluation;
  bool converged = true;   // continuous solvers may clear this
  std::string branch;      // for P2: "exhaustive" or "continuous"

  bool operator==(const RateResult&) const = default;
};

// Monte Carlo summary.  empirical_power[t-1] estimates E{X_t^2};
// amplification[t-1] = |g_t| * eps_t for the configured perturbation.
// innovation_corr holds the n x n sample correlation matrix of the realized
// innovations, row-major.
struct SimOutcome {
  std::size_t trials = 0;
  double empirical_sigma_n = 0.0;
  double sigma_n_std_error = 0.0;
  std::vector<double> empirical_power;
  std::vector<double> power_std_error;
  std::vector<double> amplification;
  std::uint64_t seed = 0;
  std::vector<double> innovation_corr;
  double max_abs_innovation_corr = 0.0;

  bool operator==(const SimOutcome&) const = default;
};

}  // namespace agnlab
