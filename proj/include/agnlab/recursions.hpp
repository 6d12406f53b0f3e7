#pragma once

#include "agnlab/model.hpp"

namespace agnlab {

// Exact error-variance recursion for the minimum mean-square estimate of the
// message after t observations.  With S = first_step_noise_variance(),
//
//   Sigma_1 = K_Theta S / (g_1^2 K_Theta + S)
//   Sigma_t = K_{W_t} Sigma_{t-1} / (a_t^2 Sigma_{t-1} + K_{W_t}),
//             a_t = g_t - c_t g_{t-1}
//
// and the t-th information increment is (1/2) log(1 + a_t^2 Sigma_{t-1} / K_{W_t})
// (first step: (1/2) log(1 + g_1^2 K_Theta / S)).
RecursionTrace sigma_trace(const ChannelParams& params, const GainSequence& gains);

// Same quantities in closed form, valid when K_{W_t} is constant for t >= 2.
// Also fills trace.snr with the accumulated signal-to-noise sums
//   SNR_t = g_1^2 K_W K_Theta + sum_{j<=t} a_j^2 K_Theta S.
// Throws std::invalid_argument if kw varies over t >= 2.
RecursionTrace sigma_closed_form(const ChannelParams& params, const GainSequence& gains);

struct EstimatorGains {
  std::vector<double> k;  // k_1..k_n, the minimum-MSE update coefficients

  bool operator==(const EstimatorGains&) const = default;
};

// Coefficients of the one-tap estimator update Thetahat_t = Thetahat_{t-1} + k_t I_t,
// where I_t is the innovation of Y_t.  k_t = a_t Sigma_{t-1} / (a_t^2 Sigma_{t-1} + K_{W_t});
// at a step with a_t = 0 the observation carries no new message information and k_t = 0.
EstimatorGains estimator_gains(const ChannelParams& params, const GainSequence& gains);

// Total mutual information accrued by the scheme and the per-transmission rate.
// problem is set to ProblemKind::Evaluation; converged is always true.
RateResult mutual_information(const ChannelParams& params, const GainSequence& gains);

// Gain-ratio diagnostics.  chi_abs[t-2] = |g_t / g_{t-1}| and
// chi_signed[t-2] = g_t / g_{t-1} for t = 2..n.
//
// identity_residual[t-3] (t = 3..n) checks the ratio identity
//
//   chi_t^2 = {1 + (1 + |c_{t-1}| / chi_{t-1})^2 kappa_{t-1} / K_{W_{t-1}}} kappa_t / kappa_{t-1}
//
// which holds whenever the sign rule g_{t-1} c_{t-1} g_{t-2} <= 0 is satisfied
// at the previous step; entries where the rule fails are NaN.  A signed variant
// of the same identity, chi_t^2 = {1 + (1 - c_{t-1}/chi_{t-1})^2 kappa_{t-1}/K_{W_{t-1}}}
// kappa_t / kappa_{t-1}, holds with no sign condition at all; it is exercised in
// the tests directly from chi_signed.  (Both normalize the power term by K_W
// alone; scaling it by K_Theta K_V1 as is sometimes seen breaks dimensional
// consistency and fails numerically.)
//
// Throws std::domain_error naming the index if some g_{t-1} = 0, t in 2..n.
struct ChiTrace {
  std::vector<double> chi_abs;
  std::vector<double> chi_signed;
  std::vector<double> identity_residual;

  bool operator==(const ChiTrace&) const = default;
};

ChiTrace chi_trace(const ChannelParams& params, const GainSequence& gains);

}  // namespace agnlab
