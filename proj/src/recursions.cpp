#include "agnlab/recursions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace agnlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void fill_chi_ratios(const GainSequence& gains, RecursionTrace& trace) {
  const std::size_t n = gains.g.size();
  trace.chi.reserve(n >= 1 ? n - 1 : 0);
  for (std::size_t t = 2; t <= n; ++t) {
    const double prev = gains.g[t - 2];
    trace.chi.push_back(prev != 0.0 ? std::fabs(gains.g[t - 1] / prev) : kNaN);
  }
}

}  // namespace

RecursionTrace sigma_trace(const ChannelParams& params_in, const GainSequence& gains) {
  const ChannelParams params = validate(params_in);
  check_gains(params, gains);

  const std::size_t n = params.n;
  const double s1 = params.first_step_noise_variance();

  RecursionTrace trace;
  trace.sigma.reserve(n + 1);
  trace.kappa_t.reserve(n);
  trace.mi_increments.reserve(n);

  trace.sigma.push_back(params.ktheta);

  const double g1 = gains.g[0];
  const double snr1 = g1 * g1 * params.ktheta / s1;
  trace.sigma.push_back(params.ktheta * s1 / (g1 * g1 * params.ktheta + s1));
  trace.kappa_t.push_back(g1 * g1 * params.ktheta);
  trace.mi_increments.push_back(0.5 * std::log1p(snr1));

  for (std::size_t t = 2; t <= n; ++t) {
    const double prev = trace.sigma[t - 1];
    const double a = gains.g[t - 1] - params.c[t - 1] * gains.g[t - 2];
    const double kwt = params.kw[t - 1];
    trace.sigma.push_back(kwt * prev / (a * a * prev + kwt));
    trace.kappa_t.push_back(gains.g[t - 1] * gains.g[t - 1] * prev);
    trace.mi_increments.push_back(0.5 * std::log1p(a * a * prev / kwt));
  }

  fill_chi_ratios(gains, trace);
  return trace;
}

RecursionTrace sigma_closed_form(const ChannelParams& params_in, const GainSequence& gains) {
  const ChannelParams params = validate(params_in);
  check_gains(params, gains);

  const std::size_t n = params.n;
  for (std::size_t t = 2; t < n; ++t)
    if (params.kw[t] != params.kw[1])
      throw std::invalid_argument(
          "sigma_closed_form: kw must be constant for t >= 2 (kw[" + std::to_string(t) +
          "] differs)");

  const double s1 = params.first_step_noise_variance();
  const double kw = n >= 2 ? params.kw[1] : params.kw[0];
  const double kth = params.ktheta;
  const double g1 = gains.g[0];

  RecursionTrace trace;
  trace.sigma.reserve(n + 1);
  trace.kappa_t.reserve(n);
  trace.mi_increments.reserve(n);
  trace.snr.reserve(n);

  trace.sigma.push_back(kth);

  // Sigma_t = kw kth s1 / (snr_t + kw s1) with snr_t accumulated below.
  double snr = g1 * g1 * kw * kth;
  trace.snr.push_back(snr);
  trace.sigma.push_back(kw * kth * s1 / (snr + kw * s1));
  trace.kappa_t.push_back(g1 * g1 * kth);
  trace.mi_increments.push_back(0.5 * std::log1p(g1 * g1 * kth / s1));

  for (std::size_t t = 2; t <= n; ++t) {
    const double prev = trace.sigma[t - 1];
    const double a = gains.g[t - 1] - params.c[t - 1] * gains.g[t - 2];
    snr += a * a * kth * s1;
    trace.snr.push_back(snr);
    trace.sigma.push_back(kw * kth * s1 / (snr + kw * s1));
    trace.kappa_t.push_back(gains.g[t - 1] * gains.g[t - 1] * prev);
    trace.mi_increments.push_back(0.5 * std::log1p(a * a * prev / kw));
  }

  fill_chi_ratios(gains, trace);
  return trace;
}

EstimatorGains estimator_gains(const ChannelParams& params_in, const GainSequence& gains) {
  const ChannelParams params = validate(params_in);
  check_gains(params, gains);

  const RecursionTrace trace = sigma_trace(params, gains);
  const double s1 = params.first_step_noise_variance();

  EstimatorGains est;
  est.k.reserve(params.n);
  est.k.push_back(gains.g[0] * params.ktheta /
                  (gains.g[0] * gains.g[0] * params.ktheta + s1));
  for (std::size_t t = 2; t <= params.n; ++t) {
    const double prev = trace.sigma[t - 1];
    const double a = gains.g[t - 1] - params.c[t - 1] * gains.g[t - 2];
    est.k.push_back(a * prev / (a * a * prev + params.kw[t - 1]));
  }
  return est;
}

RateResult mutual_information(const ChannelParams& params_in, const GainSequence& gains) {
  const ChannelParams params = validate(params_in);
  check_gains(params, gains);

  RateResult result;
  result.trace = sigma_trace(params, gains);
  result.gains = gains;
  result.problem = ProblemKind::Evaluation;
  double total = 0.0;
  for (double inc : result.trace.mi_increments) total += inc;
  result.total_mi = total;
  result.rate = total / static_cast<double>(params.n);
  return result;
}

ChiTrace chi_trace(const ChannelParams& params_in, const GainSequence& gains) {
  const ChannelParams params = validate(params_in);
  check_gains(params, gains);

  const std::size_t n = params.n;
  for (std::size_t t = 2; t <= n; ++t)
    if (gains.g[t - 2] == 0.0)
      throw std::domain_error("chi_trace: g[" + std::to_string(t - 1) +
                              "] is zero, ratio chi_" + std::to_string(t) + " undefined");

  ChiTrace out;
  out.chi_abs.reserve(n >= 1 ? n - 1 : 0);
  out.chi_signed.reserve(n >= 1 ? n - 1 : 0);
  for (std::size_t t = 2; t <= n; ++t) {
    const double r = gains.g[t - 1] / gains.g[t - 2];
    out.chi_signed.push_back(r);
    out.chi_abs.push_back(std::fabs(r));
  }

  const RecursionTrace trace = sigma_trace(params, gains);
  out.identity_residual.reserve(n >= 2 ? n - 2 : 0);
  for (std::size_t t = 3; t <= n; ++t) {
    const double g_prev = gains.g[t - 2];
    const double c_prev = params.c[t - 2];
    const double sign_rule = g_prev * c_prev * gains.g[t - 3];
    if (sign_rule > 0.0) {
      out.identity_residual.push_back(kNaN);
      continue;
    }
    const double chi_t = out.chi_abs[t - 2];
    const double chi_prev = out.chi_abs[t - 3];
    const double kap_t = trace.kappa_t[t - 1];
    const double kap_prev = trace.kappa_t[t - 2];
    const double factor = 1.0 + std::fabs(c_prev) / chi_prev;
    const double rhs =
        (1.0 + factor * factor * kap_prev / params.kw[t - 2]) * kap_t / kap_prev;
    out.identity_residual.push_back(std::fabs(chi_t * chi_t - rhs));
  }
  return out;
}

}  // namespace agnlab
