#pragma once

#include <cstdint>

#include "agnlab/model.hpp"

namespace agnlab {

struct RngSpec {
  std::uint64_t seed = 1;

  bool operator==(const RngSpec&) const = default;
};

// Additive encoder-side disturbance.  At step t the encoder transmits
// X_t = g_t (e_t + d_t) instead of g_t e_t, where e_t is the estimation error
// it intended to send:
//   None     — d_t = 0
//   Constant — d_t = epsilon * xi_t, xi_t ~ G(0,1) drawn per trial and step
//   Custom   — d_t = values[t-1], a deterministic offset
// The decoder keeps using the nominal estimator gains, which is what makes
// growing |g_t| dangerous: the received disturbance is g_t d_t.
struct PerturbationSpec {
  enum class Mode { None, Constant, Custom };

  Mode mode = Mode::None;
  double epsilon = 0.0;
  std::vector<double> values;  // Custom mode only, one entry per step

  static PerturbationSpec none() { return {}; }
  static PerturbationSpec constant(double eps) {
    return {Mode::Constant, eps, {}};
  }
  static PerturbationSpec custom(std::vector<double> v) {
    return {Mode::Custom, 0.0, std::move(v)};
  }

  // |d_t| scale used for the amplification report.
  double magnitude(std::size_t t) const;

  bool operator==(const PerturbationSpec&) const = default;
};

// Monte Carlo rollout of the feedback scheme.  Each trial draws the message
// and noise path from its own substream (see rng.hpp), runs the encoder and
// the innovation-based decoder with the nominal estimator gains, and
// accumulates the squared final error, per-step transmit power and the
// realized innovations.  Trial draws are ordered: message first, then per
// step the channel noise and (Constant mode) the disturbance.
SimOutcome simulate(const ChannelParams& params, const GainSequence& gains,
                    std::size_t trials, const RngSpec& rng,
                    const PerturbationSpec& perturb);

struct FragilityRow {
  std::size_t n = 0;
  double gain_abs = 0.0;        // |g_n| of the fixed-ratio scheme at horizon n
  double amplification = 0.0;   // |g_n| * eps
  double excess_mse = 0.0;      // empirical Sigma_n under perturbation minus nominal Sigma_n
  double sigma_nominal = 0.0;   // analytic Sigma_n of the unperturbed scheme
  double sigma_empirical = 0.0;

  bool operator==(const FragilityRow&) const = default;
};

// How a fixed encoder-side disturbance of size eps hurts the fixed-ratio
// scheme as the horizon grows.  Rows are sorted by n.  The channel in params
// supplies the constant c, kw and the power budget; params.n is ignored.
std::vector<FragilityRow> fragility_report(const ChannelParams& params, double eps,
                                           const std::vector<std::size_t>& n_list,
                                           const RngSpec& rng, std::size_t trials = 20000);

}  // namespace agnlab
