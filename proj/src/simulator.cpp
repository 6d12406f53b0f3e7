#include "agnlab/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "agnlab/optimizer.hpp"
#include "agnlab/recursions.hpp"
#include "agnlab/rng.hpp"

namespace agnlab {

double PerturbationSpec::magnitude(std::size_t t) const {
  switch (mode) {
    case Mode::None: return 0.0;
    case Mode::Constant: return epsilon;
    case Mode::Custom: return std::fabs(values.at(t - 1));
  }
  throw std::logic_error("perturbation: unknown mode");
}

namespace {

void check_perturbation(const ChannelParams& params, const PerturbationSpec& p) {
  switch (p.mode) {
    case PerturbationSpec::Mode::None:
      return;
    case PerturbationSpec::Mode::Constant:
      if (!(p.epsilon >= 0.0) || !std::isfinite(p.epsilon))
        throw std::invalid_argument("perturbation: epsilon must be finite and >= 0");
      return;
    case PerturbationSpec::Mode::Custom:
      if (p.values.size() != params.n)
        throw std::invalid_argument("perturbation: custom offsets must have length n");
      for (double v : p.values)
        if (!std::isfinite(v))
          throw std::invalid_argument("perturbation: custom offsets must be finite");
      return;
  }
  throw std::logic_error("perturbation: unknown mode");
}

}  // namespace

SimOutcome simulate(const ChannelParams& params_in, const GainSequence& gains,
                    std::size_t trials, const RngSpec& rng,
                    const PerturbationSpec& perturb) {
  const ChannelParams params = validate(params_in);
  check_gains(params, gains);
  check_perturbation(params, perturb);
  if (trials == 0) throw std::invalid_argument("simulate: trials must be >= 1");

  const std::size_t n = params.n;
  const EstimatorGains est = estimator_gains(params, gains);
  const double theta_sd = std::sqrt(params.ktheta);
  const double v1_sd = std::sqrt(params.first_step_noise_variance());
  const bool random_perturb = perturb.mode == PerturbationSpec::Mode::Constant;

  double sum_e2 = 0.0, sum_e4 = 0.0;
  std::vector<double> sum_x2(n, 0.0), sum_x4(n, 0.0);
  std::vector<double> sum_i(n, 0.0), sum_ii(n * n, 0.0);
  std::vector<double> innov(n, 0.0);

  for (std::size_t trial = 0; trial < trials; ++trial) {
    GaussianStream stream(rng.seed, trial);
    const double theta = theta_sd * stream.gaussian();

    double v_prev = 0.0;       // known initial state pins V_0 = 0
    double y_prev = 0.0;
    double est_prev = 0.0, est_prev2 = 0.0;

    for (std::size_t t = 1; t <= n; ++t) {
      double v;
      if (t == 1)
        v = v1_sd * stream.gaussian();
      else
        v = params.c[t - 1] * v_prev + std::sqrt(params.kw[t - 1]) * stream.gaussian();

      double d = 0.0;
      if (random_perturb)
        d = perturb.epsilon * stream.gaussian();
      else if (perturb.mode == PerturbationSpec::Mode::Custom)
        d = perturb.values[t - 1];

      const double x = gains.g[t - 1] * (theta - est_prev + d);
      const double y = x + v;

      double i;
      if (t == 1)
        i = y;
      else
        i = y - params.c[t - 1] * (y_prev - gains.g[t - 2] * (est_prev - est_prev2));
      const double est_now = est_prev + est.k[t - 1] * i;

      sum_x2[t - 1] += x * x;
      sum_x4[t - 1] += x * x * x * x;
      innov[t - 1] = i;

      est_prev2 = est_prev;
      est_prev = est_now;
      y_prev = y;
      v_prev = v;
    }

    const double e = theta - est_prev;
    sum_e2 += e * e;
    sum_e4 += e * e * e * e;
    for (std::size_t a = 0; a < n; ++a) {
      sum_i[a] += innov[a];
      for (std::size_t b = a; b < n; ++b) sum_ii[a * n + b] += innov[a] * innov[b];
    }
  }

  const double m = static_cast<double>(trials);
  SimOutcome out;
  out.trials = trials;
  out.seed = rng.seed;
  out.empirical_sigma_n = sum_e2 / m;
  out.sigma_n_std_error =
      std::sqrt(std::max(0.0, sum_e4 / m - (sum_e2 / m) * (sum_e2 / m)) / m);

  out.empirical_power.resize(n);
  out.power_std_error.resize(n);
  out.amplification.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    out.empirical_power[t] = sum_x2[t] / m;
    out.power_std_error[t] =
        std::sqrt(std::max(0.0, sum_x4[t] / m - out.empirical_power[t] * out.empirical_power[t]) / m);
    out.amplification[t] = std::fabs(gains.g[t]) * perturb.magnitude(t + 1);
  }

  out.innovation_corr.assign(n * n, 0.0);
  std::vector<double> sd(n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    const double mean = sum_i[a] / m;
    sd[a] = std::sqrt(std::max(0.0, sum_ii[a * n + a] / m - mean * mean));
  }
  double max_abs = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      double corr = 1.0;
      if (a != b) {
        const double cov = sum_ii[a * n + b] / m - (sum_i[a] / m) * (sum_i[b] / m);
        corr = (sd[a] > 0.0 && sd[b] > 0.0) ? cov / (sd[a] * sd[b]) : 0.0;
        max_abs = std::max(max_abs, std::fabs(corr));
      }
      out.innovation_corr[a * n + b] = corr;
      out.innovation_corr[b * n + a] = corr;
    }
  }
  out.max_abs_innovation_corr = max_abs;
  return out;
}

std::vector<FragilityRow> fragility_report(const ChannelParams& params_in, double eps,
                                           const std::vector<std::size_t>& n_list,
                                           const RngSpec& rng, std::size_t trials) {
  const ChannelParams params = validate(params_in);
  if (!(eps >= 0.0) || !std::isfinite(eps))
    throw std::invalid_argument("fragility_report: eps must be finite and >= 0");
  if (n_list.empty())
    throw std::invalid_argument("fragility_report: n_list must not be empty");
  if (!params.has_constant_coeff() || !params.has_constant_kw())
    throw std::invalid_argument("fragility_report: requires constant c and kw");

  std::vector<std::size_t> horizons = n_list;
  std::sort(horizons.begin(), horizons.end());

  std::vector<FragilityRow> rows;
  rows.reserve(horizons.size());
  for (std::size_t horizon : horizons) {
    if (horizon == 0) throw std::invalid_argument("fragility_report: horizons must be >= 1");
    ChannelParams p = params;
    p.n = horizon;
    p.c.assign(horizon, params.c[0]);
    p.kw.assign(horizon, params.kw[0]);

    const RateResult scheme = solve_b2(p);
    const RecursionTrace nominal = sigma_trace(p, scheme.gains);

    // One substream family per horizon so rows do not share noise paths.
    RngSpec row_rng{splitmix64_finalize(rng.seed ^ splitmix64_finalize(horizon))};
    const SimOutcome sim =
        simulate(p, scheme.gains, trials, row_rng, PerturbationSpec::constant(eps));

    FragilityRow row;
    row.n = horizon;
    row.gain_abs = std::fabs(scheme.gains.g.back());
    row.amplification = row.gain_abs * eps;
    row.sigma_nominal = nominal.sigma.back();
    row.sigma_empirical = sim.empirical_sigma_n;
    row.excess_mse = sim.empirical_sigma_n - nominal.sigma.back();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace agnlab
