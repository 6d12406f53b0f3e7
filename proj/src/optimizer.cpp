#include "agnlab/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "agnlab/nelder_mead.hpp"
#include "agnlab/recursions.hpp"
#include "agnlab/rng.hpp"

namespace agnlab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// The rate problems are posed at unit message variance with a known initial
// noise state.  solver_setup validates the channel, checks the constancy
// requirements and produces the internal parameter set; gains map back to the
// caller's scale through division by sqrt(ktheta).
struct SolverSetup {
  ChannelParams internal;
  ChannelParams original;
  double gain_scale = 1.0;
  double kappa = 0.0;
  double kw = 0.0;
  double c = 0.0;
  std::size_t n = 0;
};

SolverSetup solver_setup(const ChannelParams& params_in, const char* who) {
  ChannelParams p = validate(params_in);
  if (!p.has_constant_coeff())
    throw std::invalid_argument(std::string(who) + ": requires a constant AR coefficient");
  if (!p.has_constant_kw())
    throw std::invalid_argument(std::string(who) + ": requires a constant noise variance kw");

  SolverSetup s;
  s.original = p;
  s.internal = p;
  s.internal.ktheta = 1.0;
  s.internal.state = StateKind::KnownInitialState;
  s.gain_scale = std::sqrt(p.ktheta);
  s.kappa = p.kappa;
  s.kw = p.kw[0];
  s.c = p.c[0];
  s.n = p.n;
  return s;
}

// Evaluate internal gains, then restate the result at the caller's message
// variance (gains shrink by sqrt(ktheta), error variances grow by ktheta;
// every information and power quantity is unchanged).
RateResult finish_result(const SolverSetup& s, const GainSequence& internal_gains,
                         ProblemKind problem) {
  RateResult out = mutual_information(s.internal, internal_gains);
  out.problem = problem;
  for (double& g : out.gains.g) g /= s.gain_scale;
  for (double& sig : out.trace.sigma) sig *= s.original.ktheta;
  return out;
}

struct RecoveredScheme {
  std::vector<double> g;      // internal gains (unit message variance)
  std::vector<double> sigma;  // the scheme's bookkeeping variances Sigma_0..Sigma_n
};

// Gains meeting kappa_t = kappa given a ratio schedule chi_2..chi_n, together
// with the error variance sequence implied by the schedule.
RecoveredScheme recover_internal(const std::vector<double>& chi, double kappa, double kw,
                                 double c, std::size_t n, const char* who) {
  RecoveredScheme out;
  out.g.reserve(n);
  out.sigma.reserve(n + 1);

  out.sigma.push_back(1.0);
  out.g.push_back(std::sqrt(kappa));
  out.sigma.push_back(kw / (kappa + kw));

  const double ac = std::fabs(c);
  for (std::size_t t = 2; t <= n; ++t) {
    const double prev = out.sigma[t - 1];
    if (prev <= 0.0)
      throw std::runtime_error(std::string(who) + ": error variance underflowed at step " +
                               std::to_string(t - 1) + ", gains are no longer representable");
    const double mag = std::sqrt(kappa / prev);
    const double sign = (c * out.g[t - 2] > 0.0) ? -1.0 : 1.0;
    out.g.push_back(sign * mag);
    // (g_t - c g_{t-1})^2 Sigma_{t-1} = kappa (1 + |c|/chi_t)^2 along the schedule
    const double f = 1.0 + ac / chi[t - 2];
    out.sigma.push_back(kw * prev / (kappa * f * f + kw));
  }
  return out;
}

// Total information of the pointwise-constrained scheme for one sign choice of
// g_2..g_n (signs[t-2] = -1 or +1), with the gains appended to *gains_out if
// given.  Magnitudes are pinned by the running error variance.
double pointwise_pattern_value(const std::vector<int>& signs, double kappa, double kw,
                               double c, std::size_t n, std::vector<double>* gains_out) {
  double sigma = kw / (kappa + kw);
  double total = 0.5 * std::log1p(kappa / kw);
  double g_prev = std::sqrt(kappa);
  if (gains_out) {
    gains_out->clear();
    gains_out->push_back(g_prev);
  }
  for (std::size_t t = 2; t <= n; ++t) {
    const double g = signs[t - 2] * std::sqrt(kappa / sigma);
    const double a = g - c * g_prev;
    total += 0.5 * std::log1p(a * a * sigma / kw);
    sigma = kw * sigma / (a * a * sigma + kw);
    g_prev = g;
    if (gains_out) gains_out->push_back(g);
  }
  return total;
}

std::vector<int> signs_from_mask(std::uint64_t mask, std::size_t count) {
  std::vector<int> signs(count);
  for (std::size_t i = 0; i < count; ++i) signs[i] = (mask >> i) & 1ull ? -1 : 1;
  return signs;
}

RateResult zero_power_result(const SolverSetup& s, ProblemKind problem) {
  GainSequence zeros;
  zeros.g.assign(s.n, 0.0);
  RateResult out = finish_result(s, zeros, problem);
  out.converged = true;
  return out;
}

// ---- total-average-power engine (P1 and B1) --------------------------------

// Power actually spent by the scheme alpha * g over the whole horizon.
double total_power_scaled(const std::vector<double>& g, double alpha, double kw, double c) {
  const double g1 = alpha * g[0];
  double total = g1 * g1;
  double sigma = kw / (g1 * g1 + kw);
  double g_prev = g1;
  for (std::size_t t = 2; t <= g.size(); ++t) {
    const double gt = alpha * g[t - 1];
    total += gt * gt * sigma;
    const double a = gt - c * g_prev;
    sigma = kw * sigma / (a * a * sigma + kw);
    g_prev = gt;
  }
  return total;
}

double total_information(const std::vector<double>& g, double kw, double c) {
  double total = 0.5 * std::log1p(g[0] * g[0] / kw);
  double sigma = kw / (g[0] * g[0] + kw);
  double g_prev = g[0];
  for (std::size_t t = 2; t <= g.size(); ++t) {
    const double a = g[t - 1] - c * g_prev;
    total += 0.5 * std::log1p(a * a * sigma / kw);
    sigma = kw * sigma / (a * a * sigma + kw);
    g_prev = g[t - 1];
  }
  return total;
}

bool all_zero(const std::vector<double>& v) {
  for (double x : v)
    if (x != 0.0) return false;
  return true;
}

// Scale factor putting g on the power shell sum_t kappa_t = budget.  The
// spent power grows from 0 along the ray, so a geometric bracket followed by
// bisection pins the crossing.
double shell_scale(const std::vector<double>& g, double budget, double kw, double c) {
  double lo = 1.0, hi = 1.0;
  if (total_power_scaled(g, 1.0, kw, c) < budget) {
    while (total_power_scaled(g, hi, kw, c) < budget) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e150)
        throw std::runtime_error("shell_scale: power budget unreachable along this ray");
    }
  } else {
    while (total_power_scaled(g, lo, kw, c) > budget) {
      hi = lo;
      lo *= 0.5;
      if (lo < 1e-150) break;
    }
  }
  for (int i = 0; i < 200 && hi - lo > 1e-16 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (total_power_scaled(g, mid, kw, c) < budget)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

enum class SignMode { Free, Alternating };

// Raw optimizer coordinates -> gains.  Alternating mode searches magnitudes
// and applies sgn g_t = (-sgn c)^{t-1}.
std::vector<double> raw_to_gains(const std::vector<double>& x, SignMode mode, double c) {
  if (mode == SignMode::Free) return x;
  std::vector<double> g(x.size());
  const double alt = c > 0.0 ? -1.0 : 1.0;
  double s = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    g[i] = s * std::fabs(x[i]);
    s *= alt;
  }
  return g;
}

RateResult solve_total_average(const ChannelParams& params_in, const OptimizerConfig& cfg,
                               SignMode mode, ProblemKind problem, const char* who) {
  SolverSetup s = solver_setup(params_in, who);
  if (s.kappa == 0.0) return zero_power_result(s, problem);

  const double budget = static_cast<double>(s.n) * s.kappa;

  // Feasible rate of a raw point; the scaled gains are written to *feasible.
  auto project_and_rate = [&](const std::vector<double>& x,
                              std::vector<double>* feasible) -> double {
    const std::vector<double> g = raw_to_gains(x, mode, s.c);
    if (all_zero(g)) {
      if (feasible) feasible->assign(s.n, 0.0);
      return 0.0;
    }
    const double alpha = shell_scale(g, budget, s.kw, s.c);
    std::vector<double> scaled(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) scaled[i] = alpha * g[i];
    const double rate = total_information(scaled, s.kw, s.c) / static_cast<double>(s.n);
    if (feasible) *feasible = std::move(scaled);
    return rate;
  };

  auto objective = [&](const std::vector<double>& x) { return -project_and_rate(x, nullptr); };

  // Warm starts: the fixed-ratio scheme, the best pointwise sign pattern
  // (guaranteeing the result dominates both), then randomized directions.
  std::vector<std::vector<double>> starts;
  {
    const RateResult b2 = solve_b2(s.internal);
    starts.push_back(b2.gains.g);
  }
  if (mode == SignMode::Free && s.n >= 2 && s.n <= cfg.sign_search_limit && s.n <= 41) {
    std::uint64_t best_mask = 0;
    double best = kNegInf;
    for (std::uint64_t mask = 0; mask < (1ull << (s.n - 1)); ++mask) {
      const double v =
          pointwise_pattern_value(signs_from_mask(mask, s.n - 1), s.kappa, s.kw, s.c, s.n, nullptr);
      if (v > best) {
        best = v;
        best_mask = mask;
      }
    }
    std::vector<double> g;
    pointwise_pattern_value(signs_from_mask(best_mask, s.n - 1), s.kappa, s.kw, s.c, s.n, &g);
    starts.push_back(g);
  }
  while (starts.size() < std::max<std::size_t>(cfg.restarts, 1)) {
    GaussianStream stream(cfg.seed, starts.size());
    std::vector<double> x(s.n);
    for (double& xi : x) xi = stream.gaussian();
    starts.push_back(std::move(x));
  }

  double best_rate = kNegInf;
  std::vector<double> best_gains;
  bool best_converged = false;
  for (const auto& x0 : starts) {
    const NelderMeadResult nm = nelder_mead_minimize(objective, x0, 0.25, cfg.tol, cfg.max_iter);
    std::vector<double> feasible;
    const double rate = project_and_rate(nm.x, &feasible);
    if (rate > best_rate) {
      best_rate = rate;
      best_gains = std::move(feasible);
      best_converged = nm.converged;
    }
  }

  RateResult out = finish_result(s, GainSequence{best_gains}, problem);
  out.converged = best_converged;
  return out;
}

}  // namespace

RateResult solve_b2(const ChannelParams& params_in) {
  SolverSetup s = solver_setup(params_in, "solve_b2");
  const double q = s.kappa / s.kw;
  const double ac = std::fabs(s.c);

  std::vector<double> chi;
  if (s.n >= 2) {
    chi.reserve(s.n - 1);
    chi.push_back(1.0 + q);
    for (std::size_t t = 3; t <= s.n; ++t) {
      const double f = 1.0 + ac / chi.back();
      chi.push_back(std::sqrt(1.0 + f * f * q));
    }
  }

  RecoveredScheme scheme = recover_internal(chi, s.kappa, s.kw, s.c, s.n, "solve_b2");

  RateResult out;
  out.problem = ProblemKind::B2;
  out.gains.g = scheme.g;
  for (double& g : out.gains.g) g /= s.gain_scale;

  out.trace.sigma = scheme.sigma;
  for (double& sig : out.trace.sigma) sig *= s.original.ktheta;
  out.trace.kappa_t.assign(s.n, s.kappa);
  out.trace.chi = chi;
  out.trace.mi_increments.reserve(s.n);
  out.trace.mi_increments.push_back(0.5 * std::log1p(q));
  for (std::size_t t = 2; t <= s.n; ++t) {
    const double f = 1.0 + ac / chi[t - 2];
    out.trace.mi_increments.push_back(0.5 * std::log1p(f * f * q));
  }

  double total = 0.0;
  for (double inc : out.trace.mi_increments) total += inc;
  out.total_mi = total;
  out.rate = total / static_cast<double>(s.n);
  out.converged = true;
  return out;
}

GainSequence recover_gains_from_chi(const std::vector<double>& chi,
                                    const ChannelParams& params_in) {
  SolverSetup s = solver_setup(params_in, "recover_gains_from_chi");
  if (chi.size() + 1 != s.n)
    throw std::invalid_argument("recover_gains_from_chi: need exactly n-1 ratios chi_2..chi_n");
  for (std::size_t i = 0; i < chi.size(); ++i)
    if (!(chi[i] > 0.0) || !std::isfinite(chi[i]))
      throw std::invalid_argument("recover_gains_from_chi: chi[" + std::to_string(i) +
                                  "] must be finite and > 0");

  RecoveredScheme scheme = recover_internal(chi, s.kappa, s.kw, s.c, s.n, "recover_gains_from_chi");
  GainSequence out{std::move(scheme.g)};
  for (double& g : out.g) g /= s.gain_scale;
  return out;
}

RateResult solve_p2(const ChannelParams& params_in, const OptimizerConfig& cfg) {
  SolverSetup s = solver_setup(params_in, "solve_p2");
  if (s.kappa == 0.0) {
    RateResult out = zero_power_result(s, ProblemKind::P2);
    out.branch = "exhaustive";
    return out;
  }

  const std::size_t bits = s.n - 1;
  const bool run_exhaustive = !cfg.p2_continuous_only;
  if (run_exhaustive && (s.n > cfg.sign_search_limit || bits > 40))
    throw std::invalid_argument(
        "solve_p2: n = " + std::to_string(s.n) + " exceeds sign_search_limit = " +
        std::to_string(cfg.sign_search_limit) +
        "; exhaustive sign enumeration is infeasible, rerun with the continuous branch only");

  double exhaustive_value = kNegInf;
  std::vector<int> exhaustive_signs;
  if (run_exhaustive) {
    for (std::uint64_t mask = 0; mask < (1ull << bits); ++mask) {
      const std::vector<int> signs = signs_from_mask(mask, bits);
      const double v = pointwise_pattern_value(signs, s.kappa, s.kw, s.c, s.n, nullptr);
      if (v > exhaustive_value) {
        exhaustive_value = v;
        exhaustive_signs = signs;
      }
    }
  }

  // Continuous corroboration: penalized simplex descent over g_2..g_n from a
  // spread of sign patterns, each final point projected back onto the
  // pointwise-feasible set (magnitudes pinned, signs kept).  Restarts below
  // the pattern count start exactly on their pattern's feasible point, so
  // full coverage reproduces the exhaustive scan even if every descent
  // wanders; extra restarts explore random patterns with jittered magnitudes.
  const double g1 = std::sqrt(s.kappa);
  const double weight = 1e6 / (s.kappa * s.kappa + 1e-12);

  auto penalized = [&](const std::vector<double>& x) -> double {
    double sigma = s.kw / (s.kappa + s.kw);
    double mi = 0.5 * std::log1p(s.kappa / s.kw);
    double pen = 0.0;
    double g_prev = g1;
    for (std::size_t t = 2; t <= s.n; ++t) {
      const double g = x[t - 2];
      const double a = g - s.c * g_prev;
      mi += 0.5 * std::log1p(a * a * sigma / s.kw);
      const double kap = g * g * sigma;
      pen += (kap - s.kappa) * (kap - s.kappa);
      sigma = s.kw * sigma / (a * a * sigma + s.kw);
      g_prev = g;
    }
    return -(mi / static_cast<double>(s.n)) + weight * pen;
  };

  double continuous_value = kNegInf;
  std::vector<int> continuous_signs;
  bool continuous_converged = false;
  if (s.n == 1) {
    continuous_value = 0.5 * std::log1p(s.kappa / s.kw);
    continuous_converged = true;
  } else {
    // Always include the alternating pattern that opposes the noise
    // correlation; past the enumeration limit the restarts alone can miss it.
    {
      std::vector<int> alt(bits);
      const int flip = s.c > 0.0 ? -1 : 1;
      int cur = flip;
      for (std::size_t i = 0; i < bits; ++i, cur *= flip) alt[i] = cur;
      continuous_value = pointwise_pattern_value(alt, s.kappa, s.kw, s.c, s.n, nullptr);
      continuous_signs = std::move(alt);
      continuous_converged = true;
    }
    const std::uint64_t covered = bits <= 40 ? (1ull << bits) : 0;
    for (std::size_t r = 0; r < std::max<std::size_t>(cfg.restarts, 1); ++r) {
      std::vector<int> signs;
      std::vector<double> x0;
      if (covered != 0 && r < covered) {
        signs = signs_from_mask(r, bits);
        std::vector<double> g;
        pointwise_pattern_value(signs, s.kappa, s.kw, s.c, s.n, &g);
        x0.assign(g.begin() + 1, g.end());
      } else {
        GaussianStream stream(cfg.seed, r);
        signs.resize(bits);
        for (int& sg : signs) sg = stream.uniform() < 0.5 ? 1 : -1;
        std::vector<double> g;
        pointwise_pattern_value(signs, s.kappa, s.kw, s.c, s.n, &g);
        x0.resize(bits);
        for (std::size_t i = 0; i < bits; ++i)
          x0[i] = g[i + 1] * std::exp(0.3 * (stream.uniform() - 0.5));
      }

      // The projection of the start point is itself a visited candidate.
      const double init_value = pointwise_pattern_value(signs, s.kappa, s.kw, s.c, s.n, nullptr);
      if (init_value > continuous_value) {
        continuous_value = init_value;
        continuous_signs = signs;
        continuous_converged = true;
      }

      const NelderMeadResult nm = nelder_mead_minimize(penalized, x0, 0.2, cfg.tol, cfg.max_iter);
      std::vector<int> final_signs(bits);
      for (std::size_t i = 0; i < bits; ++i) final_signs[i] = nm.x[i] < 0.0 ? -1 : 1;
      const double v = pointwise_pattern_value(final_signs, s.kappa, s.kw, s.c, s.n, nullptr);
      if (v > continuous_value) {
        continuous_value = v;
        continuous_signs = final_signs;
        continuous_converged = nm.converged;
      }
    }
  }

  const bool exhaustive_wins = run_exhaustive && exhaustive_value >= continuous_value;
  const std::vector<int>& winner_signs = exhaustive_wins ? exhaustive_signs : continuous_signs;
  std::vector<double> gains;
  if (s.n == 1)
    gains.assign(1, g1);
  else
    pointwise_pattern_value(winner_signs, s.kappa, s.kw, s.c, s.n, &gains);

  RateResult out = finish_result(s, GainSequence{gains}, ProblemKind::P2);
  out.branch = exhaustive_wins ? "exhaustive" : "continuous";
  out.converged = run_exhaustive ? true : continuous_converged;
  return out;
}

RateResult solve_p1(const ChannelParams& params, const OptimizerConfig& cfg) {
  return solve_total_average(params, cfg, SignMode::Free, ProblemKind::P1, "solve_p1");
}

RateResult solve_b1(const ChannelParams& params, const OptimizerConfig& cfg) {
  return solve_total_average(params, cfg, SignMode::Alternating, ProblemKind::B1, "solve_b1");
}

}  // namespace agnlab
