#include "agnlab/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace agnlab {

namespace {

double quartic(double x, double q, double ac) {
  const double s = x + ac;
  return x * x * (x * x - 1.0) - q * s * s;
}

double quartic_deriv(double x, double q, double ac) {
  return 4.0 * x * x * x - 2.0 * x - 2.0 * q * (x + ac);
}

}  // namespace

AsymptoteResult solve_asymptote(double kappa, double kw, double c) {
  if (!(kw > 0.0)) throw std::invalid_argument("solve_asymptote: kw must be > 0");
  if (!(kappa >= 0.0)) throw std::invalid_argument("solve_asymptote: kappa must be >= 0");
  if (!std::isfinite(c)) throw std::invalid_argument("solve_asymptote: c must be finite");

  const double q = kappa / kw;
  const double ac = std::fabs(c);

  AsymptoteResult res;
  if (q == 0.0) {
    res.chi = 1.0;
    res.rate = 0.0;
    res.residual = 0.0;
    return res;
  }

  // quartic(1) = -q (1 + ac)^2 < 0 and the polynomial is eventually positive,
  // so a sign change exists to the right of 1.  Expand the upper end
  // geometrically until it brackets.
  double lo = 1.0;
  double hi = 1.0 + std::sqrt(q) + ac + 1.0;
  std::size_t iters = 0;
  while (quartic(hi, q, ac) < 0.0) {
    hi = 1.0 + 2.0 * (hi - 1.0);
    if (++iters > 200)
      throw std::runtime_error("solve_asymptote: failed to bracket the root");
  }

  for (int i = 0; i < 200 && (hi - lo) > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (quartic(mid, q, ac) < 0.0)
      lo = mid;
    else
      hi = mid;
    ++iters;
  }

  // A few Newton steps sharpen the bisection result to machine precision.
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 4; ++i) {
    const double d = quartic_deriv(x, q, ac);
    if (d == 0.0) break;
    const double step = quartic(x, q, ac) / d;
    x -= step;
    ++iters;
    if (std::fabs(step) < 1e-16 * x) break;
  }

  res.chi = x;
  res.rate = std::log(x);
  res.iterations = iters;
  res.residual = std::fabs(quartic(x, q, ac));
  return res;
}

FixedPointResult chi_fixed_point_iteration(double kappa, double kw, double c,
                                           std::size_t n_max, double tol) {
  if (!(kw > 0.0))
    throw std::invalid_argument("chi_fixed_point_iteration: kw must be > 0");
  if (!(kappa >= 0.0))
    throw std::invalid_argument("chi_fixed_point_iteration: kappa must be >= 0");
  if (!(tol > 0.0))
    throw std::invalid_argument("chi_fixed_point_iteration: tol must be > 0");

  const double q = kappa / kw;
  const double ac = std::fabs(c);

  FixedPointResult res;
  res.chi.push_back(1.0 + q);
  while (res.chi.size() < n_max) {
    const double prev = res.chi.back();
    const double f = 1.0 + ac / prev;
    const double next = std::sqrt(1.0 + f * f * q);
    res.chi.push_back(next);
    ++res.iterations;
    if (std::fabs(next - prev) < tol) {
      res.converged = true;
      break;
    }
  }
  res.limit = res.chi.back();

  const AsymptoteResult root = solve_asymptote(kappa, kw, c);
  res.quartic_gap = std::fabs(res.limit - root.chi);
  res.matches_quartic = res.quartic_gap <= tol;
  return res;
}

RatioTestResult ratio_test_verdict(const GainSequence& gains, std::size_t window,
                                   double margin) {
  const std::size_t n = gains.g.size();
  std::size_t nonzero = 0;
  for (double g : gains.g)
    if (g != 0.0) ++nonzero;
  if (nonzero < 3)
    throw std::invalid_argument("ratio_test_verdict: need at least 3 nonzero gains");
  if (!(margin >= 0.0))
    throw std::invalid_argument("ratio_test_verdict: margin must be >= 0");

  if (window == 0) window = std::min<std::size_t>(10, n - 1);
  if (window > n - 1) window = n - 1;

  double sum = 0.0;
  for (std::size_t t = n - window + 1; t <= n; ++t) {
    const double prev = gains.g[t - 2];
    if (prev == 0.0 || gains.g[t - 1] == 0.0)
      throw std::domain_error("ratio_test_verdict: zero gain at index " +
                              std::to_string(prev == 0.0 ? t - 1 : t) +
                              " inside the tail window");
    sum += std::fabs(gains.g[t - 1] / prev);
  }

  RatioTestResult res;
  res.window = window;
  res.limit_estimate = sum / static_cast<double>(window);
  if (res.limit_estimate > 1.0 + margin)
    res.verdict = RatioVerdict::DivergesToInfinity;
  else if (res.limit_estimate < 1.0 - margin)
    res.verdict = RatioVerdict::ConvergesToZero;
  else
    res.verdict = RatioVerdict::Inconclusive;
  return res;
}

std::string ratio_verdict_name(RatioVerdict v) {
  switch (v) {
    case RatioVerdict::DivergesToInfinity: return "diverges_to_infinity";
    case RatioVerdict::ConvergesToZero: return "converges_to_zero";
    case RatioVerdict::Inconclusive: return "inconclusive";
  }
  throw std::logic_error("ratio_verdict_name: unknown enum value");
}

}  // namespace agnlab
