#include "gaussian_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace agnlab::testing {

namespace {

// Cholesky factor of a dense symmetric positive definite matrix (row-major).
std::vector<double> cholesky_lower(std::vector<double> a, std::size_t n) {
  std::vector<double> l(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
      if (i == j) {
        if (s <= 0.0) throw std::runtime_error("oracle: matrix not positive definite");
        l[i * n + i] = std::sqrt(s);
      } else {
        l[i * n + j] = s / l[j * n + j];
      }
    }
  }
  return l;
}

// Solve A x = b with A given by its Cholesky factor.
std::vector<double> cholesky_solve(const std::vector<double>& l, std::size_t n,
                                   std::vector<double> b) {
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l[i * n + k] * b[k];
    b[i] = s / l[i * n + i];
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= l[k * n + ii] * b[k];
    b[ii] = s / l[ii * n + ii];
  }
  return b;
}

double log_det_from_cholesky(const std::vector<double>& l, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::log(l[i * n + i]);
  return 2.0 * s;
}

}  // namespace

double GaussianOracle::covariance(const std::vector<double>& a,
                                  const std::vector<double>& b) const {
  double s = 0.0;
  for (std::size_t k = 0; k < basis_var.size(); ++k) s += a[k] * b[k] * basis_var[k];
  return s;
}

GaussianOracle gaussian_oracle(const ChannelParams& params, const GainSequence& gains) {
  const std::size_t n = params.n;
  const std::size_t dim = n + 1;  // (Theta, U_1..U_n)

  GaussianOracle o;
  o.basis_var.assign(dim, 0.0);
  o.basis_var[0] = params.ktheta;
  o.basis_var[1] = params.state == StateKind::KnownInitialState ? params.kw[0] : params.kv1;
  for (std::size_t t = 2; t <= n; ++t) o.basis_var[t] = params.kw[t - 1];

  o.v.assign(n, std::vector<double>(dim, 0.0));
  o.v[0][1] = 1.0;  // V_1 = U_1 in both variants (V_0 = 0 when known)
  for (std::size_t t = 2; t <= n; ++t) {
    for (std::size_t k = 0; k < dim; ++k) o.v[t - 1][k] = params.c[t - 1] * o.v[t - 2][k];
    o.v[t - 1][t] += 1.0;
  }

  o.y.assign(n, std::vector<double>(dim, 0.0));
  o.thetahat.assign(n, std::vector<double>(dim, 0.0));
  o.sigma.assign(n + 1, 0.0);
  o.sigma[0] = params.ktheta;

  std::vector<double> prev_estimate(dim, 0.0);  // E{Theta | Y^0} = 0
  std::vector<double> gram;                     // Cov(Y^t) grows as t does
  for (std::size_t t = 1; t <= n; ++t) {
    // Y_t = g_t (Theta - prev_estimate) + V_t
    for (std::size_t k = 0; k < dim; ++k)
      o.y[t - 1][k] = -gains.g[t - 1] * prev_estimate[k] + o.v[t - 1][k];
    o.y[t - 1][0] += gains.g[t - 1];

    // extend the Gram matrix of the observations
    std::vector<double> grown(t * t, 0.0);
    for (std::size_t i = 0; i + 1 < t; ++i)
      for (std::size_t j = 0; j + 1 < t; ++j) grown[i * t + j] = gram[i * (t - 1) + j];
    for (std::size_t i = 0; i < t; ++i) {
      const double cv = o.covariance(o.y[i], o.y[t - 1]);
      grown[i * t + (t - 1)] = cv;
      grown[(t - 1) * t + i] = cv;
    }
    gram = std::move(grown);

    std::vector<double> rhs(t);
    std::vector<double> theta(dim, 0.0);
    theta[0] = 1.0;
    for (std::size_t i = 0; i < t; ++i) rhs[i] = o.covariance(theta, o.y[i]);

    const std::vector<double> l = cholesky_lower(gram, t);
    const std::vector<double> w = cholesky_solve(l, t, rhs);

    for (std::size_t k = 0; k < dim; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < t; ++i) s += w[i] * o.y[i][k];
      o.thetahat[t - 1][k] = s;
    }
    double explained = 0.0;
    for (std::size_t i = 0; i < t; ++i) explained += w[i] * rhs[i];
    o.sigma[t] = params.ktheta - explained;
    prev_estimate = o.thetahat[t - 1];
  }

  // I(Theta; Y^n) = (1/2) [log det Cov(Y^n) - log det Cov(V^n)]
  std::vector<double> cov_v(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cov_v[i * n + j] = o.covariance(o.v[i], o.v[j]);
  const double logdet_y = log_det_from_cholesky(cholesky_lower(gram, n), n);
  const double logdet_v = log_det_from_cholesky(cholesky_lower(cov_v, n), n);
  o.total_mi = 0.5 * (logdet_y - logdet_v);
  return o;
}

double quartic_root_by_scan(double kappa, double kw, double c) {
  const double q = kappa / kw;
  const double ac = std::fabs(c);
  auto f = [&](double x) { return x * x * x * x - x * x - q * (x + ac) * (x + ac); };

  if (q == 0.0) return 1.0;

  double hi = 2.0 + std::sqrt(q) + ac;
  while (f(hi) < 0.0) hi *= 2.0;

  const double step = 1e-6 * (hi - 1.0);
  double lo = 1.0;
  double x = 1.0;
  bool found = false;
  for (; x + step <= hi; x += step) {
    if (f(x) <= 0.0 && f(x + step) > 0.0) {
      lo = x;
      hi = x + step;
      found = true;
      break;
    }
  }
  if (!found) throw std::runtime_error("oracle: quartic sign change not located");

  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) <= 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

int quartic_sign_changes(double kappa, double kw, double c, double lo, double hi,
                         double step) {
  const double q = kappa / kw;
  const double ac = std::fabs(c);
  auto f = [&](double x) { return x * x * x * x - x * x - q * (x + ac) * (x + ac); };
  int changes = 0;
  double prev = f(lo);
  for (double x = lo + step; x <= hi; x += step) {
    const double cur = f(x);
    if ((prev < 0.0 && cur >= 0.0) || (prev > 0.0 && cur <= 0.0)) ++changes;
    if (cur != 0.0) prev = cur;
  }
  return changes;
}

}  // namespace agnlab::testing
