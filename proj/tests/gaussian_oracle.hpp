#pragma once

#include <vector>

#include "agnlab/model.hpp"

// Brute-force reference model used only by the tests.  Instead of the scalar
// recursions under test, every random variable of one coding session is kept
// as a coefficient vector over the independent Gaussian basis
// Z = (Theta, U_1, ..., U_n), where U_1 is the first noise sample (variance
// kv1, or kw_1 when the initial state is known) and U_t = W_t for t >= 2.
// Conditional expectations then come from explicit covariance solves and
// information from determinant ratios, with no shared code with the library.
namespace agnlab::testing {

struct GaussianOracle {
  std::vector<double> basis_var;               // variances of (Theta, U_1..U_n)
  std::vector<std::vector<double>> y;          // y[t-1]: coefficients of Y_t
  std::vector<std::vector<double>> v;          // v[t-1]: coefficients of V_t
  std::vector<std::vector<double>> thetahat;   // thetahat[t-1]: E{Theta | Y^t}
  std::vector<double> sigma;                   // Sigma_0..Sigma_n
  double total_mi = 0.0;                       // (1/2) log det Cov(Y^n) / det Cov(V^n)

  double covariance(const std::vector<double>& a, const std::vector<double>& b) const;
};

GaussianOracle gaussian_oracle(const ChannelParams& params, const GainSequence& gains);

// Root of x^4 - x^2 - (kappa/kw)(x + |c|)^2 located by a dense scan over
// [1, hi] followed by plain bisection; independent of the solver under test.
double quartic_root_by_scan(double kappa, double kw, double c);

// Number of sign changes of the quartic on a dense grid over [lo, hi].
int quartic_sign_changes(double kappa, double kw, double c, double lo, double hi,
                         double step);

}  // namespace agnlab::testing
