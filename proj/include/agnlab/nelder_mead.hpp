#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace agnlab {

// Plain Nelder-Mead downhill simplex with the classic coefficients
// (reflection 1, expansion 2, contraction 1/2, shrink 1/2).  Deterministic:
// the result depends only on f, start, and step.  Convergence is declared
// when the simplex function values have collapsed to within tol of each
// other; otherwise the best vertex found so far is returned with
// converged = false.  The best vertex is never discarded, so the returned
// value is always <= f(start).
struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

NelderMeadResult nelder_mead_minimize(const std::function<double(const std::vector<double>&)>& f,
                                      std::vector<double> start, double step, double tol,
                                      std::size_t max_evals);

}  // namespace agnlab
