#include "agnlab/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace agnlab {

NelderMeadResult nelder_mead_minimize(const std::function<double(const std::vector<double>&)>& f,
                                      std::vector<double> start, double step, double tol,
                                      std::size_t max_evals) {
  const std::size_t d = start.size();
  if (d == 0) throw std::invalid_argument("nelder_mead_minimize: empty start point");
  if (!(step > 0.0)) throw std::invalid_argument("nelder_mead_minimize: step must be > 0");

  std::vector<std::vector<double>> x(d + 1, start);
  std::vector<double> fx(d + 1);
  std::size_t evals = 0;

  for (std::size_t i = 0; i < d; ++i) {
    const double base = std::fabs(start[i]);
    x[i + 1][i] += step * (base > 1.0 ? base : 1.0);
  }
  for (std::size_t i = 0; i <= d; ++i) {
    fx[i] = f(x[i]);
    ++evals;
  }

  std::vector<std::size_t> order(d + 1);
  std::vector<double> centroid(d), trial(d), trial2(d);

  auto sort_order = [&]() {
    for (std::size_t i = 0; i <= d; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
  };

  NelderMeadResult res;
  while (true) {
    sort_order();
    const std::size_t best = order[0], worst = order[d], second = order[d - 1];

    if (std::fabs(fx[worst] - fx[best]) <= tol * (1.0 + std::fabs(fx[best]))) {
      res.converged = true;
      break;
    }
    if (evals >= max_evals) break;

    for (std::size_t j = 0; j < d; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i <= d; ++i)
        if (i != worst) s += x[i][j];
      centroid[j] = s / static_cast<double>(d);
    }

    for (std::size_t j = 0; j < d; ++j) trial[j] = centroid[j] + (centroid[j] - x[worst][j]);
    const double fr = f(trial);
    ++evals;

    if (fr < fx[best]) {
      for (std::size_t j = 0; j < d; ++j)
        trial2[j] = centroid[j] + 2.0 * (centroid[j] - x[worst][j]);
      const double fe = f(trial2);
      ++evals;
      if (fe < fr) {
        x[worst] = trial2;
        fx[worst] = fe;
      } else {
        x[worst] = trial;
        fx[worst] = fr;
      }
    } else if (fr < fx[second]) {
      x[worst] = trial;
      fx[worst] = fr;
    } else {
      // Contract toward the better of the reflected and worst points.
      const bool outside = fr < fx[worst];
      for (std::size_t j = 0; j < d; ++j)
        trial2[j] = outside ? centroid[j] + 0.5 * (trial[j] - centroid[j])
                            : centroid[j] - 0.5 * (centroid[j] - x[worst][j]);
      const double fc = f(trial2);
      ++evals;
      if (fc < (outside ? fr : fx[worst])) {
        x[worst] = trial2;
        fx[worst] = fc;
      } else {
        // Shrink everything toward the best vertex.
        for (std::size_t i = 0; i <= d; ++i) {
          if (i == best) continue;
          for (std::size_t j = 0; j < d; ++j) x[i][j] = x[best][j] + 0.5 * (x[i][j] - x[best][j]);
          fx[i] = f(x[i]);
          ++evals;
        }
      }
    }
  }

  sort_order();
  res.x = x[order[0]];
  res.value = fx[order[0]];
  res.evaluations = evals;
  return res;
}

}  // namespace agnlab
