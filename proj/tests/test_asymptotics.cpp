#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "agnlab/asymptotics.hpp"
#include "agnlab/optimizer.hpp"
#include "gaussian_oracle.hpp"

using namespace agnlab;
using namespace agnlab::testing;

TEST_CASE("memoryless limit is the one-shot ratio") {
  // With c = 0 the quartic factors: chi^2 = 1 + kappa/kw exactly.
  for (double kappa : {0.1, 0.5, 1.0, 4.0, 10.0}) {
    for (double kw : {0.5, 1.0, 2.0}) {
      const AsymptoteResult res = solve_asymptote(kappa, kw, 0.0);
      CHECK(res.chi * res.chi == doctest::Approx(1.0 + kappa / kw).epsilon(1e-13));
      CHECK(res.rate == doctest::Approx(0.5 * std::log1p(kappa / kw)).epsilon(1e-13));
    }
  }
}

TEST_CASE("zero power pins the ratio at one") {
  const AsymptoteResult res = solve_asymptote(0.0, 1.0, 0.7);
  CHECK(res.chi == 1.0);
  CHECK(res.rate == 0.0);
  CHECK(res.residual == 0.0);
}

TEST_CASE("reference operating point") {
  // kappa = kw = 1, c = 0.5; root located independently by dense scan.
  const AsymptoteResult res = solve_asymptote(1.0, 1.0, 0.5);
  CHECK(res.chi == doctest::Approx(1.6434789011345703).epsilon(1e-12));
  CHECK(res.rate == doctest::Approx(0.49681527627555233).epsilon(1e-12));
  CHECK(res.residual < 1e-10);

  const double scanned = quartic_root_by_scan(1.0, 1.0, 0.5);
  CHECK(std::fabs(res.chi - scanned) < 1e-9);
}

TEST_CASE("the root beyond one is unique") {
  for (double c : {0.0, 0.3, 0.9, 1.5}) {
    for (double q : {0.2, 1.0, 5.0}) {
      const AsymptoteResult res = solve_asymptote(q, 1.0, c);
      const double hi = 2.0 * res.chi + 5.0;
      CHECK(quartic_sign_changes(q, 1.0, c, 1.0, hi, 1e-4) == 1);
    }
  }
}

TEST_CASE("solver tracks the root across a parameter grid") {
  for (double kappa : {0.1, 0.5, 1.0, 5.0, 10.0}) {
    for (double kw : {0.5, 1.0, 2.0}) {
      for (double c : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const AsymptoteResult res = solve_asymptote(kappa, kw, c);
        CHECK(res.chi >= 1.0);
        CHECK(res.residual < 1e-10);
        const double scanned = quartic_root_by_scan(kappa, kw, c);
        CHECK(std::fabs(res.chi - scanned) < 1e-8);
      }
    }
  }
}

TEST_CASE("rate grows with power and with memory") {
  double prev = -1.0;
  for (double kappa : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const double rate = solve_asymptote(kappa, 1.0, 0.5).rate;
    CHECK(rate > prev);
    prev = rate;
  }
  prev = -1.0;
  for (double c : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
    const double rate = solve_asymptote(1.0, 1.0, c).rate;
    CHECK(rate > prev);
    prev = rate;
  }
  // Only |c| matters.
  CHECK(solve_asymptote(1.0, 1.0, -0.5).chi == solve_asymptote(1.0, 1.0, 0.5).chi);
}

TEST_CASE("fixed-point iteration reproduces hand values and hits the root") {
  const FixedPointResult fp = chi_fixed_point_iteration(1.0, 1.0, 0.5, 200, 1e-12);
  REQUIRE(fp.chi.size() >= 2);
  CHECK(fp.chi[0] == 2.0);
  CHECK(fp.chi[1] == doctest::Approx(std::sqrt(2.5625)).epsilon(1e-15));
  CHECK(fp.converged);
  CHECK(fp.matches_quartic);
  CHECK(fp.quartic_gap <= 1e-12);
  CHECK(fp.limit == doctest::Approx(1.6434789011345703).epsilon(1e-11));
}

TEST_CASE("memoryless fixed point settles in one update") {
  const FixedPointResult fp = chi_fixed_point_iteration(1.0, 1.0, 0.0, 200, 1e-12);
  // Seed 2, then sqrt(2) forever: the third entry repeats the second exactly.
  REQUIRE(fp.chi.size() == 3);
  CHECK(fp.chi[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(fp.chi[2] == fp.chi[1]);
  CHECK(fp.converged);
}

TEST_CASE("fixed point without enough iterations reports failure") {
  const FixedPointResult fp = chi_fixed_point_iteration(1.0, 1.0, 0.5, 3, 1e-14);
  CHECK(!fp.converged);
  CHECK(fp.chi.size() == 3);
}

TEST_CASE("tail ratio test classifies growth") {
  SUBCASE("geometric growth diverges") {
    std::vector<double> g;
    for (int t = 0; t < 12; ++t) g.push_back(std::pow(2.0, t));
    const RatioTestResult res = ratio_test_verdict(GainSequence{g});
    CHECK(res.verdict == RatioVerdict::DivergesToInfinity);
    CHECK(res.limit_estimate == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(ratio_verdict_name(res.verdict) == "diverges_to_infinity");
  }
  SUBCASE("geometric decay converges to zero") {
    std::vector<double> g;
    for (int t = 0; t < 12; ++t) g.push_back(std::pow(0.5, t));
    CHECK(ratio_test_verdict(GainSequence{g}).verdict == RatioVerdict::ConvergesToZero);
  }
  SUBCASE("constant magnitudes are inconclusive") {
    std::vector<double> g(12, 1.0);
    const RatioTestResult res = ratio_test_verdict(GainSequence{g});
    CHECK(res.verdict == RatioVerdict::Inconclusive);
    CHECK(res.limit_estimate == doctest::Approx(1.0));
  }
  SUBCASE("window override is honored") {
    std::vector<double> g{1.0, 100.0, 2.0, 4.0, 8.0};
    const RatioTestResult res = ratio_test_verdict(GainSequence{g}, 2);
    CHECK(res.window == 2);
    CHECK(res.limit_estimate == doctest::Approx(2.0));
  }
  SUBCASE("too few live gains") {
    CHECK_THROWS_AS(ratio_test_verdict(GainSequence{{1.0, 0.0, 2.0, 0.0}}),
                    std::invalid_argument);
  }
  SUBCASE("zero inside the tail window") {
    std::vector<double> g{1.0, 2.0, 4.0, 0.0, 8.0};
    CHECK_THROWS_AS(ratio_test_verdict(GainSequence{g}), std::domain_error);
  }
}

TEST_CASE("optimized gain schedule drifts toward the fixed ratio") {
  const ChannelParams p = ChannelParams::constant(50, 0.5, 1.0, 1.0, 1.0, 1.0,
                                                  ConstraintKind::PointwisePerSymbol,
                                                  StateKind::KnownInitialState);
  const RateResult b2 = solve_b2(p);
  const RatioTestResult res = ratio_test_verdict(b2.gains);
  CHECK(res.verdict == RatioVerdict::DivergesToInfinity);
  CHECK(std::fabs(res.limit_estimate - 1.6434789011345703) <= 1e-3);
}
