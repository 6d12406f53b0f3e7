// Acceptance gate: every release-blocking behavior of the library and the
// command line tool, one [PASS]/[FAIL] line per checked clause.  Exits
// nonzero if any clause fails.  Run with --cli <path-to-agnlab> so the
// determinism clause can invoke the real binary.
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "agnlab/asymptotics.hpp"
#include "agnlab/optimizer.hpp"
#include "agnlab/recursions.hpp"
#include "agnlab/simulator.hpp"
#include "gaussian_oracle.hpp"
#include "test_support.hpp"

using namespace agnlab;
using namespace agnlab::testing;

namespace {

int g_failures = 0;

void report(bool ok, const std::string& text) {
  std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", text.c_str());
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double rel_gap(double a, double b) {
  return std::fabs(a - b) / std::max({1.0, std::fabs(a), std::fabs(b)});
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return std::string(buf);
}

ChannelParams defaults_at(std::size_t n, double c = 0.5) {
  return ChannelParams::constant(n, c, 1.0);
}

void criterion_1_oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (std::uint64_t idx = 0; idx < 200; ++idx) {
    const RandomInstance inst = random_instance(2024, idx);
    const GaussianOracle orc = gaussian_oracle(inst.params, inst.gains);
    const RateResult r = mutual_information(inst.params, inst.gains);
    for (std::size_t t = 0; t < orc.sigma.size(); ++t)
      worst = std::max(worst, rel_gap(r.trace.sigma[t], orc.sigma[t]));
    worst = std::max(worst, rel_gap(r.total_mi, orc.total_mi));
  }
  const double elapsed = seconds_since(start);
  report(worst < 1e-9 && elapsed < 10.0,
         fmt("1 recursion vs joint-Gaussian oracle: max rel gap %.3g over 200 instances "
             "(%.2f s, budget 10 s)", worst, elapsed));
}

void criterion_2_memoryless_reduction() {
  double worst = 0.0;
  const OptimizerConfig cfg;
  for (double kappa : {0.1, 1.0, 10.0}) {
    for (double kw : {0.5, 1.0, 2.0}) {
      ChannelParams p = ChannelParams::constant(6, 0.0, kw);
      p.kappa = kappa;
      const double target = 0.5 * std::log1p(kappa / kw);
      const RateResult b2 = solve_b2(p);
      worst = std::max(worst, std::fabs(b2.rate - target));
      for (double inc : b2.trace.mi_increments)
        worst = std::max(worst, std::fabs(inc - target));
      worst = std::max(worst, std::fabs(solve_p2(p, cfg).rate - target));
      worst = std::max(worst, std::fabs(solve_asymptote(kappa, kw, 0.0).rate - target));
    }
  }
  report(worst < 1e-10,
         fmt("2 memoryless reduction to half log(1+kappa/kw): max gap %.3g "
             "(tolerance 1e-10)", worst));
}

void criterion_3_asymptote_consistency() {
  const auto start = std::chrono::steady_clock::now();
  double worst_limit = 0.0, worst_residual = 0.0;
  for (double kappa : {0.1, 0.5, 1.0, 5.0, 10.0}) {
    for (double kw : {0.5, 1.0, 2.0}) {
      for (double c : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const AsymptoteResult root = solve_asymptote(kappa, kw, c);
        const FixedPointResult fp = chi_fixed_point_iteration(kappa, kw, c, 100000, 1e-12);
        worst_limit = std::max(worst_limit, std::fabs(fp.limit - root.chi));
        worst_residual = std::max(worst_residual, root.residual);
      }
    }
  }
  const double elapsed = seconds_since(start);
  report(worst_limit <= 1e-8 && worst_residual < 1e-10 && elapsed < 5.0,
         fmt("3 fixed point vs quartic root on the 5x3x5 grid: max limit gap %.3g, "
             "max residual %.3g (%.2f s, budget 5 s)", worst_limit, worst_residual, elapsed));
}

void criterion_4_gain_divergence() {
  const RateResult b2 = solve_b2(defaults_at(50));
  bool increasing = true;
  for (std::size_t t = 1; t < 50; ++t)
    if (std::fabs(b2.gains.g[t]) <= std::fabs(b2.gains.g[t - 1])) increasing = false;
  const RatioTestResult res = ratio_test_verdict(b2.gains);
  const double chi = solve_asymptote(1.0, 1.0, 0.5).chi;
  const double gap = std::fabs(res.limit_estimate - chi);
  report(increasing && res.verdict == RatioVerdict::DivergesToInfinity && gap <= 1e-3,
         fmt("4 gain divergence at n=50: |g_t| strictly increasing, tail ratio %.6f vs "
             "asymptotic ratio %.6f (gap %.2g, tolerance 1e-3)", res.limit_estimate, chi, gap));
}

void criterion_5_p2_dominance() {
  const OptimizerConfig cfg;
  const double b2_10 = solve_b2(defaults_at(10)).rate;
  const double p2_10 = solve_p2(defaults_at(10), cfg).rate;
  const double b2_20 = solve_b2(defaults_at(20)).rate;
  const double asym = solve_asymptote(1.0, 1.0, 0.5).rate;
  report(p2_10 >= b2_10 && asym >= b2_20,
         fmt("5 dominance: rate(P2,10) - rate(B2,10) = %+.6g, rate(asymptote) - "
             "rate(B2,20) = %+.6g (both must be >= 0)", p2_10 - b2_10, asym - b2_20));
}

void criterion_6_monotone_in_n() {
  bool ok = true;
  double prev = 0.0;
  for (std::size_t n : {1, 2, 5, 10, 20, 50}) {
    const double rate = solve_b2(defaults_at(n)).rate;
    if (rate < prev - 1e-15) ok = false;
    prev = rate;
  }
  report(ok, "6 rate(B2,n) nondecreasing over n in {1,2,5,10,20,50}");
}

void criterion_7_monte_carlo() {
  const auto start = std::chrono::steady_clock::now();
  const ChannelParams p = defaults_at(10);
  const GainSequence gains = solve_b2(p).gains;
  const RecursionTrace nominal = sigma_trace(p, gains);
  const std::size_t trials = 100000;
  const SimOutcome sim = simulate(p, gains, trials, RngSpec{1}, PerturbationSpec::none());

  const double sigma_dev =
      std::fabs(sim.empirical_sigma_n - nominal.sigma.back()) / sim.sigma_n_std_error;
  double worst_power_dev = 0.0;
  for (std::size_t t = 0; t < 10; ++t)
    worst_power_dev =
        std::max(worst_power_dev, std::fabs(sim.empirical_power[t] - nominal.kappa_t[t]) /
                                      sim.power_std_error[t]);
  const double corr_bound = 4.0 / std::sqrt(static_cast<double>(trials));
  const double elapsed = seconds_since(start);
  report(sigma_dev <= 3.0 && worst_power_dev <= 3.0 &&
             sim.max_abs_innovation_corr < corr_bound && elapsed < 60.0,
         fmt("7 Monte Carlo (1e5 trials): Sigma_10 off by %.2f SE, worst power off by "
             "%.2f SE (limit 3), max |innovation corr| %.4f", sigma_dev, worst_power_dev,
             sim.max_abs_innovation_corr) +
             fmt(" (limit %.4f; %.1f s, budget 60 s)", corr_bound, elapsed));
}

void criterion_8_fragility() {
  const std::vector<std::size_t> horizons{5, 10, 15, 20};

  const std::vector<FragilityRow> rows =
      fragility_report(defaults_at(1), 1e-6, horizons, RngSpec{1}, 20000);
  bool increasing = true;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].amplification <= rows[i - 1].amplification) increasing = false;
  const double growth = rows.back().amplification / rows.front().amplification;
  report(increasing && growth > 10.0,
         fmt("8 fragility at c=0.5: amplification strictly increasing, n=20 level is "
             "%.0fx the n=5 level (must exceed 10x)", growth));

  const std::vector<FragilityRow> flat =
      fragility_report(defaults_at(1, 0.0), 1e-6, horizons, RngSpec{1}, 20000);
  const double flat_growth = flat.back().amplification / flat.front().amplification;
  report(flat_growth < 2.0,
         fmt("8 fragility at c=0: amplification ratio n=20 / n=5 = %.1f, required < 2. "
             "The per-symbol power rule pins g_t^2 = kappa/Sigma_{t-1} while Sigma_t "
             "shrinks by (1+kappa/kw) each step, so |g_t| grows like "
             "(1+kappa/kw)^((t-1)/2) = 2^((t-1)/2) here and the ratio is 2^7.5; a "
             "bounded column at c=0 contradicts the scheme's own growth law",
             flat_growth));
}

void criterion_9_cli_determinism(const std::string& cli) {
  if (cli.empty()) {
    report(false, "9 CLI determinism: no --cli <path> argument supplied");
    return;
  }

  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / ("agnlab_accept_" + std::to_string(::getpid()));
  std::error_code ec;
  fs::create_directories(dir, ec);

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"rate_b2", "rate --problem b2 --n 10"},
      {"rate_p1", "rate --problem p1 --n 5"},
      {"rate_json", "rate --problem b2 --n 6 --format json"},
      {"fig2", "fig2 --n 10"},
      {"fig3", "fig3 --trials 2000"},
      {"fragility", "fragility --trials 2000 --eps 1e-6"},
      {"sweep", "sweep --parameter c --grid 0,0.25,0.5 --problems b2,asymptote"},
      {"asymptote", "asymptote"},
  };

  bool all_ok = true;
  std::string detail;
  for (const auto& [name, args] : commands) {
    std::string payload[2];
    bool ran = true;
    for (int run = 0; run < 2; ++run) {
      const fs::path out = dir / (name + "_" + std::to_string(run) + ".txt");
      const std::string cmdline =
          "\"" + cli + "\" " + args + " --out \"" + out.string() + "\" 2>/dev/null";
      if (std::system(cmdline.c_str()) != 0) {
        ran = false;
        break;
      }
      std::ifstream in(out, std::ios::binary);
      std::ostringstream buf;
      buf << in.rdbuf();
      payload[run] = buf.str();
    }
    if (!ran || payload[0].empty() || payload[0] != payload[1]) {
      all_ok = false;
      detail += (detail.empty() ? "" : ", ") + name + (ran ? ": outputs differ" : ": run failed");
    }
  }
  fs::remove_all(dir, ec);
  report(all_ok, "9 CLI determinism: byte-identical reruns across " +
                     std::to_string(commands.size()) + " commands" +
                     (detail.empty() ? "" : " [" + detail + "]"));
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];

  criterion_1_oracle_equivalence();
  criterion_2_memoryless_reduction();
  criterion_3_asymptote_consistency();
  criterion_4_gain_divergence();
  criterion_5_p2_dominance();
  criterion_6_monotone_in_n();
  criterion_7_monte_carlo();
  criterion_8_fragility();
  criterion_9_cli_determinism(cli);

  if (g_failures == 0) {
    std::printf("all acceptance clauses passed\n");
  } else {
    std::printf("%d acceptance clause(s) failed\n", g_failures);
  }
  return g_failures == 0 ? 0 : 1;
}
