#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "agnlab/io.hpp"

namespace {

// Raw flag storage; flags are applied over the config-file layer only when
// they were actually given, so precedence is defaults < file < flags.
struct CommonFlags {
  std::uint64_t n = 0;
  double c = 0, kw = 0, ktheta = 0, kv1 = 0, kappa = 0;
  std::string constraint, state, format, out, config;
  std::uint64_t trials = 0, seed = 0;
  double eps = 0, tol = 0;
  std::uint64_t max_iter = 0, sign_search_limit = 0, restarts = 0;
  bool continuous = false;
};

void add_common_flags(CLI::App* sub, CommonFlags& f) {
  sub->add_option("--n", f.n, "horizon (number of transmissions)");
  sub->add_option("--c", f.c, "AR noise coefficient");
  sub->add_option("--kw", f.kw, "innovation variance K_W");
  sub->add_option("--ktheta", f.ktheta, "message variance");
  sub->add_option("--kv1", f.kv1, "first noise variance (no-initial-state variant)");
  sub->add_option("--kappa", f.kappa, "power budget per transmission");
  sub->add_option("--constraint", f.constraint, "power constraint kind: total | pointwise");
  sub->add_option("--state", f.state, "initial noise state: none | known");
  sub->add_option("--trials", f.trials, "Monte Carlo trials");
  sub->add_option("--seed", f.seed, "random stream seed");
  sub->add_option("--eps", f.eps, "perturbation size");
  sub->add_option("--format", f.format, "output format: csv | json");
  sub->add_option("--out", f.out, "output file (default: stdout)");
  sub->add_option("--config", f.config, "key=value config file (or env AGNLAB_CONFIG)");
  sub->add_option("--tol", f.tol, "optimizer convergence tolerance");
  sub->add_option("--max-iter", f.max_iter, "optimizer evaluations per restart");
  sub->add_option("--sign-search-limit", f.sign_search_limit,
                  "largest n enumerated exhaustively for P2");
  sub->add_option("--restarts", f.restarts, "optimizer restarts");
  sub->add_flag("--continuous", f.continuous, "use only the continuous branch of P2");
}

agnlab::RunConfig build_config(const CLI::App* sub, const CommonFlags& f) {
  agnlab::RunConfig cfg;

  std::string config_path = f.config;
  if (config_path.empty())
    if (const char* env = std::getenv("AGNLAB_CONFIG")) config_path = env;
  if (!config_path.empty()) agnlab::load_config_file(cfg, config_path);

  if (sub->count("--n")) cfg.n = static_cast<std::size_t>(f.n);
  if (sub->count("--c")) cfg.c = f.c;
  if (sub->count("--kw")) cfg.kw = f.kw;
  if (sub->count("--ktheta")) cfg.ktheta = f.ktheta;
  if (sub->count("--kv1")) cfg.kv1 = f.kv1;
  if (sub->count("--kappa")) cfg.kappa = f.kappa;
  if (sub->count("--constraint")) agnlab::apply_key_value(cfg, "constraint", f.constraint);
  if (sub->count("--state")) agnlab::apply_key_value(cfg, "state", f.state);
  if (sub->count("--trials")) cfg.trials = static_cast<std::size_t>(f.trials);
  if (sub->count("--seed")) cfg.seed = f.seed;
  if (sub->count("--eps")) cfg.eps = f.eps;
  if (sub->count("--format")) agnlab::apply_key_value(cfg, "format", f.format);
  if (sub->count("--out")) cfg.out = f.out;
  if (sub->count("--tol")) cfg.tol = f.tol;
  if (sub->count("--max-iter")) cfg.max_iter = static_cast<std::size_t>(f.max_iter);
  if (sub->count("--sign-search-limit"))
    cfg.sign_search_limit = static_cast<std::size_t>(f.sign_search_limit);
  if (sub->count("--restarts")) cfg.restarts = static_cast<std::size_t>(f.restarts);
  if (f.continuous) cfg.p2_continuous_only = true;
  return cfg;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    out.push_back(std::stod(item, &pos));
    if (pos != item.size()) throw std::invalid_argument("cannot parse number '" + item + "'");
  }
  return out;
}

std::vector<std::string> parse_string_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

int emit(const agnlab::CommandResult& res, const agnlab::RunConfig& cfg) {
  if (!res.message.empty()) std::cerr << res.message << "\n";
  if (res.exit_code == 1 && res.output.empty()) return 1;
  if (cfg.out.empty()) {
    std::cout << res.output;
  } else {
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) {
      std::cerr << "cannot open output file " << cfg.out << "\n";
      return 1;
    }
    out << res.output;
  }
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for linear feedback coding over Gaussian channels "
               "with first-order autoregressive noise"};
  app.require_subcommand(1);

  CommonFlags rate_f, fig2_f, fig3_f, frag_f, sweep_f, asym_f;
  std::string rate_problem = "b2";
  std::string frag_nlist, fig3_b2, fig3_p2;
  std::string sweep_parameter, sweep_grid, sweep_problems = "b2,asymptote";

  CLI::App* rate = app.add_subcommand("rate", "solve one rate problem and print its trace");
  add_common_flags(rate, rate_f);
  rate->add_option("--problem", rate_problem, "b1 | b2 | p1 | p2");

  CLI::App* fig2 = app.add_subcommand("fig2", "gain profiles of the fixed-ratio and best "
                                              "pointwise schemes");
  add_common_flags(fig2, fig2_f);

  CLI::App* fig3 = app.add_subcommand("fig3", "rate comparison across schemes and horizons");
  add_common_flags(fig3, fig3_f);
  fig3->add_option("--b2-n", fig3_b2, "comma list of horizons for the fixed-ratio scheme");
  fig3->add_option("--p2-n", fig3_p2, "comma list of horizons for the best pointwise scheme");

  CLI::App* frag = app.add_subcommand("fragility", "perturbation amplification versus horizon");
  add_common_flags(frag, frag_f);
  frag->add_option("--n-list", frag_nlist, "comma list of horizons");

  CLI::App* sweep = app.add_subcommand("sweep", "rate as one parameter varies over a grid");
  add_common_flags(sweep, sweep_f);
  sweep->add_option("--parameter", sweep_parameter, "c | kappa | kw | n")->required();
  sweep->add_option("--grid", sweep_grid, "comma list of grid values")->required();
  sweep->add_option("--problems", sweep_problems,
                    "comma list from b1,b2,p1,p2,asymptote (default b2,asymptote)");

  CLI::App* asym = app.add_subcommand("asymptote", "long-horizon gain ratio and rate");
  add_common_flags(asym, asym_f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (rate->parsed()) {
      const agnlab::RunConfig cfg = build_config(rate, rate_f);
      return emit(agnlab::cmd_rate(cfg, rate_problem), cfg);
    }
    if (fig2->parsed()) {
      const agnlab::RunConfig cfg = build_config(fig2, fig2_f);
      return emit(agnlab::cmd_fig2(cfg), cfg);
    }
    if (fig3->parsed()) {
      agnlab::RunConfig cfg = build_config(fig3, fig3_f);
      if (fig3->count("--b2-n")) agnlab::apply_key_value(cfg, "fig3_b2_n", fig3_b2);
      if (fig3->count("--p2-n")) agnlab::apply_key_value(cfg, "fig3_p2_n", fig3_p2);
      return emit(agnlab::cmd_fig3(cfg), cfg);
    }
    if (frag->parsed()) {
      agnlab::RunConfig cfg = build_config(frag, frag_f);
      if (frag->count("--n-list")) agnlab::apply_key_value(cfg, "fragility_n", frag_nlist);
      return emit(agnlab::cmd_fragility(cfg), cfg);
    }
    if (sweep->parsed()) {
      const agnlab::RunConfig cfg = build_config(sweep, sweep_f);
      return emit(agnlab::cmd_sweep(cfg, sweep_parameter, parse_double_list(sweep_grid),
                                    parse_string_list(sweep_problems)),
                  cfg);
    }
    if (asym->parsed()) {
      const agnlab::RunConfig cfg = build_config(asym, asym_f);
      return emit(agnlab::cmd_asymptote(cfg), cfg);
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
