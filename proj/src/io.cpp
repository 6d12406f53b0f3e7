#include "agnlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "agnlab/asymptotics.hpp"
#include "agnlab/recursions.hpp"
#include "agnlab/simulator.hpp"
#include "json.hpp"

namespace agnlab {

namespace {

constexpr double kLn2 = 0.6931471805599453094;

double parse_double(const std::string& s, const std::string& key) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: cannot parse value '" + s + "' for key " + key);
  }
  if (pos != s.size())
    throw std::invalid_argument("config: trailing junk in value '" + s + "' for key " + key);
  return v;
}

std::uint64_t parse_u64(const std::string& s, const std::string& key) {
  std::size_t pos = 0;
  unsigned long long v;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: cannot parse value '" + s + "' for key " + key);
  }
  if (pos != s.size())
    throw std::invalid_argument("config: trailing junk in value '" + s + "' for key " + key);
  return v;
}

std::vector<std::size_t> parse_size_list(const std::string& s, const std::string& key) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(static_cast<std::size_t>(parse_u64(item, key)));
  if (out.empty()) throw std::invalid_argument("config: empty list for key " + key);
  return out;
}

nlohmann::json double_array(const std::vector<double>& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (double x : v) arr.push_back(x);
  return arr;
}

std::vector<double> array_to_doubles(const nlohmann::json& arr) {
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& x : arr)
    out.push_back(x.is_null() ? std::numeric_limits<double>::quiet_NaN()
                              : x.get<double>());
  return out;
}

}  // namespace

ChannelParams RunConfig::channel() const { return channel(n); }

ChannelParams RunConfig::channel(std::size_t horizon) const {
  return ChannelParams::constant(horizon, c, kw, ktheta, kv1, kappa, constraint, state);
}

OptimizerConfig RunConfig::optimizer() const {
  OptimizerConfig opt;
  opt.tol = tol;
  opt.max_iter = max_iter;
  opt.sign_search_limit = sign_search_limit;
  opt.restarts = restarts;
  opt.seed = seed;
  opt.p2_continuous_only = p2_continuous_only;
  return opt;
}

void apply_key_value(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "n") cfg.n = static_cast<std::size_t>(parse_u64(value, key));
  else if (key == "c") cfg.c = parse_double(value, key);
  else if (key == "kw") cfg.kw = parse_double(value, key);
  else if (key == "ktheta") cfg.ktheta = parse_double(value, key);
  else if (key == "kv1") cfg.kv1 = parse_double(value, key);
  else if (key == "kappa") cfg.kappa = parse_double(value, key);
  else if (key == "constraint") {
    if (value == "total") cfg.constraint = ConstraintKind::TotalAverage;
    else if (value == "pointwise") cfg.constraint = ConstraintKind::PointwisePerSymbol;
    else throw std::invalid_argument("config: constraint must be total or pointwise");
  } else if (key == "state") {
    if (value == "none") cfg.state = StateKind::NoInitialState;
    else if (value == "known") cfg.state = StateKind::KnownInitialState;
    else throw std::invalid_argument("config: state must be none or known");
  } else if (key == "trials") cfg.trials = static_cast<std::size_t>(parse_u64(value, key));
  else if (key == "seed") cfg.seed = parse_u64(value, key);
  else if (key == "eps") cfg.eps = parse_double(value, key);
  else if (key == "format") {
    if (value != "csv" && value != "json")
      throw std::invalid_argument("config: format must be csv or json");
    cfg.format = value;
  } else if (key == "out") cfg.out = value;
  else if (key == "tol") cfg.tol = parse_double(value, key);
  else if (key == "max_iter") cfg.max_iter = static_cast<std::size_t>(parse_u64(value, key));
  else if (key == "sign_search_limit")
    cfg.sign_search_limit = static_cast<std::size_t>(parse_u64(value, key));
  else if (key == "restarts") cfg.restarts = static_cast<std::size_t>(parse_u64(value, key));
  else if (key == "p2_continuous_only") cfg.p2_continuous_only = parse_u64(value, key) != 0;
  else if (key == "fragility_n") cfg.fragility_n = parse_size_list(value, key);
  else if (key == "fig3_b2_n") cfg.fig3_b2_n = parse_size_list(value, key);
  else if (key == "fig3_p2_n") cfg.fig3_p2_n = parse_size_list(value, key);
  else throw std::invalid_argument("config: unknown key '" + key + "'");
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open file " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // trim
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " of " + path + " is not key=value");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    const auto kl = key.find_last_not_of(" \t");
    key = key.substr(0, kl == std::string::npos ? 0 : kl + 1);
    const auto vf = value.find_first_not_of(" \t");
    value = vf == std::string::npos ? "" : value.substr(vf);
    apply_key_value(cfg, key, value);
  }
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string render_rate_csv(const RateResult& result) {
  std::string out = "t,g,sigma,kappa,chi,mi_nats,mi_bits,rate_cum\n";
  const std::size_t n = result.gains.g.size();
  double cum = 0.0;
  for (std::size_t t = 1; t <= n; ++t) {
    const double mi = result.trace.mi_increments[t - 1];
    cum += mi;
    const double chi =
        t >= 2 ? result.trace.chi[t - 2] : std::numeric_limits<double>::quiet_NaN();
    out += std::to_string(t);
    out += ',';
    out += format_double(result.gains.g[t - 1]);
    out += ',';
    out += format_double(result.trace.sigma[t]);
    out += ',';
    out += format_double(result.trace.kappa_t[t - 1]);
    out += ',';
    out += format_double(chi);
    out += ',';
    out += format_double(mi);
    out += ',';
    out += format_double(mi / kLn2);
    out += ',';
    out += format_double(cum / static_cast<double>(t));
    out += '\n';
  }
  return out;
}

std::string rate_result_to_json_text(const RateResult& result) {
  nlohmann::json j;
  j["problem"] = problem_name(result.problem);
  j["rate"] = result.rate;
  j["total_mi"] = result.total_mi;
  j["converged"] = result.converged;
  j["branch"] = result.branch;
  j["gains"] = double_array(result.gains.g);
  nlohmann::json trace;
  trace["sigma"] = double_array(result.trace.sigma);
  trace["kappa"] = double_array(result.trace.kappa_t);
  trace["chi"] = double_array(result.trace.chi);
  trace["mi_nats"] = double_array(result.trace.mi_increments);
  std::vector<double> bits;
  bits.reserve(result.trace.mi_increments.size());
  for (double m : result.trace.mi_increments) bits.push_back(m / kLn2);
  trace["mi_bits"] = double_array(bits);
  trace["snr"] = double_array(result.trace.snr);
  j["trace"] = trace;
  return j.dump(2) + "\n";
}

RateResult rate_result_from_json_text(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  RateResult r;
  r.problem = problem_from_name(j.at("problem").get<std::string>());
  r.rate = j.at("rate").get<double>();
  r.total_mi = j.at("total_mi").get<double>();
  r.converged = j.at("converged").get<bool>();
  r.branch = j.at("branch").get<std::string>();
  r.gains.g = array_to_doubles(j.at("gains"));
  const auto& trace = j.at("trace");
  r.trace.sigma = array_to_doubles(trace.at("sigma"));
  r.trace.kappa_t = array_to_doubles(trace.at("kappa"));
  r.trace.chi = array_to_doubles(trace.at("chi"));
  r.trace.mi_increments = array_to_doubles(trace.at("mi_nats"));
  r.trace.snr = array_to_doubles(trace.at("snr"));
  return r;
}

std::string render_rate_json(const RateResult& result) {
  return rate_result_to_json_text(result);
}

namespace {

RateResult solve_named(const RunConfig& cfg, const std::string& problem) {
  const ChannelParams params = cfg.channel();
  if (problem == "b2") return solve_b2(params);
  if (problem == "p2") return solve_p2(params, cfg.optimizer());
  if (problem == "p1") return solve_p1(params, cfg.optimizer());
  if (problem == "b1") return solve_b1(params, cfg.optimizer());
  throw std::invalid_argument("rate: unknown problem '" + problem +
                              "' (expected b1, b2, p1 or p2)");
}

}  // namespace

CommandResult cmd_rate(const RunConfig& cfg, const std::string& problem) {
  CommandResult res;
  try {
    const RateResult rate = solve_named(cfg, problem);
    res.output = cfg.format == "json" ? render_rate_json(rate) : render_rate_csv(rate);
    if (!rate.converged) {
      res.exit_code = 2;
      res.message = "rate: optimizer did not converge within max_iter; best point reported";
    }
  } catch (const std::exception& e) {
    res.exit_code = 1;
    res.message = e.what();
  }
  return res;
}

CommandResult cmd_fig2(const RunConfig& cfg) {
  CommandResult res;
  try {
    const ChannelParams params = cfg.channel();
    const RateResult b2 = solve_b2(params);
    const RateResult p2 = solve_p2(params, cfg.optimizer());
    if (cfg.format == "json") {
      nlohmann::json j;
      j["t"] = nlohmann::json::array();
      for (std::size_t t = 1; t <= cfg.n; ++t) j["t"].push_back(t);
      j["g_b2"] = double_array(b2.gains.g);
      j["g_p2"] = double_array(p2.gains.g);
      res.output = j.dump(2) + "\n";
    } else {
      res.output = "t,g_b2,g_p2\n";
      for (std::size_t t = 1; t <= cfg.n; ++t) {
        res.output += std::to_string(t);
        res.output += ',';
        res.output += format_double(b2.gains.g[t - 1]);
        res.output += ',';
        res.output += format_double(p2.gains.g[t - 1]);
        res.output += '\n';
      }
    }
  } catch (const std::exception& e) {
    res.exit_code = 1;
    res.message = e.what();
  }
  return res;
}

CommandResult cmd_fig3(const RunConfig& cfg) {
  CommandResult res;
  try {
    std::vector<std::pair<std::string, double>> rows;
    for (std::size_t horizon : cfg.fig3_b2_n)
      rows.emplace_back("B2@" + std::to_string(horizon), solve_b2(cfg.channel(horizon)).rate);
    for (std::size_t horizon : cfg.fig3_p2_n)
      rows.emplace_back("P2@" + std::to_string(horizon),
                        solve_p2(cfg.channel(horizon), cfg.optimizer()).rate);
    rows.emplace_back("B_asymptote", solve_asymptote(cfg.kappa, cfg.kw, cfg.c).rate);

    if (cfg.format == "json") {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& [label, rate] : rows)
        arr.push_back({{"label", label}, {"rate_nats", rate}, {"rate_bits", rate / kLn2}});
      res.output = arr.dump(2) + "\n";
    } else {
      res.output = "label,rate_nats,rate_bits\n";
      for (const auto& [label, rate] : rows) {
        res.output += label;
        res.output += ',';
        res.output += format_double(rate);
        res.output += ',';
        res.output += format_double(rate / kLn2);
        res.output += '\n';
      }
    }
  } catch (const std::exception& e) {
    res.exit_code = 1;
    res.message = e.what();
  }
  return res;
}

CommandResult cmd_fragility(const RunConfig& cfg) {
  CommandResult res;
  try {
    const std::vector<FragilityRow> rows =
        fragility_report(cfg.channel(), cfg.eps, cfg.fragility_n, RngSpec{cfg.seed}, cfg.trials);
    if (cfg.format == "json") {
      nlohmann::json arr = nlohmann::json::array();
      for (const FragilityRow& row : rows)
        arr.push_back({{"n", row.n},
                       {"gain_abs", row.gain_abs},
                       {"amplification", row.amplification},
                       {"excess_mse", row.excess_mse},
                       {"sigma_nominal", row.sigma_nominal},
                       {"sigma_empirical", row.sigma_empirical}});
      res.output = arr.dump(2) + "\n";
    } else {
      res.output = "n,gain_abs,amplification,excess_mse,sigma_nominal,sigma_empirical\n";
      for (const FragilityRow& row : rows) {
        res.output += std::to_string(row.n);
        res.output += ',';
        res.output += format_double(row.gain_abs);
        res.output += ',';
        res.output += format_double(row.amplification);
        res.output += ',';
        res.output += format_double(row.excess_mse);
        res.output += ',';
        res.output += format_double(row.sigma_nominal);
        res.output += ',';
        res.output += format_double(row.sigma_empirical);
        res.output += '\n';
      }
    }
  } catch (const std::exception& e) {
    res.exit_code = 1;
    res.message = e.what();
  }
  return res;
}

CommandResult cmd_sweep(const RunConfig& cfg, const std::string& parameter,
                        const std::vector<double>& grid,
                        const std::vector<std::string>& problems) {
  CommandResult res;
  try {
    if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
    if (problems.empty()) throw std::invalid_argument("sweep: no problems selected");
    if (parameter != "c" && parameter != "kappa" && parameter != "kw" && parameter != "n")
      throw std::invalid_argument("sweep: unknown parameter '" + parameter +
                                  "' (expected c, kappa, kw or n)");

    struct Row {
      double value;
      std::string problem;
      double rate;
    };
    std::vector<Row> rows;
    bool all_converged = true;

    for (double value : grid) {
      RunConfig point = cfg;
      if (parameter == "c") point.c = value;
      else if (parameter == "kappa") point.kappa = value;
      else if (parameter == "kw") point.kw = value;
      else {
        if (value < 1.0 || value != std::floor(value))
          throw std::invalid_argument("sweep: n grid values must be positive integers");
        point.n = static_cast<std::size_t>(value);
      }
      for (const std::string& problem : problems) {
        double rate;
        if (problem == "asymptote") {
          rate = solve_asymptote(point.kappa, point.kw, point.c).rate;
        } else {
          const RateResult r = solve_named(point, problem);
          rate = r.rate;
          all_converged = all_converged && r.converged;
        }
        rows.push_back({value, problem, rate});
      }
    }

    if (cfg.format == "json") {
      nlohmann::json arr = nlohmann::json::array();
      for (const Row& row : rows)
        arr.push_back({{"parameter", parameter},
                       {"value", row.value},
                       {"problem", row.problem},
                       {"rate_nats", row.rate}});
      res.output = arr.dump(2) + "\n";
    } else {
      res.output = "parameter,value,problem,rate_nats\n";
      for (const Row& row : rows) {
        res.output += parameter;
        res.output += ',';
        res.output += format_double(row.value);
        res.output += ',';
        res.output += row.problem;
        res.output += ',';
        res.output += format_double(row.rate);
        res.output += '\n';
      }
    }
    if (!all_converged) {
      res.exit_code = 2;
      res.message = "sweep: at least one optimizer run did not converge";
    }
  } catch (const std::exception& e) {
    res.exit_code = 1;
    res.message = e.what();
  }
  return res;
}

CommandResult cmd_asymptote(const RunConfig& cfg) {
  CommandResult res;
  try {
    const AsymptoteResult a = solve_asymptote(cfg.kappa, cfg.kw, cfg.c);
    if (std::fabs(cfg.c) > 1.0)
      res.message = "asymptote: |c| > 1, the noise process is nonstationary; "
                    "the ratio limit is still well defined";
    if (cfg.format == "json") {
      nlohmann::json j;
      j["chi"] = a.chi;
      j["rate_nats"] = a.rate;
      j["rate_bits"] = a.rate / kLn2;
      j["iterations"] = a.iterations;
      j["residual"] = a.residual;
      res.output = j.dump(2) + "\n";
    } else {
      res.output = "chi,rate_nats,rate_bits,iterations,residual\n";
      res.output += format_double(a.chi);
      res.output += ',';
      res.output += format_double(a.rate);
      res.output += ',';
      res.output += format_double(a.rate / kLn2);
      res.output += ',';
      res.output += std::to_string(a.iterations);
      res.output += ',';
      res.output += format_double(a.residual);
      res.output += '\n';
    }
  } catch (const std::exception& e) {
    res.exit_code = 1;
    res.message = e.what();
  }
  return res;
}

}  // namespace agnlab
