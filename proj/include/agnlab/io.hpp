#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "agnlab/model.hpp"
#include "agnlab/optimizer.hpp"

namespace agnlab {

// Everything the command line tool needs to run one command.  Values come
// from three layers: built-in defaults (the reference parameter set
// ktheta = kw = kv1 = 1, c = 0.5, kappa = 1), then an optional key=value
// config file, then explicit flags.  Later layers win.
struct RunConfig {
  std::size_t n = 10;
  double c = 0.5;
  double kw = 1.0;
  double ktheta = 1.0;
  double kv1 = 1.0;
  double kappa = 1.0;
  ConstraintKind constraint = ConstraintKind::PointwisePerSymbol;
  StateKind state = StateKind::NoInitialState;

  std::size_t trials = 100000;
  std::uint64_t seed = 1;
  double eps = 1e-6;

  std::string format = "csv";  // csv | json
  std::string out;             // output path; empty writes to stdout

  // optimizer knobs
  double tol = 1e-10;
  std::size_t max_iter = 20000;
  std::size_t sign_search_limit = 20;
  std::size_t restarts = 40;
  bool p2_continuous_only = false;

  // per-command lists
  std::vector<std::size_t> fragility_n = {5, 10, 15, 20};
  std::vector<std::size_t> fig3_b2_n = {10, 20};
  std::vector<std::size_t> fig3_p2_n = {10};

  ChannelParams channel() const;        // uses n
  ChannelParams channel(std::size_t horizon) const;
  OptimizerConfig optimizer() const;

  bool operator==(const RunConfig&) const = default;
};

// Applies "key=value" to the config; throws std::invalid_argument for an
// unknown key or unparseable value.  Keys mirror the flag names: n, c, kw,
// ktheta, kv1, kappa, constraint (total|pointwise), state (none|known),
// trials, seed, eps, format (csv|json), out, tol, max_iter,
// sign_search_limit, restarts, p2_continuous_only (0|1),
// fragility_n / fig3_b2_n / fig3_p2_n (comma-separated).
void apply_key_value(RunConfig& cfg, const std::string& key, const std::string& value);

// Loads a flat key=value file ('#' starts a comment, blank lines ignored).
void load_config_file(RunConfig& cfg, const std::string& path);

// 17-significant-digit decimal form of x (round-trips to the same double),
// used in every CSV cell so regression diffs are byte-stable.
std::string format_double(double x);

// Renders a RateResult either as the per-step CSV table
//   t,g,sigma,kappa,chi,mi_nats,mi_bits,rate_cum
// (rate_cum is the running rate through step t; chi is empty of meaning at
// t = 1 and printed as nan) or as a JSON document carrying every field.
std::string render_rate_csv(const RateResult& result);
std::string render_rate_json(const RateResult& result);

// JSON (de)serialization used by render_rate_json; from_rate_json restores
// exactly the fields written by to-json (NaN round-trips through null).
std::string rate_result_to_json_text(const RateResult& result);
RateResult rate_result_from_json_text(const std::string& text);

// One command execution: the rendered output plus the process exit code
// (0 ok, 1 invalid input, 2 solver did not converge) and an optional
// diagnostic for stderr.
struct CommandResult {
  std::string output;
  int exit_code = 0;
  std::string message;
};

CommandResult cmd_rate(const RunConfig& cfg, const std::string& problem);
CommandResult cmd_fig2(const RunConfig& cfg);
CommandResult cmd_fig3(const RunConfig& cfg);
CommandResult cmd_fragility(const RunConfig& cfg);
CommandResult cmd_sweep(const RunConfig& cfg, const std::string& parameter,
                        const std::vector<double>& grid,
                        const std::vector<std::string>& problems);
CommandResult cmd_asymptote(const RunConfig& cfg);

}  // namespace agnlab
