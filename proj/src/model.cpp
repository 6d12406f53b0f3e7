#include "agnlab/model.hpp"

#include <cmath>
#include <stdexcept>

namespace agnlab {

namespace {

bool all_equal(const std::vector<double>& v) {
  for (double x : v)
    if (x != v.front()) return false;
  return true;
}

void require_finite(double x, const char* field) {
  if (!std::isfinite(x))
    throw std::invalid_argument(std::string("channel params: ") + field + " must be finite");
}

}  // namespace

bool ChannelParams::has_constant_coeff() const { return c.empty() || all_equal(c); }

bool ChannelParams::has_constant_kw() const { return kw.empty() || all_equal(kw); }

ChannelParams ChannelParams::constant(std::size_t n, double c, double kw, double ktheta,
                                      double kv1, double kappa, ConstraintKind constraint,
                                      StateKind state) {
  ChannelParams p;
  p.n = n;
  p.c.assign(n, c);
  p.kw.assign(n, kw);
  p.ktheta = ktheta;
  p.kv1 = kv1;
  p.kappa = kappa;
  p.constraint = constraint;
  p.state = state;
  return p;
}

ChannelParams validate(ChannelParams p) {
  if (p.n == 0) throw std::invalid_argument("channel params: n must be >= 1");
  if (p.c.size() != p.n)
    throw std::invalid_argument("channel params: c must have length n");
  if (p.kw.size() != p.n)
    throw std::invalid_argument("channel params: kw must have length n");
  for (std::size_t t = 0; t < p.n; ++t) {
    require_finite(p.c[t], "every c_t");
    require_finite(p.kw[t], "every kw_t");
    if (p.kw[t] <= 0.0)
      throw std::invalid_argument("channel params: kw[" + std::to_string(t) +
                                  "] must be > 0");
  }
  require_finite(p.kv1, "kv1");
  require_finite(p.ktheta, "ktheta");
  require_finite(p.kappa, "kappa");
  if (p.kv1 <= 0.0) throw std::invalid_argument("channel params: kv1 must be > 0");
  if (p.ktheta <= 0.0) throw std::invalid_argument("channel params: ktheta must be > 0");
  if (p.kappa < 0.0) throw std::invalid_argument("channel params: kappa must be >= 0");
  return p;
}

void check_gains(const ChannelParams& params, const GainSequence& gains) {
  if (gains.g.size() != params.n)
    throw std::invalid_argument("gain sequence: length " + std::to_string(gains.g.size()) +
                                " does not match horizon n = " + std::to_string(params.n));
  for (std::size_t t = 0; t < gains.g.size(); ++t)
    if (!std::isfinite(gains.g[t]))
      throw std::invalid_argument("gain sequence: g[" + std::to_string(t + 1) +
                                  "] is not finite");
}

std::string problem_name(ProblemKind p) {
  switch (p) {
    case ProblemKind::B1: return "B1";
    case ProblemKind::B2: return "B2";
    case ProblemKind::BAsymptotic: return "B_asymptotic";
    case ProblemKind::P1: return "P1";
    case ProblemKind::P2: return "P2";
    case ProblemKind::Evaluation: return "evaluation";
  }
  throw std::logic_error("problem_name: unknown enum value");
}

ProblemKind problem_from_name(const std::string& name) {
  if (name == "B1" || name == "b1") return ProblemKind::B1;
  if (name == "B2" || name == "b2") return ProblemKind::B2;
  if (name == "B_asymptotic" || name == "b_asymptotic") return ProblemKind::BAsymptotic;
  if (name == "P1" || name == "p1") return ProblemKind::P1;
  if (name == "P2" || name == "p2") return ProblemKind::P2;
  if (name == "evaluation") return ProblemKind::Evaluation;
  throw std::invalid_argument("unknown problem name: " + name);
}

}  // namespace agnlab
