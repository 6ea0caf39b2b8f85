#include "csup/checker.hpp"

#include <sstream>

namespace csup {

namespace {

const std::vector<Rat>& boundary_values() {
  static const std::vector<Rat> vals{Rat(0), Rat(1), Rat(-1), Rat(1, 2), Rat(-1, 2)};
  return vals;
}

/// Number of leading trials spent enumerating the boundary grid.
long long boundary_count(size_t nvars) {
  if (nvars == 0 || nvars > 4) return 0;
  long long c = 1;
  for (size_t i = 0; i < nvars; ++i) c *= 5;
  return c;
}

Rat random_checker_rat(Rng& rng) { return random_small_rat(rng); }

}  // namespace

std::string describe_valuation(const Valuation& v) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [name, value] : v) {
    if (!first) os << ", ";
    os << name << " = " << value.str();
    first = false;
  }
  return os.str();
}

Valuation sample_valuation(Rng& rng, const std::vector<std::string>& vars, long long trial) {
  Valuation v;
  long long grid = boundary_count(vars.size());
  if (trial < grid) {
    long long code = trial;
    for (const auto& name : vars) {
      v[name] = boundary_values()[static_cast<size_t>(code % 5)];
      code /= 5;
    }
    return v;
  }
  for (const auto& name : vars) v[name] = random_checker_rat(rng);
  if (vars.size() >= 2 && rng.below(4) == 0) {
    size_t i = static_cast<size_t>(rng.below(static_cast<long long>(vars.size())));
    size_t j = static_cast<size_t>(rng.below(static_cast<long long>(vars.size())));
    v[vars[i]] = v[vars[j]];
  }
  return v;
}

bool holds(const Verdict& v) { return !std::holds_alternative<Counterexample>(v); }

std::string describe(const Verdict& v) {
  std::ostringstream os;
  if (const auto* n = std::get_if<NoCounterexampleFound>(&v)) {
    os << "no counterexample in " << n->trials << " trials (seed " << n->seed << ")";
  } else if (const auto* e = std::get_if<ExactlyVerified>(&v)) {
    os << "exactly verified: " << e->note;
  } else {
    const auto& c = std::get<Counterexample>(v);
    os << "counterexample at trial " << c.trial << ": " << describe_valuation(c.valuation)
       << " gives " << c.lhs_value.str() << " != " << c.rhs_value.str();
  }
  return os.str();
}

Verdict check_equation(const Equation& eq, const CheckConfig& cfg) {
  auto fv = free_vars(eq);
  std::vector<std::string> vars(fv.begin(), fv.end());
  if (vars.empty()) {
    Rat l = eval(eq.lhs, {}), r = eval(eq.rhs, {});
    if (l == r) return ExactlyVerified{"closed equation evaluates to " + l.str() + " on both sides"};
    return Counterexample{{}, l, r, 0};
  }
  Rng rng(cfg.seed);
  for (long long trial = 0; trial < cfg.trials; ++trial) {
    Valuation v = sample_valuation(rng, vars, trial);
    Rat l, r;
    try {
      l = eval(eq.lhs, v);
      r = eval(eq.rhs, v);
    } catch (const EvalError& e) {
      throw EvalError(std::string(e.what()) + " [at " + describe_valuation(v) + "]");
    }
    if (!(l == r)) return Counterexample{std::move(v), l, r, trial};
  }
  return NoCounterexampleFound{cfg.trials, cfg.seed};
}

bool holds(const ModelVerdict& v) { return !std::holds_alternative<ModelCounterexample>(v); }

namespace {
std::string describe_element(const ModelElement& e, const QuotientModel& m) {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < e.values.size(); ++i) {
    if (i) os << ", ";
    os << m.support[i] << ": " << e.values[i].str();
  }
  os << ')';
  return os.str();
}
}  // namespace

std::string describe(const ModelVerdict& v, const QuotientModel& m) {
  std::ostringstream os;
  if (const auto* n = std::get_if<NoCounterexampleFound>(&v)) {
    os << "no counterexample in " << n->trials << " trials (seed " << n->seed << ")";
  } else if (const auto* e = std::get_if<ExactlyVerified>(&v)) {
    os << "exactly verified: " << e->note;
  } else {
    const auto& c = std::get<ModelCounterexample>(v);
    os << "counterexample at trial " << c.trial << ":";
    for (const auto& [name, elem] : c.valuation)
      os << ' ' << name << " = " << describe_element(elem, m);
    os << " gives " << describe_element(c.lhs_value, m) << " != "
       << describe_element(c.rhs_value, m);
  }
  return os.str();
}

ModelVerdict check_equation_in_model(const Equation& eq, const QuotientModel& m,
                                     const CheckConfig& cfg) {
  auto fv = free_vars(eq);
  std::vector<std::string> vars(fv.begin(), fv.end());
  if (vars.empty()) {
    ModelElement l = eval_in_model(eq.lhs, {}, m), r = eval_in_model(eq.rhs, {}, m);
    if (l == r) return ExactlyVerified{"closed equation, evaluated exactly"};
    return ModelCounterexample{{}, l, r, 0};
  }
  Rng rng(cfg.seed);
  long long grid = boundary_count(vars.size());
  for (long long trial = 0; trial < cfg.trials; ++trial) {
    ModelValuation v;
    if (trial < grid) {
      long long code = trial;
      for (const auto& name : vars) {
        v[name] = const_element(m, boundary_values()[static_cast<size_t>(code % 5)]);
        code /= 5;
      }
    } else {
      for (const auto& name : vars) v[name] = random_element(rng, m);
      if (vars.size() >= 2 && rng.below(4) == 0) {
        size_t i = static_cast<size_t>(rng.below(static_cast<long long>(vars.size())));
        size_t j = static_cast<size_t>(rng.below(static_cast<long long>(vars.size())));
        v[vars[i]] = v[vars[j]];
      }
    }
    ModelElement l = eval_in_model(eq.lhs, v, m);
    ModelElement r = eval_in_model(eq.rhs, v, m);
    if (!(l == r)) return ModelCounterexample{std::move(v), std::move(l), std::move(r), trial};
  }
  return NoCounterexampleFound{cfg.trials, cfg.seed};
}

}  // namespace csup
