#include "csup/quasi.hpp"

namespace csup {

namespace {
TermPtr abs_diff(const TermPtr& a, const TermPtr& b) { return abs_of(sub(a, b)); }
}  // namespace

Equation compile_quasi(const QuasiEquation& qe) {
  validate(qe);
  std::vector<TermPtr> heads;
  heads.reserve(qe.finite_premises.size());
  for (const auto& [l, r] : qe.finite_premises) heads.push_back(abs_diff(l, r));
  TermPtr body = qe.indexed_premises
                     ? abs_diff(qe.indexed_premises->first, qe.indexed_premises->second)
                     : zero();
  TermPtr cap = abs_diff(qe.conclusion.first, qe.conclusion.second);
  return make_equation(csup_of(cap, family_double(std::move(heads), std::move(body))), cap,
                       qe.sig);
}

bool premises_hold(const QuasiEquation& qe, const Valuation& v) {
  for (const auto& [l, r] : qe.finite_premises)
    if (!(eval(l, v) == eval(r, v))) return false;
  if (qe.indexed_premises) {
    TermPtr diff = abs_diff(qe.indexed_premises->first, qe.indexed_premises->second);
    if (exists_positive(pl_of_index(diff, v)).found) return false;
  }
  return true;
}

QuasiReport check_quasi_direct(const QuasiEquation& qe, const CheckConfig& cfg) {
  validate(qe);
  QuasiReport report;
  report.seed = cfg.seed;
  auto fv = free_vars(qe);
  std::vector<std::string> vars(fv.begin(), fv.end());
  Rng rng(cfg.seed);
  for (long long trial = 0; trial < cfg.trials; ++trial) {
    ++report.trials;
    Valuation v = sample_valuation(rng, vars, trial);
    if (!premises_hold(qe, v)) continue;
    ++report.premise_hits;
    Rat l = eval(qe.conclusion.first, v);
    Rat r = eval(qe.conclusion.second, v);
    if (!(l == r) && !report.counterexample)
      report.counterexample = Counterexample{std::move(v), l, r, trial};
  }
  return report;
}

}  // namespace csup
