#pragma once

#include <optional>

#include "csup/checker.hpp"
#include "csup/term.hpp"

namespace csup {

/// Turns a quasi-equation with countably many premises into one equation
/// that holds over the reals exactly when the quasi-equation does:
///
///   sup_{n,k >= 1} min(k * d_n, |t - r|) = |t - r|
///
/// where t = r is the conclusion and d_n enumerates the premise differences
/// |lhs_n - rhs_n|, finite premises first, the indexed family after them.
/// At a point where every premise holds all d_n vanish and both sides are
/// forced to zero; at a point where some d_m is positive, k * d_m exhausts
/// the cap and both sides equal |t - r|.
Equation compile_quasi(const QuasiEquation& qe);

/// Independent route to the same verdict: sample valuations, keep those
/// where every premise holds exactly, and test the conclusion there.
struct QuasiReport {
  long long trials = 0;
  long long premise_hits = 0;
  std::optional<Counterexample> counterexample;  // first conclusion failure
  uint64_t seed = 0;
};
QuasiReport check_quasi_direct(const QuasiEquation& qe, const CheckConfig& cfg);

/// True when every premise holds at the valuation: finite premises by direct
/// evaluation, the indexed family through its piecewise-linear profile in
/// the index (no positive difference at any index).
bool premises_hold(const QuasiEquation& qe, const Valuation& v);

}  // namespace csup
