#pragma once

#include <string>
#include <variant>
#include <vector>

#include "csup/eval.hpp"
#include "csup/gen.hpp"
#include "csup/models.hpp"
#include "csup/term.hpp"

namespace csup {

struct CheckConfig {
  long long trials = 1000;
  uint64_t seed = 1;
};

/// Sampling found no failing valuation. Evidence, not proof: a missing
/// counterexample certifies nothing, a found one disproves the equation.
struct NoCounterexampleFound {
  long long trials = 0;
  uint64_t seed = 0;
};

/// Decided without sampling (closed equations evaluate exactly).
struct ExactlyVerified {
  std::string note;
};

struct Counterexample {
  Valuation valuation;
  Rat lhs_value, rhs_value;
  long long trial = 0;
};

using Verdict = std::variant<NoCounterexampleFound, ExactlyVerified, Counterexample>;

bool holds(const Verdict& v);
std::string describe(const Verdict& v);
std::string describe_valuation(const Valuation& v);

/// Deterministic valuation stream. Trials below 5^#vars (vars capped at 4)
/// enumerate every tuple over {0, 1, -1, 1/2, -1/2}: the layer where lattice
/// ties sit and where the piecewise profiles of countable sups have their
/// kinks. Later trials draw small rationals, occasionally forcing two
/// variables equal to provoke more ties.
Valuation sample_valuation(Rng& rng, const std::vector<std::string>& vars, long long trial);

/// Samples valuations over the reals and compares exact evaluations.
/// Returns the first counterexample by trial index.
Verdict check_equation(const Equation& eq, const CheckConfig& cfg);

struct ModelCounterexample {
  ModelValuation valuation;
  ModelElement lhs_value, rhs_value;
  long long trial = 0;
};

using ModelVerdict = std::variant<NoCounterexampleFound, ExactlyVerified, ModelCounterexample>;

bool holds(const ModelVerdict& v);
std::string describe(const ModelVerdict& v, const QuotientModel& m);

/// As check_equation, with element-valued valuations in a quotient model.
/// The boundary layer uses constant elements over the same grid; later
/// trials draw coordinatewise random elements.
ModelVerdict check_equation_in_model(const Equation& eq, const QuotientModel& m,
                                     const CheckConfig& cfg);

}  // namespace csup
