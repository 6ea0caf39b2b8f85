#pragma once

#include <string>
#include <vector>

#include "csup/term.hpp"

namespace csup {

struct NamedEquation {
  std::string name;
  Equation eq;
};

/// The defining equations of one of the four varieties. The countable-sup
/// axiom schemas are instantiated at two concrete family shapes: an
/// eventually constant family [f1, f2, f3] ~ f4 and an indexed family with
/// body (n*f1 + f2) /\ f3. Scalar axiom schemas are instantiated at fixed
/// rationals.
struct AxiomSuite {
  Signature variety;
  std::vector<NamedEquation> equations;
};

AxiomSuite axiom_suite(Signature sig);

}  // namespace csup
