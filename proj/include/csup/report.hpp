#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "csup/term.hpp"

namespace csup {

/// Outcome of one CLI command. The JSON is fully rendered here so the
/// determinism contract is byte-level: identical input and seed produce an
/// identical string. Wall-clock timing appears only in the text rendering.
struct CommandResult {
  int exit_code = 0;  // 0 ok, 1 counterexample/disagreement, 2 input error
  std::string text;
  std::string json;
};

/// FNV-1a hash of the canonical input; the default seed when none is given.
uint64_t input_seed(const std::string& canonical);

struct CheckOptions {
  Signature sig = Signature::LG;
  long long trials = 2000;
  std::optional<uint64_t> seed;
  std::optional<std::string> model_file;
};
/// Checks one inline statement or every statement in a file, over the reals
/// or (with a model file) in the enriched quotient it describes.
CommandResult run_check(const std::string& input, const CheckOptions& opt);

struct AxiomsOptions {
  long long trials = 2000;
  std::optional<uint64_t> seed;
  std::optional<std::string> model_file;
};
CommandResult run_axioms(const std::string& variety, const AxiomsOptions& opt);

struct CompileOptions {
  Signature sig = Signature::LG;
  bool check = false;
  long long trials = 2000;
  std::optional<uint64_t> seed;
};
/// Compiles a quasi-equation to its equivalent equation; with check set,
/// also runs the compiled-equation checker and the direct premise-filtering
/// checker under the same seed and reports whether the verdicts agree.
CommandResult run_compile(const std::string& input, const CompileOptions& opt);

struct PipelineOptions {
  std::optional<uint64_t> seed;
  long long sigma_samples = 200;
};
/// Runs the weak-unit normalization on a model file with a unit entry.
CommandResult run_pipeline(const std::string& model_file, const PipelineOptions& opt);

/// Re-evaluates every counterexample recorded in a JSON report and confirms
/// that it still falsifies its equation.
CommandResult run_replay(const std::string& report_file);

}  // namespace csup
