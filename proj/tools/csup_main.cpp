#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "csup/report.hpp"

namespace {

// --sig is pre-validated by IsMember, so the lookup cannot fail.
csup::Signature sig_flag(const std::string& name) {
  return csup::signature_from_name(name).value();
}

int emit(const csup::CommandResult& r, const std::string& format) {
  if (format == "json")
    std::cout << r.json;
  else
    std::cout << r.text;
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equational reasoning for lattice-ordered groups and Riesz spaces "
               "with countable suprema"};
  app.require_subcommand(1);
  app.fallthrough();  // lets --format appear after the subcommand

  std::string format = "text";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  std::string sig_name = "lg";
  long long trials = 2000;
  std::string seed_str;
  std::string model_file;

  auto add_common = [&](CLI::App* cmd, bool with_model) {
    cmd->add_option("--sig", sig_name, "Signature: lg, lgu, rs or rsu")
        ->check(CLI::IsMember({"lg", "lgu", "rs", "rsu"}));
    cmd->add_option("--trials", trials, "Sampling trials per statement")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed_str, "Seed (default: hash of the input)");
    if (with_model) cmd->add_option("--model", model_file, "Model description JSON file");
  };

  std::string check_input;
  CLI::App* check = app.add_subcommand("check", "Check statements over the reals or in a model");
  check->add_option("input", check_input, "Statement or file of statements")->required();
  add_common(check, true);

  std::string variety;
  CLI::App* axioms = app.add_subcommand("axioms", "Check the defining equations of a variety");
  axioms->add_option("variety", variety, "lg, lgu, rs or rsu")->required();
  add_common(axioms, true);

  std::string compile_input;
  bool compile_check = false;
  CLI::App* compile =
      app.add_subcommand("compile", "Compile a quasi-equation to a single equation");
  compile->add_option("input", compile_input, "Quasi-equation or file (';' separates lines inline)")
      ->required();
  compile->add_flag("--check", compile_check,
                    "Run the compiled and the direct checker and compare verdicts");
  add_common(compile, false);

  std::string pipeline_model;
  CLI::App* pipeline =
      app.add_subcommand("pipeline", "Normalize the weak unit of a model with a unit entry");
  pipeline->add_option("model", pipeline_model, "Model description JSON file with a unit")
      ->required();
  pipeline->add_option("--seed", seed_str, "Seed (default: hash of the input)");

  std::string report_file;
  CLI::App* replay =
      app.add_subcommand("replay", "Re-evaluate the counterexamples in a JSON report");
  replay->add_option("report", report_file, "Report produced with --format json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::optional<uint64_t> seed;
  if (!seed_str.empty()) {
    try {
      seed = std::stoull(seed_str);
    } catch (const std::exception&) {
      std::cerr << "error: --seed expects an unsigned integer\n";
      return 2;
    }
  }
  std::optional<std::string> model;
  if (!model_file.empty()) model = model_file;

  if (*check) {
    csup::CheckOptions opt;
    opt.sig = sig_flag(sig_name);
    opt.trials = trials;
    opt.seed = seed;
    opt.model_file = model;
    return emit(csup::run_check(check_input, opt), format);
  }
  if (*axioms) {
    csup::AxiomsOptions opt;
    opt.trials = trials;
    opt.seed = seed;
    opt.model_file = model;
    return emit(csup::run_axioms(variety, opt), format);
  }
  if (*compile) {
    csup::CompileOptions opt;
    opt.sig = sig_flag(sig_name);
    opt.check = compile_check;
    opt.trials = trials;
    opt.seed = seed;
    return emit(csup::run_compile(compile_input, opt), format);
  }
  if (*pipeline) {
    csup::PipelineOptions opt;
    opt.seed = seed;
    return emit(csup::run_pipeline(pipeline_model, opt), format);
  }
  return emit(csup::run_replay(report_file), format);
}
