#include "csup/report.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "csup/axioms.hpp"
#include "csup/checker.hpp"
#include "csup/models.hpp"
#include "csup/parser.hpp"
#include "csup/quasi.hpp"

namespace csup {
namespace {

using Json = nlohmann::ordered_json;

class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// A command argument is a file when it names one, inline text otherwise.
std::string file_or_inline(const std::string& input) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(input, ec)) return read_file(input);
  return input;
}

// -- model files --------------------------------------------------------------

struct ModelDescription {
  std::vector<std::string> ground;
  std::vector<std::vector<std::string>> ideal_generators;
  std::vector<std::pair<std::string, Rat>> unit;  // file order; absent labels are 0
};

ModelDescription parse_model_json(const Json& j, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected a JSON object");
  ModelDescription d;
  if (!j.contains("ground") || !j.at("ground").is_array())
    throw InputError(where + ": missing \"ground\" array");
  for (const auto& g : j.at("ground")) {
    if (!g.is_string()) throw InputError(where + ": ground labels must be strings");
    d.ground.push_back(g.get<std::string>());
  }
  if (j.contains("ideal_generators")) {
    if (!j.at("ideal_generators").is_array())
      throw InputError(where + ": \"ideal_generators\" must be an array of label arrays");
    for (const auto& gen : j.at("ideal_generators")) {
      if (!gen.is_array())
        throw InputError(where + ": \"ideal_generators\" must be an array of label arrays");
      std::vector<std::string> labels;
      for (const auto& l : gen) {
        if (!l.is_string()) throw InputError(where + ": generator labels must be strings");
        labels.push_back(l.get<std::string>());
      }
      d.ideal_generators.push_back(std::move(labels));
    }
  }
  if (j.contains("unit")) {
    if (!j.at("unit").is_object())
      throw InputError(where + ": \"unit\" must map labels to rational strings");
    for (const auto& [label, value] : j.at("unit").items()) {
      if (!value.is_string())
        throw InputError(where + ": unit values must be rational strings like \"3/2\"");
      try {
        d.unit.emplace_back(label, Rat::parse(value.get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw InputError(where + ": bad unit value for \"" + label + "\": " + e.what());
      }
    }
  }
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "ground" && key != "ideal_generators" && key != "unit")
      throw InputError(where + ": unknown key \"" + key + "\"");
  }
  return d;
}

ModelDescription load_model_description(const std::string& path) {
  const std::string raw = read_file(path);
  Json j;
  try {
    j = Json::parse(raw);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  return parse_model_json(j, path);
}

struct BuiltModel {
  FiniteIndexSet ground;
  IdealOfSubsets ideal;
  QuotientModel model;  // enriched
};

BuiltModel build_model(const ModelDescription& d, const std::string& where) {
  BuiltModel b;
  try {
    b.ground = make_index_set(d.ground);
    for (const auto& gen : d.ideal_generators)
      for (const auto& label : gen)
        if (b.ground.index_of(label) < 0)
          throw ModelError("generator label \"" + label + "\" is not in the ground set");
    for (const auto& [label, value] : d.unit) {
      (void)value;
      if (b.ground.index_of(label) < 0)
        throw ModelError("unit label \"" + label + "\" is not in the ground set");
    }
    b.ideal = IdealOfSubsets::closure(b.ground, d.ideal_generators);
    b.model = make_quotient_model(b.ground, b.ideal, true);
  } catch (const ModelError& e) {
    throw InputError(where + ": " + e.what());
  }
  return b;
}

Tuple unit_tuple(const ModelDescription& d, const FiniteIndexSet& ground) {
  Tuple u(ground.size(), Rat(0));
  for (const auto& [label, value] : d.unit)
    u[static_cast<size_t>(ground.index_of(label))] = value;
  return u;
}

std::vector<std::string> mask_labels(const FiniteIndexSet& ground, uint32_t mask) {
  std::vector<std::string> out;
  for (size_t i = 0; i < ground.size(); ++i)
    if (mask & (1u << i)) out.push_back(ground.labels[i]);
  return out;
}

/// Canonical JSON for a model: the ideal is rendered by its one defining
/// generator, the union of its members.
Json model_json(const BuiltModel& b, const ModelDescription* desc) {
  Json j = Json::object();
  j["ground"] = b.ground.labels;
  j["ideal_generators"] = Json::array({mask_labels(b.ground, b.ideal.union_mask())});
  if (desc && !desc->unit.empty()) {
    Json u = Json::object();
    Tuple t = unit_tuple(*desc, b.ground);
    for (size_t i = 0; i < b.ground.size(); ++i) u[b.ground.labels[i]] = t[i].str();
    j["unit"] = u;
  }
  return j;
}

uint32_t full_mask(const FiniteIndexSet& s) {
  return s.size() == 0 ? 0u : ((1u << s.size()) - 1);  // size <= 31 by construction
}

std::string model_text(const BuiltModel& b) {
  return "ground " + b.ground.mask_to_string(full_mask(b.ground)) + ", ideal union " +
         b.ground.mask_to_string(b.ideal.union_mask());
}

// -- verdict serialization ----------------------------------------------------

Json valuation_json(const Valuation& v) {
  Json j = Json::object();
  for (const auto& [name, value] : v) j[name] = value.str();
  return j;
}

Json element_json(const ModelElement& e, const QuotientModel& m) {
  Json j = Json::object();
  for (size_t i = 0; i < e.values.size(); ++i) j[m.support[i]] = e.values[i].str();
  return j;
}

/// Counterexample entries are self-contained: they carry everything the
/// replay command needs to re-evaluate them.
Json verdict_json(const Verdict& v, const Equation& eq) {
  Json j = Json::object();
  if (const auto* n = std::get_if<NoCounterexampleFound>(&v)) {
    j["verdict"] = "no-counterexample-found";
    j["trials"] = n->trials;
    j["seed"] = n->seed;
  } else if (const auto* e = std::get_if<ExactlyVerified>(&v)) {
    j["verdict"] = "exactly-verified";
    j["note"] = e->note;
  } else {
    const auto& c = std::get<Counterexample>(v);
    j["verdict"] = "counterexample";
    j["equation"] = print(eq);
    j["signature"] = signature_name(eq.sig);
    j["valuation"] = valuation_json(c.valuation);
    j["lhs"] = c.lhs_value.str();
    j["rhs"] = c.rhs_value.str();
    j["trial"] = c.trial;
  }
  return j;
}

Json verdict_json(const ModelVerdict& v, const Equation& eq, const BuiltModel& b) {
  Json j = Json::object();
  if (const auto* n = std::get_if<NoCounterexampleFound>(&v)) {
    j["verdict"] = "no-counterexample-found";
    j["trials"] = n->trials;
    j["seed"] = n->seed;
  } else if (const auto* e = std::get_if<ExactlyVerified>(&v)) {
    j["verdict"] = "exactly-verified";
    j["note"] = e->note;
  } else {
    const auto& c = std::get<ModelCounterexample>(v);
    j["verdict"] = "counterexample";
    j["equation"] = print(eq);
    j["signature"] = signature_name(eq.sig);
    j["model"] = model_json(b, nullptr);
    Json val = Json::object();
    for (const auto& [name, elem] : c.valuation) val[name] = element_json(elem, b.model);
    j["valuation"] = val;
    j["lhs"] = element_json(c.lhs_value, b.model);
    j["rhs"] = element_json(c.rhs_value, b.model);
    j["trial"] = c.trial;
  }
  return j;
}

// -- shared scaffolding -------------------------------------------------------

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

CommandResult finish(int exit_code, std::ostringstream& text, const Json& j, const Timer& t) {
  text << "elapsed " << t.ms() << " ms\n";
  return CommandResult{exit_code, text.str(), j.dump(2) + "\n"};
}

CommandResult input_error(const std::string& command, const std::string& message) {
  Json j = Json::object();
  j["command"] = command;
  j["error"] = message;
  return CommandResult{2, "error: " + message + "\n", j.dump(2) + "\n"};
}

/// Non-error statements for a check run: every nonblank, non-comment line.
std::vector<std::string> statement_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(first, last - first + 1));
  }
  return out;
}

std::string parse_error_text(const ParseError& e) {
  std::ostringstream os;
  os << e.raw() << " (line " << e.line() << ", column " << e.col() << ")";
  return os.str();
}

}  // namespace

uint64_t input_seed(const std::string& canonical) {
  uint64_t h = 14695981039346656037ull;  // FNV-1a, 64-bit
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// -- check ---------------------------------------------------------------------

CommandResult run_check(const std::string& input, const CheckOptions& opt) {
  Timer timer;
  try {
    const std::string text = file_or_inline(input);
    std::vector<std::string> lines = statement_lines(text);
    if (lines.empty()) throw InputError("no statements to check");

    std::vector<Equation> eqs;
    for (const auto& line : lines) {
      std::variant<TermPtr, Equation> st;
      try {
        st = parse_statement(line, opt.sig);
      } catch (const ParseError& e) {
        throw InputError("in \"" + line + "\": " + parse_error_text(e));
      }
      if (std::holds_alternative<TermPtr>(st))
        throw InputError("expected an equation, got a bare term: " + line);
      eqs.push_back(std::get<Equation>(st));
    }

    std::optional<BuiltModel> built;
    std::optional<ModelDescription> desc;
    if (opt.model_file) {
      desc = load_model_description(*opt.model_file);
      built = build_model(*desc, *opt.model_file);
    }

    const uint64_t seed = opt.seed ? *opt.seed
                                   : input_seed(std::string("check\n") +
                                                signature_name(opt.sig) + "\n" + text);
    CheckConfig cfg{opt.trials, seed};

    Json j = Json::object();
    j["command"] = "check";
    j["signature"] = signature_name(opt.sig);
    j["trials"] = opt.trials;
    j["seed"] = seed;
    if (built) j["model"] = model_json(*built, nullptr);
    Json results = Json::array();

    std::ostringstream out;
    out << "check: " << eqs.size() << " statement(s), signature " << signature_name(opt.sig)
        << ", trials " << opt.trials << ", seed " << seed << "\n";
    if (built) out << "model: " << model_text(*built) << "\n";

    long long failed = 0;
    for (size_t i = 0; i < eqs.size(); ++i) {
      out << "[" << (i + 1) << "] " << print(eqs[i]) << "\n";
      Json entry = Json::object();
      entry["statement"] = print(eqs[i]);
      if (built) {
        ModelVerdict v = check_equation_in_model(eqs[i], built->model, cfg);
        if (!holds(v)) ++failed;
        out << "    " << describe(v, built->model) << "\n";
        entry.update(verdict_json(v, eqs[i], *built));
      } else {
        Verdict v = check_equation(eqs[i], cfg);
        if (!holds(v)) ++failed;
        out << "    " << describe(v) << "\n";
        entry.update(verdict_json(v, eqs[i]));
      }
      results.push_back(std::move(entry));
    }
    j["results"] = std::move(results);
    j["failed"] = failed;
    j["ok"] = (failed == 0);
    out << (failed == 0 ? "all statements hold\n"
                        : std::to_string(failed) + " statement(s) failed\n");
    return finish(failed == 0 ? 0 : 1, out, j, timer);
  } catch (const InputError& e) {
    return input_error("check", e.what());
  } catch (const ParseError& e) {
    return input_error("check", parse_error_text(e));
  } catch (const std::exception& e) {
    return input_error("check", e.what());
  }
}

// -- axioms ---------------------------------------------------------------------

CommandResult run_axioms(const std::string& variety, const AxiomsOptions& opt) {
  Timer timer;
  try {
    auto sig = signature_from_name(variety);
    if (!sig)
      throw InputError("unknown variety \"" + variety + "\" (expected lg, lgu, rs or rsu)");
    AxiomSuite suite = axiom_suite(*sig);

    std::optional<BuiltModel> built;
    if (opt.model_file) built = build_model(load_model_description(*opt.model_file), *opt.model_file);

    const uint64_t seed =
        opt.seed ? *opt.seed : input_seed(std::string("axioms\n") + signature_name(*sig));
    CheckConfig cfg{opt.trials, seed};

    Json j = Json::object();
    j["command"] = "axioms";
    j["variety"] = signature_name(*sig);
    j["trials"] = opt.trials;
    j["seed"] = seed;

    std::ostringstream out;
    out << "axioms: variety " << signature_name(*sig) << ", " << suite.equations.size()
        << " equations, trials " << opt.trials << ", seed " << seed << "\n";

    long long failed = 0;
    Json reals = Json::array();
    out << "over the reals:\n";
    for (const auto& ax : suite.equations) {
      Verdict v = check_equation(ax.eq, cfg);
      if (!holds(v)) ++failed;
      out << "  " << ax.name << ": " << describe(v) << "\n";
      Json entry = Json::object();
      entry["name"] = ax.name;
      entry.update(verdict_json(v, ax.eq));
      reals.push_back(std::move(entry));
    }
    j["reals"] = std::move(reals);

    if (built) {
      j["model"] = model_json(*built, nullptr);
      Json in_model = Json::array();
      out << "in the model (" << model_text(*built) << "):\n";
      for (const auto& ax : suite.equations) {
        ModelVerdict v = check_equation_in_model(ax.eq, built->model, cfg);
        if (!holds(v)) ++failed;
        out << "  " << ax.name << ": " << describe(v, built->model) << "\n";
        Json entry = Json::object();
        entry["name"] = ax.name;
        entry.update(verdict_json(v, ax.eq, *built));
        in_model.push_back(std::move(entry));
      }
      j["model_results"] = std::move(in_model);
    }

    j["failed"] = failed;
    j["ok"] = (failed == 0);
    out << (failed == 0 ? "all axioms hold\n" : std::to_string(failed) + " check(s) failed\n");
    return finish(failed == 0 ? 0 : 1, out, j, timer);
  } catch (const InputError& e) {
    return input_error("axioms", e.what());
  } catch (const std::exception& e) {
    return input_error("axioms", e.what());
  }
}

// -- compile ---------------------------------------------------------------------

CommandResult run_compile(const std::string& input, const CompileOptions& opt) {
  Timer timer;
  try {
    std::string text = file_or_inline(input);
    // Inline quasi-equations separate their lines with ';'.
    for (char& c : text)
      if (c == ';') c = '\n';

    QuasiEquation qe;
    try {
      qe = parse_quasi(text, opt.sig);
    } catch (const ParseError& e) {
      throw InputError(parse_error_text(e));
    }
    Equation compiled = compile_quasi(qe);

    const uint64_t seed = opt.seed ? *opt.seed
                                   : input_seed(std::string("compile\n") +
                                                signature_name(qe.sig) + "\n" + print(qe));

    Json j = Json::object();
    j["command"] = "compile";
    j["signature"] = signature_name(qe.sig);
    j["quasi"] = print(qe);
    j["compiled"] = print(compiled);

    std::ostringstream out;
    out << "quasi-equation (signature " << signature_name(qe.sig) << "):\n";
    {
      std::istringstream q(print(qe));
      std::string line;
      while (std::getline(q, line)) out << "  " << line << "\n";
    }
    out << "compiled equation:\n  " << print(compiled) << "\n";

    int exit_code = 0;
    if (opt.check) {
      CheckConfig cfg{opt.trials, seed};
      Verdict cv = check_equation(compiled, cfg);
      QuasiReport dr = check_quasi_direct(qe, cfg);
      const bool compiled_holds = holds(cv);
      const bool direct_holds = !dr.counterexample.has_value();
      const bool agree = (compiled_holds == direct_holds);

      Json chk = Json::object();
      chk["trials"] = opt.trials;
      chk["seed"] = seed;
      chk["compiled"] = verdict_json(cv, compiled);
      Json direct = Json::object();
      direct["premise_hits"] = dr.premise_hits;
      Equation conclusion =
          make_equation(qe.conclusion.first, qe.conclusion.second, qe.sig);
      if (dr.counterexample) {
        direct.update(verdict_json(Verdict{*dr.counterexample}, conclusion));
      } else {
        direct["verdict"] = "no-counterexample-found";
        direct["trials"] = dr.trials;
        direct["seed"] = dr.seed;
      }
      chk["direct"] = std::move(direct);
      chk["agree"] = agree;
      j["check"] = std::move(chk);
      j["ok"] = agree;

      out << "check (trials " << opt.trials << ", seed " << seed << "):\n";
      out << "  compiled: " << describe(cv) << "\n";
      out << "  direct: " << dr.premise_hits << " premise hit(s); ";
      if (dr.counterexample)
        out << describe(Verdict{*dr.counterexample}) << "\n";
      else
        out << "no counterexample in " << dr.trials << " trials (seed " << dr.seed << ")\n";
      out << (agree ? "verdicts agree\n" : "verdicts disagree\n");
      exit_code = agree ? 0 : 1;
    } else {
      j["ok"] = true;
    }
    return finish(exit_code, out, j, timer);
  } catch (const InputError& e) {
    return input_error("compile", e.what());
  } catch (const ParseError& e) {
    return input_error("compile", parse_error_text(e));
  } catch (const std::exception& e) {
    return input_error("compile", e.what());
  }
}

// -- pipeline ---------------------------------------------------------------------

namespace {

std::string recipe_text(const ModelMorphism& phi) {
  std::ostringstream os;
  os << "x |-> (";
  for (size_t i = 0; i < phi.select.size(); ++i) {
    if (i) os << ", ";
    os << phi.target.support[i] << ": " << phi.factor[i].str() << " * x("
       << phi.source.support[phi.select[i]] << ")";
  }
  os << ")";
  return os.str();
}

Json recipe_json(const ModelMorphism& phi) {
  Json j = Json::object();
  Json per = Json::array();
  for (size_t i = 0; i < phi.select.size(); ++i) {
    Json one = Json::object();
    one["target"] = phi.target.support[i];
    one["source"] = phi.source.support[phi.select[i]];
    one["factor"] = phi.factor[i].str();
    per.push_back(std::move(one));
  }
  j["coordinates"] = std::move(per);
  return j;
}

}  // namespace

CommandResult run_pipeline(const std::string& model_file, const PipelineOptions& opt) {
  Timer timer;
  try {
    ModelDescription desc = load_model_description(model_file);
    if (desc.unit.empty())
      throw InputError(model_file + ": pipeline needs a \"unit\" entry in the model file");
    BuiltModel built = build_model(desc, model_file);
    Tuple u = unit_tuple(desc, built.ground);

    Tuple u_pos;
    try {
      u_pos = positive_representative(built.model, u);
    } catch (const ModelError& e) {
      throw InputError(model_file + ": " + e.what());
    }
    const bool clipped = (u_pos != u);

    PipelineResult pr = normalize_unit(built.ground, built.ideal, u_pos);

    const uint64_t seed =
        opt.seed ? *opt.seed : input_seed("pipeline\n" + model_json(built, &desc).dump());
    SigmaVerdict sv = check_sigma_continuity(pr.phi, opt.sigma_samples, seed);

    Json j = Json::object();
    j["command"] = "pipeline";
    j["model"] = model_json(built, &desc);
    if (clipped) {
      Json up = Json::object();
      for (size_t i = 0; i < built.ground.size(); ++i)
        up[built.ground.labels[i]] = u_pos[i].str();
      j["positive_representative"] = up;
    }
    j["X"] = pr.X.labels;
    j["induced_ideal_generators"] = Json::array({mask_labels(pr.X, pr.I.union_mask())});
    j["unit_image"] = element_json(pr.unit_image, pr.target);
    j["phi"] = recipe_json(pr.phi);
    j["injective"] = pr.injective;
    j["explanation"] = pr.explanation;
    if (pr.kernel_witness) {
      Json kw = Json::object();
      for (size_t i = 0; i < built.ground.size(); ++i)
        kw[built.ground.labels[i]] = (*pr.kernel_witness)[i].str();
      j["kernel_witness"] = kw;
    }
    Json sc = Json::object();
    sc["passed"] = sv.passed;
    sc["samples"] = sv.samples_run;
    sc["seed"] = seed;
    if (!sv.passed) sc["witness"] = sv.witness;
    j["sigma_continuity"] = std::move(sc);
    j["ok"] = sv.passed;

    std::ostringstream out;
    out << "pipeline: " << model_text(built) << "\n";
    out << "unit: ";
    for (size_t i = 0; i < built.ground.size(); ++i)
      out << (i ? ", " : "") << built.ground.labels[i] << " = " << u[i].str();
    out << "\n";
    if (clipped) {
      out << "positive representative: ";
      for (size_t i = 0; i < built.ground.size(); ++i)
        out << (i ? ", " : "") << built.ground.labels[i] << " = " << u_pos[i].str();
      out << "\n";
    }
    out << "X = " << pr.X.mask_to_string(full_mask(pr.X)) << "\n";
    out << "induced ideal union " << pr.X.mask_to_string(pr.I.union_mask()) << "\n";
    out << "unit image: ";
    for (size_t i = 0; i < pr.target.support.size(); ++i)
      out << (i ? ", " : "") << pr.target.support[i] << " = " << pr.unit_image.values[i].str();
    out << "\n";
    out << "phi: " << recipe_text(pr.phi) << "\n";
    out << "injective: " << (pr.injective ? "yes" : "no") << " (" << pr.explanation << ")\n";
    if (pr.kernel_witness) {
      out << "kernel witness: ";
      for (size_t i = 0; i < built.ground.size(); ++i)
        out << (i ? ", " : "") << built.ground.labels[i] << " = "
            << (*pr.kernel_witness)[i].str();
      out << "\n";
    }
    out << "sigma-continuity: " << (sv.passed ? "passed" : "FAILED") << " (" << sv.samples_run
        << " samples, seed " << seed << ")\n";
    if (!sv.passed) out << "  witness: " << sv.witness << "\n";
    return finish(sv.passed ? 0 : 1, out, j, timer);
  } catch (const InputError& e) {
    return input_error("pipeline", e.what());
  } catch (const std::exception& e) {
    return input_error("pipeline", e.what());
  }
}

// -- replay ---------------------------------------------------------------------

namespace {

struct ReplayEntry {
  std::string path;
  bool confirmed = false;
  std::string note;
};

ModelElement element_from_json(const Json& j, const QuotientModel& m, const std::string& path) {
  if (!j.is_object()) throw InputError(path + ": element values must be objects");
  ModelElement e;
  for (const auto& label : m.support) {
    if (!j.contains(label))
      throw InputError(path + ": element is missing support coordinate \"" + label + "\"");
    e.values.push_back(Rat::parse(j.at(label).get<std::string>()));
  }
  return e;
}

ReplayEntry replay_one(const Json& entry, const std::string& path) {
  ReplayEntry r{path, false, ""};
  if (!entry.contains("signature") || !entry.at("signature").is_string())
    throw InputError(path + ": counterexample entry has no \"signature\"");
  auto sig = signature_from_name(entry.at("signature").get<std::string>());
  if (!sig) throw InputError(path + ": unknown signature");
  auto st = parse_statement(entry.at("equation").get<std::string>(), *sig);
  if (!std::holds_alternative<Equation>(st))
    throw InputError(path + ": recorded equation is a bare term");
  const Equation eq = std::get<Equation>(st);

  if (entry.contains("model")) {
    ModelDescription d = parse_model_json(entry.at("model"), path);
    BuiltModel b = build_model(d, path);
    ModelValuation v;
    for (const auto& [name, elem] : entry.at("valuation").items())
      v[name] = element_from_json(elem, b.model, path);
    ModelElement l = eval_in_model(eq.lhs, v, b.model);
    ModelElement rr = eval_in_model(eq.rhs, v, b.model);
    ModelElement rec_l = element_from_json(entry.at("lhs"), b.model, path);
    ModelElement rec_r = element_from_json(entry.at("rhs"), b.model, path);
    if (l == rr) {
      r.note = "equation holds at the recorded valuation";
    } else if (!(l == rec_l) || !(rr == rec_r)) {
      r.note = "recomputed values differ from the recorded ones";
    } else {
      r.confirmed = true;
      r.note = "still falsifies the equation";
    }
    return r;
  }

  Valuation v;
  for (const auto& [name, value] : entry.at("valuation").items())
    v[name] = Rat::parse(value.get<std::string>());
  Rat l = eval(eq.lhs, v), rr = eval(eq.rhs, v);
  Rat rec_l = Rat::parse(entry.at("lhs").get<std::string>());
  Rat rec_r = Rat::parse(entry.at("rhs").get<std::string>());
  if (l == rr) {
    r.note = "equation holds at the recorded valuation";
  } else if (l != rec_l || rr != rec_r) {
    r.note = "recomputed values differ from the recorded ones";
  } else {
    r.confirmed = true;
    r.note = l.str() + " != " + rr.str() + " as recorded";
  }
  return r;
}

void collect_counterexamples(const Json& node, const std::string& path,
                             std::vector<std::pair<std::string, const Json*>>& out) {
  if (node.is_object()) {
    if (node.contains("verdict") && node.at("verdict") == "counterexample" &&
        node.contains("equation")) {
      out.emplace_back(path, &node);
      return;
    }
    for (const auto& [key, value] : node.items())
      collect_counterexamples(value, path + "/" + key, out);
  } else if (node.is_array()) {
    size_t i = 0;
    for (const auto& value : node) {
      collect_counterexamples(value, path + "/" + std::to_string(i), out);
      ++i;
    }
  }
}

}  // namespace

CommandResult run_replay(const std::string& report_file) {
  Timer timer;
  try {
    const std::string raw = read_file(report_file);
    Json doc;
    try {
      doc = Json::parse(raw);
    } catch (const Json::parse_error& e) {
      throw InputError(report_file + ": " + e.what());
    }

    std::vector<std::pair<std::string, const Json*>> found;
    collect_counterexamples(doc, "", found);

    Json j = Json::object();
    j["command"] = "replay";
    j["report"] = report_file;
    Json entries = Json::array();

    std::ostringstream out;
    out << "replay: " << found.size() << " counterexample(s) in " << report_file << "\n";

    long long confirmed = 0;
    for (const auto& [path, node] : found) {
      ReplayEntry r;
      try {
        r = replay_one(*node, path.empty() ? "/" : path);
      } catch (const ParseError& e) {
        throw InputError(path + ": " + parse_error_text(e));
      } catch (const Json::exception& e) {
        throw InputError(path + ": " + e.what());
      } catch (const std::invalid_argument& e) {
        throw InputError(path + ": " + e.what());
      }
      if (r.confirmed) ++confirmed;
      out << "  " << r.path << ": " << (r.confirmed ? "confirmed" : "NOT CONFIRMED") << " ("
          << r.note << ")\n";
      Json entry = Json::object();
      entry["path"] = r.path;
      entry["confirmed"] = r.confirmed;
      entry["note"] = r.note;
      entries.push_back(std::move(entry));
    }
    j["entries"] = std::move(entries);
    j["total"] = found.size();
    j["confirmed"] = confirmed;
    const bool ok = (confirmed == static_cast<long long>(found.size()));
    j["ok"] = ok;
    if (found.empty())
      out << "nothing to replay\n";
    else
      out << (ok ? "all confirmed\n"
                 : std::to_string(found.size() - confirmed) + " not confirmed\n");
    return finish(ok ? 0 : 1, out, j, timer);
  } catch (const InputError& e) {
    return input_error("replay", e.what());
  } catch (const std::exception& e) {
    return input_error("replay", e.what());
  }
}

}  // namespace csup
