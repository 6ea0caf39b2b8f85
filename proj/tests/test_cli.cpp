#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "csup/report.hpp"

using namespace csup;
using Json = nlohmann::json;

namespace {

std::string fixture(const std::string& name) {
  return std::string(CSUP_FIXTURE_DIR) + "/" + name;
}

/// Temp file that removes itself; lives in the test working directory.
struct TempFile {
  std::string path;
  explicit TempFile(const std::string& stem, const std::string& content) {
    path = stem + "-" + std::to_string(::getpid()) + ".tmp.json";
    std::ofstream out(path, std::ios::binary);
    out << content;
  }
  ~TempFile() { std::error_code ec; std::filesystem::remove(path, ec); }
};

Json parse(const CommandResult& r) { return Json::parse(r.json); }

}  // namespace

TEST_CASE("seed hashing is stable") {
  // Published FNV-1a 64-bit test vectors.
  CHECK(input_seed("") == 14695981039346656037ull);
  CHECK(input_seed("a") == 0xaf63dc4c8601ec8cull);
  CHECK(input_seed("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("check accepts an inline statement") {
  CheckOptions opt;
  opt.trials = 200;
  opt.seed = 5;
  CommandResult r = run_check("x /\\ y = y /\\ x", opt);
  CHECK(r.exit_code == 0);
  CHECK(r.text.find("no counterexample") != std::string::npos);
  Json j = parse(r);
  CHECK(j["command"] == "check");
  CHECK(j["ok"] == true);
  CHECK(j["seed"] == 5);
  CHECK(j["trials"] == 200);
  CHECK(j["results"].size() == 1);
  CHECK(j["results"][0]["verdict"] == "no-counterexample-found");

  // Without --seed the seed is the input hash: deterministic, not 5.
  opt.seed.reset();
  Json j2 = parse(run_check("x /\\ y = y /\\ x", opt));
  CHECK(j2["seed"] != 5);
  CHECK(j2["seed"] == parse(run_check("x /\\ y = y /\\ x", opt))["seed"]);
}

TEST_CASE("check records a replayable counterexample") {
  CheckOptions opt;
  opt.trials = 300;
  opt.seed = 11;
  CommandResult r = run_check("x \\/ y = x", opt);
  CHECK(r.exit_code == 1);
  Json j = parse(r);
  CHECK(j["ok"] == false);
  CHECK(j["failed"] == 1);
  const Json& e = j["results"][0];
  CHECK(e["verdict"] == "counterexample");
  CHECK(e["signature"] == "lg");
  CHECK(e.contains("equation"));
  CHECK(e.contains("valuation"));
  CHECK(e.contains("lhs"));
  CHECK(e.contains("rhs"));

  SUBCASE("replay confirms the untouched report") {
    TempFile report("replay-ok", r.json);
    CommandResult rep = run_replay(report.path);
    CHECK(rep.exit_code == 0);
    Json rj = parse(rep);
    CHECK(rj["total"] == 1);
    CHECK(rj["confirmed"] == 1);
    CHECK(rj["entries"][0]["path"] == "/results/0");
  }

  SUBCASE("replay flags tampered recorded values") {
    Json tampered = j;
    tampered["results"][0]["lhs"] = "99";
    TempFile report("replay-tampered", tampered.dump());
    CommandResult rep = run_replay(report.path);
    CHECK(rep.exit_code == 1);
    CHECK(parse(rep)["confirmed"] == 0);
  }

  SUBCASE("replay flags a valuation where the equation holds") {
    Json tampered = j;
    // x \/ y = x holds whenever y <= x; force the valuation onto that set.
    tampered["results"][0]["valuation"] = {{"x", "3"}, {"y", "3"}};
    tampered["results"][0]["lhs"] = "3";
    tampered["results"][0]["rhs"] = "3";
    TempFile report("replay-holds", tampered.dump());
    CommandResult rep = run_replay(report.path);
    CHECK(rep.exit_code == 1);
    CHECK(parse(rep)["entries"][0]["note"] ==
          "equation holds at the recorded valuation");
  }
}

TEST_CASE("check rejects bad input with exit 2") {
  CheckOptions opt;
  SUBCASE("bare term") {
    CommandResult r = run_check("x + y", opt);
    CHECK(r.exit_code == 2);
    CHECK(parse(r).contains("error"));
    CHECK(parse(r)["error"].get<std::string>().find("bare term") != std::string::npos);
  }
  SUBCASE("syntax error") { CHECK(run_check("x + = y", opt).exit_code == 2); }
  SUBCASE("signature error") {
    // The unit constant is not part of the lg signature.
    CHECK(run_check("one = 0", opt).exit_code == 2);
    // In lgu both statements are well formed: one closed truth, one falsity.
    opt.sig = Signature::LGu;
    CHECK(run_check("one = one", opt).exit_code == 0);
    CHECK(run_check("one = 0", opt).exit_code == 1);
  }
  SUBCASE("nothing to check") { CHECK(run_check("   # only a comment", opt).exit_code == 2); }
}

TEST_CASE("check runs every statement in a file") {
  CheckOptions opt;
  opt.trials = 400;
  opt.seed = 7;
  CommandResult r = run_check(fixture("statements.eq"), opt);
  CHECK(r.exit_code == 0);
  Json j = parse(r);
  CHECK(j["results"].size() == 6);
  for (const auto& e : j["results"]) CHECK(e["verdict"] == "no-counterexample-found");
}

TEST_CASE("check in a model from a description file") {
  CheckOptions opt;
  opt.trials = 200;
  opt.seed = 3;
  opt.model_file = fixture("weak-unit-model.json");

  SUBCASE("true statement, including a countable sup") {
    CommandResult r =
        run_check("csup[abs(x)](n : abs(x) /\\ n*abs(x)) = abs(x)", opt);
    CHECK(r.exit_code == 0);
    Json j = parse(r);
    CHECK(j["model"]["ground"] == Json::array({"1", "2", "3"}));
    CHECK(j["model"]["ideal_generators"] == Json::array({Json::array({"2"})}));
  }

  SUBCASE("model counterexamples replay end to end") {
    CommandResult r = run_check("x \\/ y = x", opt);
    CHECK(r.exit_code == 1);
    Json j = parse(r);
    const Json& e = j["results"][0];
    CHECK(e["verdict"] == "counterexample");
    CHECK(e.contains("model"));
    // Elements are support-coordinate maps; coordinate "2" is killed by
    // the ideal and does not appear.
    CHECK(!e["lhs"].contains("2"));
    TempFile report("replay-model", r.json);
    CommandResult rep = run_replay(report.path);
    CHECK(rep.exit_code == 0);
    CHECK(parse(rep)["confirmed"] == 1);
  }

  SUBCASE("model file problems are input errors") {
    opt.model_file = fixture("no-such-model.json");
    CHECK(run_check("x = x", opt).exit_code == 2);
    TempFile bad_key("model-bad-key", R"({"ground": ["a"], "extra": 1})");
    opt.model_file = bad_key.path;
    CHECK(run_check("x = x", opt).exit_code == 2);
    TempFile bad_label("model-bad-label",
                       R"({"ground": ["a"], "ideal_generators": [["b"]]})");
    opt.model_file = bad_label.path;
    CHECK(run_check("x = x", opt).exit_code == 2);
    TempFile bad_unit("model-bad-unit", R"({"ground": ["a"], "unit": {"z": "1"}})");
    opt.model_file = bad_unit.path;
    CHECK(run_check("x = x", opt).exit_code == 2);
  }
}

TEST_CASE("json reports are byte-identical across repeated runs") {
  CheckOptions opt;
  opt.trials = 250;
  opt.model_file = fixture("weak-unit-model.json");
  CommandResult a = run_check("x \\/ y = x", opt);
  CommandResult b = run_check("x \\/ y = x", opt);
  CHECK(a.json == b.json);
  CHECK(a.exit_code == b.exit_code);

  AxiomsOptions aopt;
  aopt.trials = 60;
  CHECK(run_axioms("rs", aopt).json == run_axioms("rs", aopt).json);

  CompileOptions copt;
  copt.check = true;
  copt.trials = 200;
  CHECK(run_compile(fixture("archimedean.quasi"), copt).json ==
        run_compile(fixture("archimedean.quasi"), copt).json);

  PipelineOptions popt;
  CHECK(run_pipeline(fixture("weak-unit-model.json"), popt).json ==
        run_pipeline(fixture("weak-unit-model.json"), popt).json);
}

TEST_CASE("axioms command covers the four varieties") {
  AxiomsOptions opt;
  opt.trials = 120;
  opt.seed = 2;
  CHECK(parse(run_axioms("lg", opt))["reals"].size() == 19);
  CHECK(parse(run_axioms("lgu", opt))["reals"].size() == 20);
  CHECK(parse(run_axioms("rs", opt))["reals"].size() == 24);
  Json j = parse(run_axioms("rsu", opt));
  CHECK(j["reals"].size() == 25);
  CHECK(j["ok"] == true);
  CHECK(run_axioms("rsu", opt).exit_code == 0);
  CHECK(run_axioms("riesz", opt).exit_code == 2);

  SUBCASE("axioms also hold in a quotient model") {
    opt.trials = 60;
    opt.model_file = fixture("weak-unit-model.json");
    CommandResult r = run_axioms("lgu", opt);
    CHECK(r.exit_code == 0);
    Json mj = parse(r);
    CHECK(mj["model_results"].size() == 20);
    for (const auto& e : mj["model_results"])
      CHECK(e["verdict"] != "counterexample");
  }
}

TEST_CASE("compile prints the equivalent equation") {
  CompileOptions opt;
  CommandResult r = run_compile(fixture("archimedean.quasi"), opt);
  CHECK(r.exit_code == 0);
  Json j = parse(r);
  const std::string compiled = j["compiled"].get<std::string>();
  CHECK(compiled.find("csup[") == 0);
  CHECK(compiled.find("n,k :") != std::string::npos);

  // Inline form with ';' as the line separator compiles to the same equation.
  CommandResult inl =
      run_compile("premise: a \\/ 0 = a; indexed: n*a <= b; conclusion: a = 0", opt);
  CHECK(inl.exit_code == 0);
  CHECK(parse(inl)["compiled"] == compiled);
}

TEST_CASE("compile --check agrees on fixtures and on a false quasi-equation") {
  CompileOptions opt;
  opt.check = true;
  opt.trials = 1200;

  SUBCASE("archimedean rule holds") {
    CommandResult r = run_compile(fixture("archimedean.quasi"), opt);
    CHECK(r.exit_code == 0);
    Json j = parse(r);
    CHECK(j["check"]["agree"] == true);
    CHECK(j["check"]["compiled"]["verdict"] == "no-counterexample-found");
    CHECK(j["check"]["direct"]["verdict"] == "no-counterexample-found");
    CHECK(j["check"]["direct"]["premise_hits"].get<long long>() > 0);
  }

  SUBCASE("attained sups distribute over the finite join") {
    CommandResult r = run_compile(fixture("finite-sup-distributes.quasi"), opt);
    CHECK(r.exit_code == 0);
    CHECK(parse(r)["check"]["agree"] == true);
  }

  SUBCASE("a false conclusion is caught by both routes") {
    CommandResult r = run_compile("conclusion: x = 0", opt);
    CHECK(r.exit_code == 0);  // the two routes agree: both falsify
    Json j = parse(r);
    CHECK(j["check"]["agree"] == true);
    CHECK(j["check"]["compiled"]["verdict"] == "counterexample");
    CHECK(j["check"]["direct"]["verdict"] == "counterexample");

    TempFile report("replay-compile", r.json);
    CommandResult rep = run_replay(report.path);
    CHECK(rep.exit_code == 0);
    CHECK(parse(rep)["total"] == 2);
    CHECK(parse(rep)["confirmed"] == 2);
  }

  SUBCASE("quasi-equation input errors") {
    CHECK(run_compile("premise: a = b", opt).exit_code == 2);  // no conclusion
    CHECK(run_compile("conclusion: a = ", opt).exit_code == 2);
  }
}

TEST_CASE("pipeline reports the weak-unit normalization") {
  PipelineOptions opt;

  SUBCASE("vanishing coordinate absorbed by the ideal: injective") {
    CommandResult r = run_pipeline(fixture("weak-unit-model.json"), opt);
    CHECK(r.exit_code == 0);
    Json j = parse(r);
    CHECK(j["X"] == Json::array({"1", "3"}));
    CHECK(j["injective"] == true);
    CHECK(j["unit_image"] == Json({{"1", "1"}, {"3", "1"}}));
    CHECK(j["sigma_continuity"]["passed"] == true);
    CHECK(!j.contains("kernel_witness"));
  }

  SUBCASE("vanishing coordinate outside the ideal: kernel witness") {
    CommandResult r = run_pipeline(fixture("vanishing-unit-model.json"), opt);
    CHECK(r.exit_code == 0);
    Json j = parse(r);
    CHECK(j["injective"] == false);
    CHECK(j["kernel_witness"] == Json({{"1", "0"}, {"2", "1"}, {"3", "0"}}));
  }

  SUBCASE("strictly positive unit: a pure rescaling of every coordinate") {
    Json j = parse(run_pipeline(fixture("rescale-model.json"), opt));
    CHECK(j["X"] == Json::array({"1", "2", "3"}));
    CHECK(j["injective"] == true);
    CHECK(j["phi"]["coordinates"][1] ==
          Json({{"target", "2"}, {"source", "2"}, {"factor", "2"}}));
  }

  SUBCASE("input errors") {
    TempFile no_unit("pipeline-no-unit", R"({"ground": ["a", "b"]})");
    CHECK(run_pipeline(no_unit.path, opt).exit_code == 2);
    TempFile neg_unit("pipeline-neg-unit",
                      R"({"ground": ["a"], "unit": {"a": "-1"}})");
    CHECK(run_pipeline(neg_unit.path, opt).exit_code == 2);
    CHECK(run_pipeline(fixture("missing.json"), opt).exit_code == 2);
  }
}

TEST_CASE("replay edge cases") {
  SUBCASE("a report without counterexamples replays trivially") {
    TempFile empty("replay-empty", "{}");
    CommandResult r = run_replay(empty.path);
    CHECK(r.exit_code == 0);
    CHECK(parse(r)["total"] == 0);
    CHECK(r.text.find("nothing to replay") != std::string::npos);
  }
  SUBCASE("malformed json is an input error") {
    TempFile bad("replay-bad", "{not json");
    CHECK(run_replay(bad.path).exit_code == 2);
  }
  SUBCASE("a counterexample entry missing its signature is an input error") {
    TempFile bad("replay-missing-sig",
                 R"({"verdict": "counterexample", "equation": "x = 0"})");
    CHECK(run_replay(bad.path).exit_code == 2);
  }
}
