// SPDX-License-Identifier: Apache-2.0
#include <filesystem>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "testkit.hpp"
#include "totalizer/driver.hpp"
#include "totalizer/totalizer.h"

using namespace totalizer;
namespace fs = std::filesystem;

TEST_CASE("output paths follow module names") {
  CHECK(output_path("Control.Applicative.Successors") == "Control/Applicative/Successors.v");
  CHECK(output_path("Map") == "Map.v");
}

TEST_CASE("a run without inputs fails") {
  RunConfig cfg;
  cfg.out_dir = tztest::scratch_dir("no-inputs");
  RunResult r = run(cfg);
  CHECK(r.exit_code == 1);
  CHECK_FALSE(r.errors.empty());
}

TEST_CASE("strict mode turns axioms into exit code 2") {
  RunConfig cfg;
  cfg.inputs = {tztest::fixture("Head.hs")};
  cfg.out_dir = tztest::scratch_dir("strict");
  CHECK(run(cfg).exit_code == 0);
  cfg.strict = true;
  RunResult r = run(cfg);
  CHECK(r.exit_code == 2);
  CHECK(report_text(r).find("axiom patternFailure (patternFailure) used by head") != std::string::npos);
}

TEST_CASE("a parse error fails the run and names the file") {
  std::string dir = tztest::scratch_dir("bad-input");
  std::string path = dir + "/Bad.hs";
  {
    std::FILE* f = std::fopen(path.c_str(), "w");
    std::fputs("module Bad where\nf x = (x\n", f);
    std::fclose(f);
  }
  RunConfig cfg;
  cfg.inputs = {path};
  cfg.out_dir = dir;
  RunResult r = run(cfg);
  CHECK(r.exit_code == 1);
  REQUIRE_FALSE(r.errors.empty());
  CHECK(r.errors[0].file == path);
  CHECK(r.errors[0].loc.line == 2);
}

TEST_CASE("imported modules are translated before their importers") {
  tztest::Corpus c = tztest::full_corpus();
  std::reverse(c.inputs.begin(), c.inputs.end());
  RunResult r = tztest::run_corpus(c, tztest::scratch_dir("order"));
  REQUIRE(r.exit_code == 0);
  CHECK(r.modules.front().module == "GHC.Base");
  auto pos = [&](const std::string& m) {
    for (size_t k = 0; k < r.modules.size(); ++k)
      if (r.modules[k].module == m) return k;
    return r.modules.size();
  };
  CHECK(pos("Outputable") < pos("Bag"));
}

TEST_CASE("the json report lists modules, axioms and totals") {
  RunConfig cfg;
  cfg.inputs = {tztest::fixture("Head.hs"), tztest::fixture("Map.hs")};
  cfg.out_dir = tztest::scratch_dir("report");
  cfg.report = true;
  RunResult r = run(cfg);
  auto doc = nlohmann::json::parse(tztest::read_text(cfg.out_dir + "/totalizer-report.json"));
  CHECK(doc["version"] == 1);
  CHECK(doc["exit_code"] == 0);
  CHECK(doc["totals"]["modules"] == 2);
  CHECK(doc["totals"]["axioms"] == 1);
  bool head = false;
  for (const auto& m : doc["modules"])
    if (m["module"] == "Head") head = m["axioms"][0]["category"] == "patternFailure";
  CHECK(head);
  CHECK(fs::exists(cfg.out_dir + "/support/HsToCoqSupport.v"));
  CHECK(fs::exists(cfg.out_dir + "/Map.iface.json"));
}

TEST_CASE("interfaces from an earlier run satisfy a later one") {
  std::string base = tztest::scratch_dir("iface-base");
  RunConfig first;
  first.inputs = {tztest::fixture("GHC/Base.hs")};
  first.edit_files = {tztest::fixture("base.edits")};
  first.out_dir = base;
  REQUIRE(run(first).exit_code == 0);
  RunConfig second;
  second.inputs = {tztest::fixture("Control/Applicative/Successors.hs")};
  second.edit_files = {tztest::fixture("base.edits")};
  second.out_dir = tztest::scratch_dir("iface-succs");
  second.iface_dir = base;
  RunResult r = run(second);
  CHECK(r.exit_code == 0);
  std::string text = tztest::read_text(second.out_dir + "/Control/Applicative/Successors.v");
  CHECK(tztest::golden_mismatch(tztest::read_text(tztest::fixture("golden/succs.v")), text) == "");
}

TEST_CASE("c api session lifecycle") {
  tz_session* s = tz_session_create();
  REQUIRE(s != nullptr);
  CHECK(std::string(tz_version()).size() > 0);
  CHECK(tz_add_input(nullptr, "x") == TZ_ERR_ARGUMENT);
  CHECK(tz_add_input(s, nullptr) == TZ_ERR_ARGUMENT);
  CHECK(tz_load_edits_text(s, "bogus line\n") == TZ_ERR_EDITS);
  CHECK(std::string(tz_last_error(s)).find("EditParseError at 1:1") != std::string::npos);
  CHECK(tz_load_edits_file(s, "/nonexistent/x.edits") == TZ_ERR_EDITS);
  CHECK(tz_load_edits_text(s, "nonterminating loop\n") == TZ_OK);

  char* out = nullptr;
  CHECK(tz_translate_source(s, "module M where\nloop :: Int -> Int\nloop n = loop n\n", &out) == TZ_OK);
  REQUIRE(out != nullptr);
  CHECK(std::string(out).find("unsafeFix (fun loop =>") != std::string::npos);
  tz_string_free(out);
  out = nullptr;
  CHECK(tz_translate_source(s, "module M where\nf = (\n", &out) == TZ_ERR_PARSE);
  CHECK(out == nullptr);

  std::string dir = tztest::scratch_dir("capi");
  CHECK(tz_add_input(s, tztest::fixture("Head.hs").c_str()) == TZ_OK);
  CHECK(tz_set_output_dir(s, dir.c_str()) == TZ_OK);
  CHECK(tz_set_strict(s, 1) == TZ_OK);
  int code = -1;
  CHECK(tz_run(s, &code) == TZ_OK);
  CHECK(code == 2);
  CHECK(std::string(tz_report_text(s)).find("Head") != std::string::npos);
  CHECK(nlohmann::json::parse(tz_report_json(s))["exit_code"] == 2);
  tz_session_destroy(s);
  tz_session_destroy(nullptr);
}
