// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "totalizer/totalizer.h"

int main(int argc, char** argv) {
  CLI::App app{"Translate total Haskell modules into Coq vernacular", "totalizer"};
  std::vector<std::string> edits, inputs;
  std::string out_dir = ".", iface_dir;
  bool strict = false, report = false;
  app.add_option("-e,--edits", edits, "Edits file; may be repeated, later files win")
      ->check(CLI::ExistingFile)
      ->allow_extra_args(false);
  app.add_option("-o,--output", out_dir, "Output root directory")->capture_default_str();
  app.add_option("--iface-dir", iface_dir, "Directory of interface files for imported modules");
  app.add_flag("--strict", strict, "Exit with status 2 when any axiom is emitted");
  app.add_flag("--report", report, "Also write totalizer-report.json to the output directory");
  app.add_option("inputs", inputs, "Haskell source files");
  app.set_version_flag("--version", std::string(tz_version()));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (inputs.empty()) {
    std::fputs(app.help().c_str(), stderr);
    std::fputs("error: no input files\n", stderr);
    return 1;
  }

  tz_session* s = tz_session_create();
  if (!s) return 1;
  auto check = [&](tz_status st) {
    if (st == TZ_OK) return true;
    std::fprintf(stderr, "error: %s\n", tz_last_error(s));
    return false;
  };
  bool ok = true;
  for (const auto& e : edits) ok = ok && check(tz_load_edits_file(s, e.c_str()));
  for (const auto& i : inputs) ok = ok && check(tz_add_input(s, i.c_str()));
  ok = ok && check(tz_set_output_dir(s, out_dir.c_str()));
  if (!iface_dir.empty()) ok = ok && check(tz_set_iface_dir(s, iface_dir.c_str()));
  ok = ok && check(tz_set_strict(s, strict)) && check(tz_set_report(s, report));
  int exit_code = 1;
  if (ok) {
    tz_status st = tz_run(s, &exit_code);
    std::fputs(tz_report_text(s), stdout);
    if (st != TZ_OK && st != TZ_ERR_RUN) {
      check(st);
      exit_code = 1;
    }
  }
  tz_session_destroy(s);
  return exit_code;
}
