// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "totalizer/translate.hpp"

namespace totalizer {

struct RunConfig {
  std::vector<std::string> inputs;      // `.hs` paths
  std::vector<std::string> edit_files;  // loaded in order, later files shadow earlier ones
  std::vector<std::string> edit_texts;  // applied after the files
  std::string out_dir = ".";
  std::string iface_dir;                // interfaces of imported modules that are not inputs
  bool emit_iface = true;
  bool strict = false;                  // any axiom makes the run fail with exit code 2
  bool report = false;                  // also write `<out_dir>/totalizer-report.json`
};

struct RunResult {
  int exit_code = 0;
  std::vector<ModuleReport> modules;  // translation order
  std::vector<Diagnostic> errors;     // problems that stop a module or the run
  std::vector<std::string> written;   // files written, in order
};

RunResult run(const RunConfig& config);

// Human-readable summary with diagnostics sorted by file and line.
std::string report_text(const RunResult& r);
// Machine-readable report; the layout is described in docs/report-format.md.
std::string report_json(const RunResult& r);

// Output path of a module's file relative to the output root: `A.B.C` gives `A/B/C.v`.
std::string output_path(const std::string& module);

}  // namespace totalizer
