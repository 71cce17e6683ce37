// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "totalizer/edits.hpp"
#include "totalizer/iface.hpp"
#include "totalizer/resolve.hpp"
#include "totalizer/syntax.hpp"
#include "totalizer/vernac.hpp"

namespace totalizer {

struct AxiomEntry {
  std::string name;
  std::string category;  // "patternFailure", "unsafeFix" or "unsupported"
  std::string reason;
  std::vector<std::string> used_by;  // sentences referring to an injected axiom
};

struct ModuleReport {
  std::string module;
  std::string source;
  std::string output;  // path of the `.v` file, empty when the module was skipped
  bool skipped = false;
  int sentences = 0;
  std::vector<std::string> definitions;
  std::vector<AxiomEntry> axioms;
  std::vector<std::string> skipped_names;
  std::vector<std::string> reordered;  // sentences emitted ahead of an earlier source declaration
  std::vector<Diagnostic> diagnostics;
};

struct ModuleResult {
  VernFile file;
  std::string text;
  ModuleIface iface;
  ModuleReport report;
};

// Translates one parsed module. `ifaces` holds the interfaces of everything it imports.
ModuleResult translate_module(SurfaceModule m, const std::string& source, const IfaceTable& ifaces,
                              const EditSet& edits);

// Interface of a module that is not translated, such as one skipped by an edit.
ModuleIface module_interface(SurfaceModule m, const IfaceTable& ifaces, const EditSet& edits);

// Parses and translates module source text.
ModuleResult translate_source(std::string_view source, const std::string& source_name, const IfaceTable& ifaces,
                              const EditSet& edits);

// Rendered names an interface makes available to importing files.
std::set<std::string> exported_names(const ModuleIface& iface);

}  // namespace totalizer
