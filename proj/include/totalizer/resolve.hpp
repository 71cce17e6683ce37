// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "totalizer/iface.hpp"
#include "totalizer/syntax.hpp"

namespace totalizer {

struct Diagnostic {
  std::string severity;  // "error", "warning" or "note"
  std::string file;
  Loc loc;
  std::string message;
};

// Rewrites every name in the module to its original qualified form. Local binders keep an empty
// module. Names that cannot be resolved stay unqualified and are reported.
std::vector<Diagnostic> resolve_module(SurfaceModule& m, const IfaceTable& ifaces);

// Resolves a binding whose free names are already written fully qualified (interface defaults).
void resolve_qualified_binding(Binding& b, const std::string& module, const IfaceTable& ifaces);

// Resolves a type whose constructor names are already fully qualified.
void resolve_qualified_type(QualType& t);

}  // namespace totalizer
