// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "totalizer/desugar.hpp"
#include "totalizer/vernac.hpp"

namespace totalizer {

struct ClassContext {
  NameEnv& env;
  Desugarer& ds;
  const IfaceTable& ifaces;   // includes the module's own classes
  const EditSet& edits;
};

// The class sentence, its notations, or the continuation-passing encoding.
std::vector<VernSentence> translate_class(const ClassDecl& c, const ClassInfo& info, ClassContext& cx);

// Method definitions followed by the instance sentence. Methods that fail become axioms.
std::vector<VernSentence> translate_instance(const InstanceDecl& inst, ClassContext& cx);

// Structural instance for a derivable class, or nothing when the class is not derivable.
std::optional<InstanceDecl> derive_instance(const DataDecl& d, const QualName& cls);

// Instance head `T a b` of a data type.
Type data_head(const DataDecl& d);

}  // namespace totalizer
