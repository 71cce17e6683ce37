// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <string>

namespace totalizer {

enum class Namespace { Type, Value, Constructor, Class };

const char* namespace_name(Namespace ns);

// Fully qualified Haskell name. An empty module marks a local binder.
struct QualName {
  std::string module;
  std::string base;
  Namespace ns = Namespace::Value;

  bool local() const { return module.empty(); }
  std::string str() const { return module.empty() ? base : module + "." + base; }

  auto operator<=>(const QualName&) const = default;
  bool operator==(const QualName&) const = default;
};

QualName qn(std::string module, std::string base, Namespace ns);

// Splits `A.B.name`, `GHC.Base.>>=`, `GHC.Types.[]` into module path and base.
QualName split_qualified(const std::string& text, Namespace ns);

bool is_symbolic(const std::string& name);
bool is_conid(const std::string& name);

}  // namespace totalizer
