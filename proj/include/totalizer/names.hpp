// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "totalizer/qualname.hpp"
#include "totalizer/syntax.hpp"

namespace totalizer {

class EditSet;

// GHC Z-encoding of an operator: `>>=` becomes `op_zgzgze__`.
std::string z_encode(std::string_view op);

bool is_reserved(const std::string& name);
// Appends a single `_` to target-language keywords.
std::string avoid_reserved(const std::string& name);

// Built-in mapping of Haskell prelude names onto target library names.
std::optional<std::string> prelude_rename(Namespace ns, const QualName& q);

// Identifiers the target language provides without any Require.
const std::set<std::string>& target_builtins();

// Defining module of a well-known prelude name, used when no interface is available.
std::optional<std::string> known_module(Namespace ns, const std::string& base);

// Constructors of the built-in data types, keyed by type, with arities.
struct BuiltinType {
  QualName type;
  std::vector<std::pair<QualName, int>> constructors;
};
const std::vector<BuiltinType>& builtin_types();

// Either identifier is a Haskell constructor rather than a variable.
bool is_constructor_name(const std::string& base);

// Renders names for one module. Fresh names share one counter.
class NameEnv {
 public:
  using IfaceLookup = std::function<std::optional<std::string>(const QualName&)>;

  NameEnv(std::string module, const EditSet* edits, IfaceLookup iface = {});

  const std::string& module() const { return module_; }
  std::string render(const QualName& q) const;
  std::string render_base(const QualName& q) const;  // without the module prefix
  std::string fresh_arg();
  std::string fresh_join();
  void reset_fresh() { counter_ = 0; }
  int counter() const { return counter_; }

  // Module-local renaming such as `Mk_` constructors.
  void add_local_rename(const QualName& q, std::string target);
  void remove_local_rename(const QualName& q) { local_.erase(q); }
  const std::map<QualName, std::string>& local_renames() const { return local_; }

 private:
  std::string module_;
  const EditSet* edits_;
  IfaceLookup iface_;
  std::map<QualName, std::string> local_;
  int counter_ = 0;
};

// Mangled spelling of a base name: operators Z-encoded, keywords suffixed.
std::string mangle(const std::string& base);

// Prefixes `Mk_` to any constructor named like its own type; `taken` are names already defined in the module.
DataDecl rename_constructor_clash(const DataDecl& decl, const std::set<std::string>& taken);

}  // namespace totalizer
