// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "totalizer/qualname.hpp"
#include "totalizer/syntax.hpp"

namespace totalizer {

struct ConInfo {
  QualName name;
  QualName type;
  int arity = 0;
  std::vector<std::string> fields;  // empty for positional constructors
  std::string rendered;
};

struct TypeInfo {
  QualName name;
  std::vector<std::string> params;
  std::vector<QualName> constructors;  // empty for synonyms and abstract types
  std::string rendered;
};

struct MethodInfo {
  QualName name;
  QualType type;  // as declared in the class, mentioning the class parameter
  std::string rendered;
};

struct ClassInfo {
  QualName name;
  std::string param;
  std::vector<QualName> supers;
  std::vector<MethodInfo> methods;       // declaration order
  std::map<std::string, Binding> defaults;  // by method base name, names resolved
  std::string rendered;
  bool cps = false;
};

struct InstanceInfo {
  QualName cls;
  QualName head;  // head type constructor
  std::string name;
};

// Summary of one translated module, read when translating modules that import it.
struct ModuleIface {
  std::string module;
  std::map<QualName, std::string> values;  // value names (functions, methods, fields) to rendered base
  std::map<QualName, TypeInfo> types;
  std::map<QualName, ConInfo> constructors;
  std::map<QualName, ClassInfo> classes;
  std::vector<InstanceInfo> instances;

  std::optional<std::string> rendered(const QualName& q) const;
};

std::string write_iface(const ModuleIface& iface);
ModuleIface read_iface(const std::string& text);

// Summaries of prelude modules built from embedded source, used when no interface file is present.
const std::map<std::string, ModuleIface>& builtin_ifaces();

// All interfaces visible to a translation, by module name.
class IfaceTable {
 public:
  explicit IfaceTable(bool with_builtins = true) : with_builtins_(with_builtins) {}
  void add(ModuleIface iface);
  const ModuleIface* find(const std::string& module) const;
  const ClassInfo* find_class(const QualName& q) const;
  const ConInfo* find_constructor(const QualName& q) const;
  const TypeInfo* find_type(const QualName& q) const;
  std::optional<std::string> rendered(const QualName& q) const;
  // Loads `<dir>/<A/B/C>.iface.json` when present.
  bool load_from(const std::string& dir, const std::string& module);
  const std::map<std::string, ModuleIface>& all() const { return ifaces_; }

 private:
  std::map<std::string, ModuleIface> ifaces_;
  bool with_builtins_;
};

class NameEnv;
class EditSet;

// Interface of a resolved module. Names are rendered through `env`.
ModuleIface summarize_module(const SurfaceModule& m, const NameEnv& env, const EditSet* edits);

// `instance_<Class>_<Head>` naming shared by translation and skip edits.
std::string instance_name(const QualName& cls, const Type& head);
QualName instance_head(const Type& head);

std::string module_path(const std::string& module, const std::string& ext);

}  // namespace totalizer
