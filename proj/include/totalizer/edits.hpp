// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "totalizer/error.hpp"
#include "totalizer/qualname.hpp"

namespace totalizer {

struct Edit {
  enum Kind {
    SkipModule, SkipValue, SkipClass, SkipInstance, SkipMethod, RenameType, RenameValue,
    Redefine, Order, Nonterminating, Termination, CpsClass
  } kind = SkipValue;
  QualName name;                   // subject of the edit; for SkipMethod the class
  std::string module;              // SkipModule
  std::string method;              // SkipMethod
  std::string target;              // Rename target identifier, Redefine defined name
  std::string text;                // Redefine sentence, Termination payload
  std::vector<std::string> order;  // Order
  int line = 0;
};

struct RecursionMode {
  enum Kind { Structural, UnsafeFix, ProgramFixpoint } kind = Structural;
  std::string measure;  // ProgramFixpoint payload, verbatim
};

// Immutable after loading. Names written without a module in the edits file match in every module.
class EditSet {
 public:
  // Adds one edit; a rename conflicting with an earlier one for the same name is an error.
  void add(Edit e);
  // Edits from a later file shadow conflicting ones already present.
  void merge(const EditSet& later);

  bool skip_module(const std::string& module) const;
  bool skip_value(const QualName& q) const;
  bool skip_class(const QualName& q) const;
  bool skip_instance(const std::string& module, const std::string& instance_name) const;
  bool skip_method(const QualName& cls, const std::string& method) const;

  std::optional<std::string> user_rename(Namespace ns, const QualName& q) const;
  // User rename if present, else the built-in prelude table.
  std::optional<std::string> lookup_rename(Namespace ns, const QualName& q) const;

  RecursionMode recursion_mode(const QualName& q) const;
  bool cps_class(const QualName& q) const;

  // Redefinitions applying to `module`, keyed by defined name.
  std::vector<const Edit*> redefines(const std::string& module) const;
  std::vector<std::vector<std::string>> orders() const;
  std::set<std::string> skipped_modules() const;

  const std::vector<Edit>& edits() const { return edits_; }
  bool empty() const { return edits_.empty(); }

  // Canonical text; parse_edits(print()) yields an equal set.
  std::string print() const;

 private:
  bool matches(const QualName& pattern, const QualName& q) const;
  const Edit* find(Edit::Kind kind, const QualName& q) const;

  std::vector<Edit> edits_;
};

EditSet parse_edits(std::string_view text);
EditSet load_edits_file(const std::string& path);

// Parses `A.B.name` as written in edits files; a bare name has an empty module.
QualName parse_edit_name(const std::string& text, Namespace ns);

}  // namespace totalizer
