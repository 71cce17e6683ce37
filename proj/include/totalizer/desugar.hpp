// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "totalizer/core.hpp"
#include "totalizer/edits.hpp"
#include "totalizer/iface.hpp"
#include "totalizer/names.hpp"
#include "totalizer/syntax.hpp"

namespace totalizer {

// A function lowered to parameters and a guard-free body.
struct LoweredFun {
  std::vector<std::string> params;
  CoreTerm body;
};

// Lowers resolved surface syntax to core terms for one module.
class Desugarer {
 public:
  Desugarer(NameEnv& env, const IfaceTable& ifaces);

  // Registers a data type of the module being translated, after constructor renaming.
  void add_data(const DataDecl& d);

  // Accessor functions and their signatures for the record fields of `d`.
  std::vector<Decl> record_accessors(const DataDecl& d) const;

  CoreTerm lower_expr(const Expr& e);
  CoreType lower_type(const Type& t) const;
  CorePat lower_pattern(const Pattern& p);

  LoweredFun lower_equations(const std::vector<Equation>& eqs);
  // Wraps a lowered function, tying the knot when `self` occurs free in the body.
  CoreTerm close_function(LoweredFun f, const std::string& self, const RecursionMode& mode);
  // `lower_equations` then `close_function`, with unused pattern variables cleared.
  CoreTerm lower_binding(const Binding& b, const std::string& self, const RecursionMode& mode);

  // Wildcards over `rows` would be redundant.
  bool exhaustive(const std::vector<std::vector<CorePat>>& rows) const;

  NameEnv& env() { return env_; }

 private:
  struct MAlt {
    std::vector<CorePat> pats;
    Rhs rhs;
    bool can_fail = true;
  };
  struct ConEntry {
    std::vector<std::string> fields;
    int arity = 0;
    QualName type;
  };
  struct Signature {
    std::vector<std::pair<std::string, int>> cons;
  };

  CoreTerm lower_alts(const std::vector<CoreTerm>& scruts, std::vector<MAlt> alts, const CoreTerm& ft);
  CoreTerm make_case(const std::vector<CoreTerm>& scruts, const std::vector<MAlt>& group, const CoreTerm& ft);
  CoreTerm lower_rhs(const Rhs& rhs, const CoreTerm& ft);
  CoreTerm lower_guards(const GuardedRhs& g, size_t i, const CoreTerm& ft);
  CoreTerm lower_binds(const std::vector<Binding>& binds, CoreTerm body);
  CoreTerm lower_do(const std::vector<Stmt>& stmts, size_t i);
  CoreTerm lower_comp(const Expr& e, size_t i);
  CoreTerm lower_case(const Expr& e);
  CoreTerm lower_lambda(const Expr& e);
  CoreTerm lower_reccon(const Expr& e);
  CoreTerm lower_recupdate(const Expr& e);
  CoreTerm match_one(CoreTerm scrut, const CorePat& p, CoreTerm body, const CoreTerm& ft);
  MAlt make_alt(const std::vector<Pattern>& pats, const Rhs& rhs);
  Pattern strip_literals(const Pattern& p, std::vector<Stmt>& guards);
  CoreTerm with_scrutinee(const Expr& e, const std::function<CoreTerm(const CoreTerm&)>& k);

  std::string var(const std::string& base) const;
  CoreTerm global(const std::string& module, const std::string& base, Namespace ns = Namespace::Value) const;
  std::optional<ConEntry> con_entry(const QualName& con) const;
  std::vector<QualName> constructors_of(const QualName& type) const;
  const Signature* signature(const std::string& rendered_con) const;
  bool useful(const std::vector<std::vector<CorePat>>& rows, size_t width) const;

  NameEnv& env_;
  const IfaceTable& ifaces_;
  std::map<QualName, ConEntry> local_cons_;
  std::map<QualName, std::vector<QualName>> local_types_;
  mutable std::map<std::string, Signature> sigs_;
  mutable bool sigs_built_ = false;
};

// Replaces match-branch pattern variables that the branch body never uses by `_`.
void clear_unused_pattern_vars(CoreTerm& t);

// Converts a surface type with the class parameter substituted by `head`.
Type substitute_type(const Type& t, const std::string& var, const Type& head);

}  // namespace totalizer
