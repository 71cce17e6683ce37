// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <set>
#include <string>
#include <vector>

namespace totalizer {

struct CoreBinder;

// Target-side types over rendered identifiers.
struct CoreType {
  enum Kind { Var, Con, App, Fun, Prod, Sort, Forall } kind = Var;
  std::string name;                  // Var, Con; Sort is `Type`
  std::vector<CoreType> args;        // App: [f, x]; Fun: [from, to]; Prod: [l, r]; Forall: [body]
  std::vector<CoreBinder> binders;   // Forall
  bool operator==(const CoreType&) const;
};

struct CorePat {
  enum Kind { Var, Wild, Con, Num, As } kind = Wild;
  std::string name;             // Var binder, Con constructor, As binder
  std::string lit;              // Num
  std::vector<CorePat> args;    // Con arguments, As inner pattern
  bool operator==(const CorePat&) const = default;
};

// `x`, `{a}`, `(x : T)`, `{a : T}` or a generalized `` `{C a} `` whose constraint is `type`.
struct CoreBinder {
  std::string name;
  bool implicit = false;
  bool generalized = false;
  std::vector<CoreType> type;   // optional annotation
  bool operator==(const CoreBinder&) const = default;
};

inline bool CoreType::operator==(const CoreType& o) const {
  return kind == o.kind && name == o.name && args == o.args && binders == o.binders;
}

using CoreParam = CoreBinder;

struct CoreBranch;

// Guard-free term language shaped like the target's terms.
struct CoreTerm {
  enum Kind { Var, App, Fun, Fix, Match, Let, If, Failure, UnsafeFix, Num, Annot } kind = Var;
  std::string name;                 // Var; Fix and UnsafeFix self name; Let binder
  std::vector<CoreParam> params;    // Fun, Fix
  std::vector<CoreTerm> args;       // App [f, x]; Fun/Fix/UnsafeFix [body]; Let [bound, body]; If [c, t, e];
                                    // Match scrutinees; Annot [e]
  std::vector<CoreBranch> branches; // Match
  std::string lit;                  // Num
  std::vector<CoreType> type;       // Annot: [type]

  bool operator==(const CoreTerm&) const;
};

struct CoreBranch {
  std::vector<CorePat> pats;
  CoreTerm body;
  bool operator==(const CoreBranch&) const = default;
};

inline bool CoreTerm::operator==(const CoreTerm& o) const {
  return kind == o.kind && name == o.name && params == o.params && args == o.args && branches == o.branches &&
         lit == o.lit && type == o.type;
}

CoreTerm cvar(std::string name);
CoreTerm capp(CoreTerm f, CoreTerm x);
CoreTerm capps(CoreTerm f, std::vector<CoreTerm> xs);
CoreTerm cfun(std::vector<std::string> params, CoreTerm body);
CoreTerm clet(std::string name, CoreTerm bound, CoreTerm body);
CoreTerm cif(CoreTerm c, CoreTerm t, CoreTerm e);
CoreTerm cfailure();
CoreTerm cmatch(std::vector<CoreTerm> scruts, std::vector<CoreBranch> branches);
CorePat pvar(std::string name);
CorePat pwild();
CorePat pcon(std::string name, std::vector<CorePat> args);
CoreType tvar(std::string name);
CoreType tcon(std::string name);
CoreType tapp(CoreType f, CoreType x);
CoreType tfun(CoreType a, CoreType b);
CoreType tforall(std::vector<CoreBinder> binders, CoreType body);
CoreBinder implicit_binder(std::string name);
CoreBinder generalized_binder(CoreType constraint);

// Concrete syntax. `indent` is the column continuation lines start at.
std::string print_term(const CoreTerm& t, int indent = 0);
std::string print_core_type(const CoreType& t);
std::string print_core_pattern(const CorePat& p);
std::string print_binder(const CoreBinder& b);
std::string print_binders(const std::vector<CoreBinder>& bs);  // each preceded by a space

// Identifiers referenced and not bound within the term.
void free_names(const CoreTerm& t, std::set<std::string>& out);
void free_names(const CoreType& t, std::set<std::string>& out);
void pattern_binders(const CorePat& p, std::set<std::string>& out);

// Type variables of a type in order of first occurrence.
std::vector<std::string> type_vars(const CoreType& t);

// Counts of structural features, used by tests.
int count_kind(const CoreTerm& t, CoreTerm::Kind k);

}  // namespace totalizer
