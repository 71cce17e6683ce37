// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "totalizer/error.hpp"
#include "totalizer/qualname.hpp"

namespace totalizer {

struct Type {
  enum Kind { Var, Con, App, Fun, List, Tuple, Unit } kind = Var;
  std::string var;
  QualName con;
  std::vector<Type> args;  // App: [f, x]; Fun: [from, to]; List: [elem]; Tuple: elements

  bool operator==(const Type&) const = default;
};

struct Constraint {
  QualName cls;
  Type type;
  bool operator==(const Constraint&) const = default;
};

struct QualType {
  std::vector<Constraint> context;
  Type type;
  bool operator==(const QualType&) const = default;
};

struct Pattern {
  enum Kind { Con, Rec, Var, Wild, Lit, As, Tuple, List, Lazy } kind = Wild;
  QualName name;                 // constructor (Con, Rec) or variable (Var, As)
  std::string lit;               // decimal integer text, possibly negative
  std::vector<Pattern> args;     // Con arguments, Tuple/List elements, Rec field patterns, As/Lazy inner
  std::vector<QualName> fields;  // Rec: field names parallel to args
  bool wildcard = false;         // Rec: `{..}`
  Loc loc;

  bool operator==(const Pattern& o) const {
    return kind == o.kind && name == o.name && lit == o.lit && args == o.args && fields == o.fields &&
           wildcard == o.wildcard;
  }
};

struct Binding;
struct Alt;
struct Stmt;

struct Expr {
  enum Kind {
    Var, Con, Lit, App, OpApp, Neg, Lambda, Let, If, Case, Do, ListComp,
    RecCon, RecUpdate, Tuple, List, EnumFrom, TypeAnnot, Bottom
  } kind = Var;
  QualName name;                 // Var, Con, OpApp operator, RecCon constructor
  bool op_con = false;           // OpApp: operator is a constructor
  std::string lit;               // Lit
  std::vector<Expr> args;        // subexpressions, see parser for per-kind layout
  std::vector<Pattern> pats;     // Lambda parameters
  std::vector<Binding> binds;    // Let
  std::vector<Alt> alts;         // Case
  std::vector<Stmt> stmts;       // Do statements, ListComp qualifiers
  std::vector<QualName> fields;  // RecCon/RecUpdate field names parallel to args (after the record for update)
  bool wildcard = false;         // RecCon `{..}`
  int section = 0;               // Lambda from an operator section: 1 left `(e op)`, 2 right `(op e)`
  std::vector<bool> enum_parts;  // EnumFrom: which of then/to are present
  QualType type;                 // TypeAnnot
  Loc loc;
};

struct Stmt {
  enum Kind { Exp, Bind, Let } kind = Exp;  // boolean guard, pattern guard / generator, let
  Pattern pat;
  Expr expr;
  std::vector<Binding> binds;
};

struct GuardedRhs {
  std::vector<Stmt> guards;
  Expr body;
};

struct Rhs {
  std::vector<GuardedRhs> grhss;
  std::vector<Binding> where;
};

struct Equation {
  std::vector<Pattern> params;
  Rhs rhs;
  Loc loc;
};

struct Alt {
  Pattern pat;
  Rhs rhs;
  Loc loc;
};

struct Binding {
  enum Kind { Fun, Pat, Sig } kind = Fun;
  QualName name;                 // Fun
  std::vector<Equation> eqs;     // Fun
  Pattern pat;                   // Pat
  Rhs rhs;                       // Pat
  std::vector<QualName> names;   // Sig
  QualType sig;                  // Sig
  bool infix = false;            // Fun defined with infix syntax
  Loc loc;
};

struct ConDecl {
  QualName name;
  std::vector<Type> args;
  std::vector<std::string> fields;  // empty for positional constructors, else parallel to args
  Loc loc;
};

struct DataDecl {
  QualName name;
  std::vector<std::string> params;
  std::vector<ConDecl> cons;
  std::vector<QualName> deriving;
  bool newtype = false;
};

struct TypeSynonym {
  QualName name;
  std::vector<std::string> params;
  Type rhs;
};

struct ClassDecl {
  QualName name;
  std::vector<Constraint> supers;
  std::string param;
  std::vector<Binding> sigs;      // Sig bindings, declaration order
  std::vector<Binding> defaults;  // Fun bindings
};

struct InstanceDecl {
  QualName cls;
  Type head;
  std::vector<Constraint> context;
  std::vector<Binding> methods;
  bool derived = false;
};

struct TypeSig {
  std::vector<QualName> names;
  QualType type;
};

struct FunBind {
  Binding bind;  // kind Fun
};

struct UnsupportedDecl {
  std::string name;
  Namespace ns = Namespace::Value;
  std::string raw;
  std::string reason;
};

struct Decl {
  std::variant<DataDecl, TypeSynonym, ClassDecl, InstanceDecl, TypeSig, FunBind, UnsupportedDecl> v;
  Loc loc;
};

struct ImportItem {
  std::string name;
  bool all = false;                // T(..)
  std::vector<std::string> subs;   // T(A, B)
};

struct Import {
  std::string module;
  bool qualified = false;
  std::string alias;
  bool has_list = false;
  bool hiding = false;
  std::vector<ImportItem> items;
  Loc loc;
};

enum class Assoc { Left, Right, None };

struct Fixity {
  Assoc assoc = Assoc::Left;
  int prec = 9;
};

struct SurfaceModule {
  std::string name;
  std::vector<Import> imports;
  std::vector<Decl> decls;
  std::map<std::string, Fixity> fixities;  // declared in this module, keyed by operator base name
};

// Expression constructors used by the parser and by passes that synthesize code.
Expr mk_var(QualName q, Loc loc = {});
Expr mk_con(QualName q, Loc loc = {});
Expr mk_lit(std::string digits, Loc loc = {});
Expr mk_app(Expr f, Expr x);
Expr mk_apps(Expr f, std::vector<Expr> xs);
Expr mk_opapp(Expr l, QualName op, bool is_con, Expr r);
Pattern mk_pvar(std::string name, Loc loc = {});
Pattern mk_pwild();
Pattern mk_pcon(QualName q, std::vector<Pattern> args);
QualName local_name(std::string base);

}  // namespace totalizer
