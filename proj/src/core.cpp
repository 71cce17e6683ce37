// SPDX-License-Identifier: Apache-2.0
#include "totalizer/core.hpp"

#include <algorithm>

namespace totalizer {

CoreTerm cvar(std::string name) {
  CoreTerm t;
  t.kind = CoreTerm::Var;
  t.name = std::move(name);
  return t;
}

CoreTerm capp(CoreTerm f, CoreTerm x) {
  CoreTerm t;
  t.kind = CoreTerm::App;
  t.args.push_back(std::move(f));
  t.args.push_back(std::move(x));
  return t;
}

CoreTerm capps(CoreTerm f, std::vector<CoreTerm> xs) {
  for (auto& x : xs) f = capp(std::move(f), std::move(x));
  return f;
}

CoreTerm cfun(std::vector<std::string> params, CoreTerm body) {
  if (params.empty()) return body;
  CoreTerm t;
  t.kind = CoreTerm::Fun;
  for (auto& p : params) t.params.push_back(CoreParam{std::move(p), false, false, {}});
  t.args.push_back(std::move(body));
  return t;
}

CoreTerm clet(std::string name, CoreTerm bound, CoreTerm body) {
  CoreTerm t;
  t.kind = CoreTerm::Let;
  t.name = std::move(name);
  t.args.push_back(std::move(bound));
  t.args.push_back(std::move(body));
  return t;
}

CoreTerm cif(CoreTerm c, CoreTerm th, CoreTerm el) {
  CoreTerm t;
  t.kind = CoreTerm::If;
  t.args.push_back(std::move(c));
  t.args.push_back(std::move(th));
  t.args.push_back(std::move(el));
  return t;
}

CoreTerm cfailure() {
  CoreTerm t;
  t.kind = CoreTerm::Failure;
  return t;
}

CoreTerm cmatch(std::vector<CoreTerm> scruts, std::vector<CoreBranch> branches) {
  CoreTerm t;
  t.kind = CoreTerm::Match;
  t.args = std::move(scruts);
  t.branches = std::move(branches);
  return t;
}

CorePat pvar(std::string name) {
  CorePat p;
  p.kind = CorePat::Var;
  p.name = std::move(name);
  return p;
}

CorePat pwild() { return CorePat{}; }

CorePat pcon(std::string name, std::vector<CorePat> args) {
  CorePat p;
  p.kind = CorePat::Con;
  p.name = std::move(name);
  p.args = std::move(args);
  return p;
}

CoreType tvar(std::string name) {
  CoreType t;
  t.kind = CoreType::Var;
  t.name = std::move(name);
  return t;
}

CoreType tcon(std::string name) {
  CoreType t;
  t.kind = CoreType::Con;
  t.name = std::move(name);
  return t;
}

CoreType tapp(CoreType f, CoreType x) {
  CoreType t;
  t.kind = CoreType::App;
  t.args.push_back(std::move(f));
  t.args.push_back(std::move(x));
  return t;
}

CoreType tfun(CoreType a, CoreType b) {
  CoreType t;
  t.kind = CoreType::Fun;
  t.args.push_back(std::move(a));
  t.args.push_back(std::move(b));
  return t;
}

CoreType tforall(std::vector<CoreBinder> binders, CoreType body) {
  if (binders.empty()) return body;
  CoreType t;
  t.kind = CoreType::Forall;
  t.binders = std::move(binders);
  t.args.push_back(std::move(body));
  return t;
}

CoreBinder implicit_binder(std::string name) { return CoreBinder{std::move(name), true, false, {}}; }

CoreBinder generalized_binder(CoreType constraint) { return CoreBinder{"", true, true, {std::move(constraint)}}; }

// ------------------------------------------------------------------ types

namespace {

std::string type_at(const CoreType& t, int prec);

// Precedence levels: -1 forall, 0 arrow, 1 product, 2 application, 3 atom.
std::string type_at(const CoreType& t, int prec) {
  std::string s;
  int mine = 3;
  switch (t.kind) {
    case CoreType::Forall:
      mine = -1;
      s = "forall" + print_binders(t.binders) + ", " + type_at(t.args[0], -1);
      break;
    case CoreType::Var:
    case CoreType::Con:
      return t.name;
    case CoreType::Sort:
      return "Type";
    case CoreType::App:
      mine = 2;
      s = type_at(t.args[0], 2) + " " + type_at(t.args[1], 3);
      break;
    case CoreType::Prod:
      mine = 1;
      s = type_at(t.args[0], 1) + " * " + type_at(t.args[1], 2);
      break;
    case CoreType::Fun:
      mine = 0;
      s = type_at(t.args[0], 1) + " -> " + type_at(t.args[1], 0);
      break;
  }
  return mine < prec ? "(" + s + ")" : s;
}

}  // namespace

std::string print_core_type(const CoreType& t) { return type_at(t, -1); }

std::string print_binder(const CoreBinder& b) {
  if (b.generalized) return "`{" + print_core_type(b.type[0]) + "}";
  if (b.type.empty()) return b.implicit ? "{" + b.name + "}" : b.name;
  std::string inner = b.name + " : " + print_core_type(b.type[0]);
  return b.implicit ? "{" + inner + "}" : "(" + inner + ")";
}

std::string print_binders(const std::vector<CoreBinder>& bs) {
  std::string s;
  for (const auto& b : bs) s += " " + print_binder(b);
  return s;
}

std::vector<std::string> type_vars(const CoreType& t) {
  std::vector<std::string> out;
  std::vector<std::string> bound;
  auto walk = [&](auto&& self, const CoreType& x) -> void {
    if (x.kind == CoreType::Var && std::find(out.begin(), out.end(), x.name) == out.end() &&
        std::find(bound.begin(), bound.end(), x.name) == bound.end())
      out.push_back(x.name);
    size_t mark = bound.size();
    for (const auto& b : x.binders)
      if (!b.generalized) bound.push_back(b.name);
    for (const auto& a : x.args) self(self, a);
    bound.resize(mark);
  };
  walk(walk, t);
  return out;
}

// --------------------------------------------------------------- patterns

namespace {

std::string pattern_at(const CorePat& p, bool arg) {
  switch (p.kind) {
    case CorePat::Var:
      return p.name;
    case CorePat::Wild:
      return "_";
    case CorePat::Num:
      return p.lit;
    case CorePat::As:
      return "(" + pattern_at(p.args[0], false) + " as " + p.name + ")";
    case CorePat::Con: {
      if (p.args.empty()) return p.name;
      std::string s = p.name;
      for (const auto& a : p.args) s += " " + pattern_at(a, true);
      return arg ? "(" + s + ")" : s;
    }
  }
  return "";
}

}  // namespace

std::string print_core_pattern(const CorePat& p) { return pattern_at(p, false); }

// ------------------------------------------------------------------ terms

namespace {

bool atomic(const CoreTerm& t) {
  switch (t.kind) {
    case CoreTerm::Var:
    case CoreTerm::Failure:
    case CoreTerm::Annot:
      return true;
    case CoreTerm::Num:
      return t.lit.empty() || t.lit[0] != '-';
    default:
      return false;
  }
}

std::string pad(int n) { return std::string(static_cast<size_t>(std::max(n, 0)), ' '); }

std::string term(const CoreTerm& t, int ind);

std::string arg_term(const CoreTerm& t, int ind) { return atomic(t) ? term(t, ind) : "(" + term(t, ind + 1) + ")"; }

std::string params_text(const std::vector<CoreParam>& ps) { return print_binders(ps); }

std::string term(const CoreTerm& t, int ind) {
  switch (t.kind) {
    case CoreTerm::Var:
      return t.name;
    case CoreTerm::Num:
      return t.lit;
    case CoreTerm::Failure:
      return "patternFailure";
    case CoreTerm::Annot:
      return "(" + term(t.args[0], ind + 1) + " : " + print_core_type(t.type[0]) + ")";
    case CoreTerm::App: {
      std::vector<const CoreTerm*> spine;
      const CoreTerm* f = &t;
      while (f->kind == CoreTerm::App) {
        spine.push_back(&f->args[1]);
        f = &f->args[0];
      }
      std::string s = arg_term(*f, ind);
      for (auto it = spine.rbegin(); it != spine.rend(); ++it) s += " " + arg_term(**it, ind);
      return s;
    }
    case CoreTerm::Fun:
      return "fun" + params_text(t.params) + " =>\n" + pad(ind + 2) + term(t.args[0], ind + 2);
    case CoreTerm::Fix:
      return "fix " + t.name + params_text(t.params) + " :=\n" + pad(ind + 2) + term(t.args[0], ind + 2);
    case CoreTerm::UnsafeFix:
      return "unsafeFix (fun " + t.name + " =>\n" + pad(ind + 2) + term(t.args[0], ind + 2) + ")";
    case CoreTerm::Let:
      return "let " + t.name + " :=\n" + pad(ind + 4) + term(t.args[0], ind + 4) + " in\n" + pad(ind) +
             term(t.args[1], ind);
    case CoreTerm::If:
      return "if " + term(t.args[0], ind + 3) + "\n" + pad(ind) + "then " + term(t.args[1], ind + 5) + "\n" +
             pad(ind) + "else " + term(t.args[2], ind + 5);
    case CoreTerm::Match: {
      std::string s = "match ";
      for (size_t i = 0; i < t.args.size(); ++i) s += (i ? ", " : "") + term(t.args[i], ind + 6);
      s += " with";
      for (const auto& b : t.branches) {
        s += "\n" + pad(ind) + "| ";
        for (size_t i = 0; i < b.pats.size(); ++i) s += (i ? ", " : "") + print_core_pattern(b.pats[i]);
        s += " =>\n" + pad(ind + 4) + term(b.body, ind + 4);
      }
      return s + "\n" + pad(ind) + "end";
    }
  }
  return "";
}

}  // namespace

std::string print_term(const CoreTerm& t, int indent) { return term(t, indent); }

void pattern_binders(const CorePat& p, std::set<std::string>& out) {
  if (p.kind == CorePat::Var || p.kind == CorePat::As) out.insert(p.name);
  for (const auto& a : p.args) pattern_binders(a, out);
}

namespace {

void pattern_refs(const CorePat& p, std::set<std::string>& out) {
  if (p.kind == CorePat::Con) out.insert(p.name);
  for (const auto& a : p.args) pattern_refs(a, out);
}

}  // namespace

void free_names(const CoreType& t, std::set<std::string>& out) {
  if (t.kind == CoreType::Con) out.insert(t.name);
  for (const auto& b : t.binders)
    for (const auto& ty : b.type) free_names(ty, out);
  for (const auto& a : t.args) free_names(a, out);
}

void free_names(const CoreTerm& t, std::set<std::string>& out) {
  auto minus = [&](const std::set<std::string>& inner, const std::set<std::string>& bound) {
    for (const auto& n : inner)
      if (!bound.count(n)) out.insert(n);
  };
  switch (t.kind) {
    case CoreTerm::Var:
      out.insert(t.name);
      return;
    case CoreTerm::Num:
      return;
    case CoreTerm::Failure:
      out.insert("patternFailure");
      return;
    case CoreTerm::Annot:
      free_names(t.args[0], out);
      free_names(t.type[0], out);
      return;
    case CoreTerm::App:
    case CoreTerm::If:
      for (const auto& a : t.args) free_names(a, out);
      return;
    case CoreTerm::Fun:
    case CoreTerm::Fix:
    case CoreTerm::UnsafeFix: {
      std::set<std::string> inner, bound;
      free_names(t.args[0], inner);
      for (const auto& p : t.params) {
        if (!p.generalized) bound.insert(p.name);
        for (const auto& ty : p.type) free_names(ty, out);
      }
      if (t.kind != CoreTerm::Fun) bound.insert(t.name);
      if (t.kind == CoreTerm::UnsafeFix) out.insert("unsafeFix");
      minus(inner, bound);
      return;
    }
    case CoreTerm::Let: {
      std::set<std::string> inner;
      free_names(t.args[0], out);
      free_names(t.args[1], inner);
      minus(inner, {t.name});
      return;
    }
    case CoreTerm::Match:
      for (const auto& a : t.args) free_names(a, out);
      for (const auto& b : t.branches) {
        std::set<std::string> inner, bound;
        free_names(b.body, inner);
        for (const auto& p : b.pats) {
          pattern_binders(p, bound);
          pattern_refs(p, out);
        }
        minus(inner, bound);
      }
      return;
  }
}

int count_kind(const CoreTerm& t, CoreTerm::Kind k) {
  int n = t.kind == k ? 1 : 0;
  for (const auto& a : t.args) n += count_kind(a, k);
  for (const auto& b : t.branches) n += count_kind(b.body, k);
  return n;
}

}  // namespace totalizer
