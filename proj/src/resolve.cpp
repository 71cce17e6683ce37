// SPDX-License-Identifier: Apache-2.0
#include "totalizer/resolve.hpp"

#include <set>

#include "totalizer/names.hpp"

namespace totalizer {

namespace {

using Key = std::pair<Namespace, std::string>;

std::optional<QualName> builtin_syntax(Namespace ns, const std::string& base) {
  if (base == "[]" || base == ":") return QualName{"GHC.Types", base, ns};
  if (base == "()" || (base.size() > 2 && base.front() == '(' && base[1] == ',')) return QualName{"GHC.Tuple", base, ns};
  if (base == "->" && ns == Namespace::Type) return QualName{"GHC.Prim", base, ns};
  return std::nullopt;
}

class Resolver {
 public:
  Resolver(std::string module, const IfaceTable& ifaces) : module_(std::move(module)), ifaces_(ifaces) {}

  std::vector<Diagnostic> warnings;
  bool qualified_only = false;

  void add_top(Namespace ns, const std::string& base) { top_[{ns, base}] = QualName{module_, base, ns}; }

  void add_fields(const QualName& con, std::vector<std::string> fields) { fields_[con] = std::move(fields); }

  void add_imports(const std::vector<Import>& imports) {
    for (const auto& im : imports) {
      aliases_[im.alias.empty() ? im.module : im.alias] = im.module;
      if (im.qualified) continue;
      const ModuleIface* ifc = ifaces_.find(im.module);
      std::vector<std::pair<Key, QualName>> names;
      if (ifc) {
        for (const auto& [q, r] : ifc->values) names.push_back({{Namespace::Value, q.base}, q});
        for (const auto& [q, c] : ifc->constructors) names.push_back({{Namespace::Constructor, q.base}, q});
        for (const auto& [q, t] : ifc->types) names.push_back({{Namespace::Type, q.base}, q});
        for (const auto& [q, c] : ifc->classes) names.push_back({{Namespace::Class, q.base}, q});
      }
      auto listed = [&](const Key& k, const QualName& q) {
        for (const auto& it : im.items) {
          if (it.name == k.second) return true;
          if (std::find(it.subs.begin(), it.subs.end(), k.second) != it.subs.end()) return true;
          if (it.all && ifc) {
            QualName owner{q.module, it.name, Namespace::Type};
            if (const TypeInfo* t = ifaces_.find_type(owner))
              for (const auto& c : t->constructors)
                if (c.base == k.second) return true;
            if (auto cit = ifc->classes.find(QualName{q.module, it.name, Namespace::Class}); cit != ifc->classes.end())
              for (const auto& m : cit->second.methods)
                if (m.name.base == k.second) return true;
          }
        }
        return false;
      };
      if (ifc) {
        for (const auto& [k, q] : names) {
          bool in_list = im.has_list ? listed(k, q) : true;
          if (im.hiding) in_list = !listed(k, q);
          if (!im.has_list || in_list) imported_.emplace(k, q);
        }
        if (im.has_list && !im.hiding)
          for (const auto& [con, info] : ifc->constructors)
            if (listed({Namespace::Constructor, con.base}, con))
              for (const auto& f : info.fields) imported_.emplace(Key{Namespace::Value, f}, QualName{con.module, f, Namespace::Value});
        continue;
      }
      if (!im.has_list || im.hiding) continue;
      for (const auto& it : im.items) {
        auto add = [&](Namespace ns, const std::string& base) {
          std::string mod = known_module(ns, base).value_or(im.module);
          imported_.emplace(Key{ns, base}, QualName{mod, base, ns});
        };
        if (is_conid(it.name) && it.name.front() != ':') {
          add(Namespace::Type, it.name);
          add(Namespace::Class, it.name);
          for (const auto& s : it.subs) add(is_conid(s) ? Namespace::Constructor : Namespace::Value, s);
        } else {
          add(is_conid(it.name) ? Namespace::Constructor : Namespace::Value, it.name);
        }
      }
    }
  }

  QualName lookup(Namespace ns, const std::string& qual, const std::string& base, Loc loc, bool locals = true) {
    if (!qual.empty()) {
      auto it = aliases_.find(qual);
      std::string mod = it != aliases_.end() ? it->second : qual;
      if (ifaces_.find(mod) == nullptr) {
        if (auto k = known_module(ns, base); k && mod != module_) {
          // Re-exports such as Data.List.partition refer to their defining module.
          if (it != aliases_.end() || mod == *k || !qualified_only) return QualName{*k, base, ns};
        }
      }
      if (mod == module_) return QualName{module_, base, ns};
      return QualName{mod, base, ns};
    }
    if (locals && ns == Namespace::Value && is_local(base)) return local_name(base);
    if (auto b = builtin_syntax(ns, base)) return *b;
    if (auto it = top_.find({ns, base}); it != top_.end()) return it->second;
    if (auto it = imported_.find({ns, base}); it != imported_.end()) return it->second;
    if (auto k = known_module(ns, base)) return QualName{*k, base, ns};
    if (!qualified_only)
      warnings.push_back({"warning", "", loc, std::string("unresolved ") + namespace_name(ns) + " name '" + base + "'"});
    return QualName{"", base, ns};
  }

  bool is_local(const std::string& base) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it)
      if (it->count(base)) return true;
    return false;
  }

  void push(std::set<std::string> s = {}) { scopes_.push_back(std::move(s)); }
  void pop() { scopes_.pop_back(); }
  void bind(const std::string& n) { scopes_.back().insert(n); }

  // ---------------------------------------------------------------- types

  void type(Type& t) {
    if (t.kind == Type::Con) t.con = lookup(Namespace::Type, t.con.module, t.con.base, {});
    for (auto& a : t.args) type(a);
  }

  void qualtype(QualType& qt) {
    for (auto& c : qt.context) {
      c.cls = lookup(Namespace::Class, c.cls.module, c.cls.base, {});
      type(c.type);
    }
    type(qt.type);
  }

  // ------------------------------------------------------------- patterns

  void pattern(Pattern& p, std::set<std::string>& binders) {
    switch (p.kind) {
      case Pattern::Var:
        binders.insert(p.name.base);
        return;
      case Pattern::As:
        binders.insert(p.name.base);
        break;
      case Pattern::Con:
        p.name = lookup(Namespace::Constructor, p.name.module, p.name.base, p.loc);
        break;
      case Pattern::Rec: {
        p.name = lookup(Namespace::Constructor, p.name.module, p.name.base, p.loc);
        for (auto& f : p.fields) f = lookup(Namespace::Value, f.module, f.base, p.loc, false);
        if (p.wildcard) {
          if (auto it = fields_.find(p.name); it != fields_.end()) {
            for (const auto& f : it->second) {
              bool given = false;
              for (const auto& g : p.fields) given = given || g.base == f;
              if (!given) binders.insert(f);
            }
          } else if (const ConInfo* ci = ifaces_.find_constructor(p.name)) {
            for (const auto& f : ci->fields) binders.insert(f);
          }
        }
        break;
      }
      default:
        break;
    }
    for (auto& a : p.args) pattern(a, binders);
  }

  // ---------------------------------------------------------- expressions

  void expr(Expr& e) {
    switch (e.kind) {
      case Expr::Var:
        e.name = lookup(Namespace::Value, e.name.module, e.name.base, e.loc);
        return;
      case Expr::Con:
        e.name = lookup(Namespace::Constructor, e.name.module, e.name.base, e.loc);
        return;
      case Expr::OpApp:
        e.name = lookup(e.op_con ? Namespace::Constructor : Namespace::Value, e.name.module, e.name.base, e.loc);
        break;
      case Expr::Lambda: {
        std::set<std::string> b;
        for (auto& p : e.pats) pattern(p, b);
        push(std::move(b));
        expr(e.args[0]);
        pop();
        return;
      }
      case Expr::Let:
        push();
        bindings(e.binds, false);
        expr(e.args[0]);
        pop();
        return;
      case Expr::Case:
        expr(e.args[0]);
        for (auto& a : e.alts) {
          std::set<std::string> b;
          pattern(a.pat, b);
          push(std::move(b));
          rhs(a.rhs);
          pop();
        }
        return;
      case Expr::Do: {
        size_t depth = scopes_.size();
        for (auto& s : e.stmts) stmt(s);
        while (scopes_.size() > depth) pop();
        return;
      }
      case Expr::ListComp: {
        size_t depth = scopes_.size();
        for (auto& s : e.stmts) stmt(s);
        expr(e.args[0]);
        while (scopes_.size() > depth) pop();
        return;
      }
      case Expr::RecCon:
        e.name = lookup(Namespace::Constructor, e.name.module, e.name.base, e.loc);
        for (auto& f : e.fields) f = lookup(Namespace::Value, f.module, f.base, e.loc, false);
        break;
      case Expr::RecUpdate:
        for (auto& f : e.fields) f = lookup(Namespace::Value, f.module, f.base, e.loc, false);
        break;
      case Expr::TypeAnnot:
        qualtype(e.type);
        break;
      default:
        break;
    }
    for (auto& a : e.args) expr(a);
  }

  // Opens a scope for the binders the statement introduces; the caller pops.
  void stmt(Stmt& s) {
    switch (s.kind) {
      case Stmt::Exp:
        expr(s.expr);
        return;
      case Stmt::Bind: {
        expr(s.expr);
        std::set<std::string> b;
        pattern(s.pat, b);
        push(std::move(b));
        return;
      }
      case Stmt::Let:
        push();
        bindings(s.binds, false);
        return;
    }
  }

  void rhs(Rhs& r) {
    push();
    bindings(r.where, false);
    for (auto& g : r.grhss) {
      size_t depth = scopes_.size();
      for (auto& s : g.guards) stmt(s);
      expr(g.body);
      while (scopes_.size() > depth) pop();
    }
    pop();
  }

  void equation(Equation& eq) {
    std::set<std::string> b;
    for (auto& p : eq.params) pattern(p, b);
    push(std::move(b));
    rhs(eq.rhs);
    pop();
  }

  // Binds the group's names in the current scope, then resolves each binding.
  void bindings(std::vector<Binding>& bs, bool top) {
    for (auto& b : bs) {
      if (b.kind == Binding::Fun && !top) bind(b.name.base);
      if (b.kind == Binding::Pat) {
        std::set<std::string> names;
        pattern(b.pat, names);
        for (const auto& n : names) bind(n);
      }
    }
    for (auto& b : bs) binding(b, top);
  }

  void binding(Binding& b, bool top) {
    switch (b.kind) {
      case Binding::Sig:
        for (auto& n : b.names) n = top ? QualName{module_, n.base, Namespace::Value} : local_name(n.base);
        qualtype(b.sig);
        return;
      case Binding::Fun:
        if (top) b.name = QualName{module_, b.name.base, Namespace::Value};
        else b.name = local_name(b.name.base);
        for (auto& eq : b.eqs) equation(eq);
        return;
      case Binding::Pat:
        rhs(b.rhs);
        return;
    }
  }

  void decl(Decl& d) {
    std::visit(
        [&](auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, DataDecl>) {
            x.name = QualName{module_, x.name.base, Namespace::Type};
            for (auto& c : x.cons) {
              c.name = QualName{module_, c.name.base, Namespace::Constructor};
              for (auto& a : c.args) type(a);
            }
            for (auto& cls : x.deriving) cls = lookup(Namespace::Class, cls.module, cls.base, d.loc);
          } else if constexpr (std::is_same_v<T, TypeSynonym>) {
            x.name = QualName{module_, x.name.base, Namespace::Type};
            type(x.rhs);
          } else if constexpr (std::is_same_v<T, ClassDecl>) {
            x.name = QualName{module_, x.name.base, Namespace::Class};
            for (auto& c : x.supers) {
              c.cls = lookup(Namespace::Class, c.cls.module, c.cls.base, d.loc);
              type(c.type);
            }
            for (auto& s : x.sigs) binding(s, true);
            for (auto& f : x.defaults) binding(f, true);
          } else if constexpr (std::is_same_v<T, InstanceDecl>) {
            x.cls = lookup(Namespace::Class, x.cls.module, x.cls.base, d.loc);
            type(x.head);
            for (auto& c : x.context) {
              c.cls = lookup(Namespace::Class, c.cls.module, c.cls.base, d.loc);
              type(c.type);
            }
            for (auto& m : x.methods) {
              for (auto& eq : m.eqs) equation(eq);
              m.name = QualName{x.cls.module, m.name.base, Namespace::Value};
            }
          } else if constexpr (std::is_same_v<T, TypeSig>) {
            for (auto& n : x.names) n = QualName{module_, n.base, Namespace::Value};
            qualtype(x.type);
          } else if constexpr (std::is_same_v<T, FunBind>) {
            binding(x.bind, true);
          }
        },
        d.v);
  }

 private:
  std::string module_;
  const IfaceTable& ifaces_;
  std::map<Key, QualName> top_;
  std::map<Key, QualName> imported_;
  std::map<std::string, std::string> aliases_;
  std::map<QualName, std::vector<std::string>> fields_;
  std::vector<std::set<std::string>> scopes_;
};

}  // namespace

std::vector<Diagnostic> resolve_module(SurfaceModule& m, const IfaceTable& ifaces) {
  Resolver r(m.name, ifaces);
  for (const auto& d : m.decls) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, DataDecl>) {
            r.add_top(Namespace::Type, x.name.base);
            for (const auto& c : x.cons) {
              r.add_top(Namespace::Constructor, c.name.base);
              for (const auto& f : c.fields) r.add_top(Namespace::Value, f);
              r.add_fields(QualName{m.name, c.name.base, Namespace::Constructor}, c.fields);
            }
          } else if constexpr (std::is_same_v<T, TypeSynonym>) {
            r.add_top(Namespace::Type, x.name.base);
          } else if constexpr (std::is_same_v<T, ClassDecl>) {
            r.add_top(Namespace::Class, x.name.base);
            for (const auto& s : x.sigs)
              for (const auto& n : s.names) r.add_top(Namespace::Value, n.base);
          } else if constexpr (std::is_same_v<T, TypeSig>) {
            for (const auto& n : x.names) r.add_top(Namespace::Value, n.base);
          } else if constexpr (std::is_same_v<T, FunBind>) {
            r.add_top(Namespace::Value, x.bind.name.base);
          } else if constexpr (std::is_same_v<T, UnsupportedDecl>) {
            r.add_top(x.ns, x.name);
          }
        },
        d.v);
  }
  r.add_imports(m.imports);
  for (auto& d : m.decls) {
    r.push();
    r.decl(d);
    r.pop();
  }
  return std::move(r.warnings);
}

void resolve_qualified_binding(Binding& b, const std::string& module, const IfaceTable& ifaces) {
  Resolver r("", ifaces);
  r.qualified_only = true;
  r.push();
  QualName name = b.name;
  r.binding(b, false);
  b.name = QualName{module, name.base, Namespace::Value};
  r.pop();
}

void resolve_qualified_type(QualType& t) {
  IfaceTable none;
  Resolver r("", none);
  r.qualified_only = true;
  r.qualtype(t);
}

}  // namespace totalizer
