// SPDX-License-Identifier: Apache-2.0
#include "totalizer/classes.hpp"

#include <algorithm>

namespace totalizer {

namespace {

void surface_vars(const Type& t, std::vector<std::string>& out) {
  if (t.kind == Type::Var && std::find(out.begin(), out.end(), t.var) == out.end()) out.push_back(t.var);
  for (const auto& a : t.args) surface_vars(a, out);
}

std::vector<std::string> surface_vars(const Type& t) {
  std::vector<std::string> out;
  surface_vars(t, out);
  return out;
}

Type type_var(const std::string& v) {
  Type t;
  t.var = v;
  return t;
}

CoreType constraint_type(const Constraint& c, ClassContext& cx) {
  return tapp(tcon(cx.env.render(c.cls)), cx.ds.lower_type(c.type));
}

std::vector<CoreBinder> implicit_vars(const std::vector<std::string>& vs) {
  std::vector<CoreBinder> out;
  for (const auto& v : vs) out.push_back(implicit_binder(v));
  return out;
}

// Method type inside an instance: class parameter replaced by the head, locals kept apart from
// the instance's own type variables.
struct MethodShape {
  std::vector<std::string> locals;
  std::vector<Constraint> context;
  Type type;
};

MethodShape method_shape(const MethodInfo& m, const std::string& param, const Type* head) {
  MethodShape s;
  std::vector<std::string> taken = head ? surface_vars(*head) : std::vector<std::string>{};
  QualType qt = m.type;
  for (const auto& v : surface_vars(qt.type)) {
    if (v == param) continue;
    std::string name = v;
    if (std::find(taken.begin(), taken.end(), name) != taken.end()) {
      int k = 0;
      auto used = surface_vars(qt.type);
      do name = v + std::to_string(k++);
      while (std::find(taken.begin(), taken.end(), name) != taken.end() ||
             std::find(used.begin(), used.end(), name) != used.end());
      qt.type = substitute_type(qt.type, v, type_var(name));
      for (auto& c : qt.context) c.type = substitute_type(c.type, v, type_var(name));
    }
    s.locals.push_back(name);
  }
  s.type = head ? substitute_type(qt.type, param, *head) : qt.type;
  s.context = qt.context;
  return s;
}

CoreType shape_type(const MethodShape& s, ClassContext& cx) {
  std::vector<CoreBinder> bs = implicit_vars(s.locals);
  for (const auto& c : s.context) bs.push_back(generalized_binder(constraint_type(c, cx)));
  return tforall(std::move(bs), cx.ds.lower_type(s.type));
}

std::vector<const MethodInfo*> kept_methods(const ClassInfo& info, const EditSet& edits) {
  std::vector<const MethodInfo*> out;
  for (const auto& m : info.methods)
    if (!edits.skip_method(info.name, m.name.base)) out.push_back(&m);
  return out;
}

VernSentence raw(std::string name, std::string text, std::set<std::string> defines, std::set<std::string> refs) {
  VernSentence s;
  s.kind = VernSentence::Raw;
  s.name = std::move(name);
  s.raw = std::move(text);
  s.raw_defines = std::move(defines);
  s.raw_refs = std::move(refs);
  return s;
}

std::string dict_name(const std::string& cls) { return cls + "_dict"; }

}  // namespace

Type data_head(const DataDecl& d) {
  Type t;
  t.kind = Type::Con;
  t.con = d.name;
  for (const auto& p : d.params) {
    Type app;
    app.kind = Type::App;
    app.args = {t, type_var(p)};
    t = std::move(app);
  }
  return t;
}

// ------------------------------------------------------------------ classes

std::vector<VernSentence> translate_class(const ClassDecl& c, const ClassInfo& info, ClassContext& cx) {
  std::vector<VernSentence> out;
  std::string name = cx.env.render_base(info.name);
  auto methods = kept_methods(info, cx.edits);
  if (info.cps) {
    VernSentence rec;
    rec.kind = VernSentence::Record;
    rec.name = dict_name(name);
    rec.binders.push_back(CoreBinder{info.param, false, false, {}});
    for (const auto* m : methods)
      rec.fields.push_back({cx.env.render_base(m->name) + "_", shape_type(method_shape(*m, info.param, nullptr), cx)});
    rec.origin = info.name.str();
    out.push_back(rec);
    out.push_back(raw(name, "Definition " + name + " " + info.param + " := forall r__, (" + dict_name(name) + " " +
                                info.param + " -> r__) -> r__.",
                      {name}, {dict_name(name)}));
    out.push_back(raw("Existing Class " + name, "Existing Class " + name + ".", {}, {name}));
    for (const auto* m : methods) {
      std::string mn = cx.env.render_base(m->name);
      CoreType t = shape_type(method_shape(*m, info.param, nullptr), cx);
      std::set<std::string> refs = {name, mn + "_"};
      free_names(t, refs);
      out.push_back(raw(mn,
                        "Definition " + mn + " {" + info.param + "} {H__ : " + name + " " + info.param + "} : " +
                            print_core_type(t) + " :=\n  H__ _ (" + mn + "_ " + info.param + ").",
                        {mn}, refs));
    }
    return out;
  }
  VernSentence cls;
  cls.kind = VernSentence::Class;
  cls.name = name;
  cls.origin = info.name.str();
  cls.binders.push_back(CoreBinder{info.param, false, false, {}});
  for (const auto& s : c.supers) cls.binders.push_back(generalized_binder(constraint_type(s, cx)));
  for (const auto* m : methods)
    cls.fields.push_back({cx.env.render_base(m->name), shape_type(method_shape(*m, info.param, nullptr), cx)});
  out.push_back(cls);
  for (const auto* m : methods) {
    if (!is_symbolic(m->name.base)) continue;
    std::string r = cx.env.render_base(m->name);
    const std::string& op = m->name.base;
    out.push_back(raw("Infix " + op, "Infix \"" + op + "\" := (" + r + ") (at level 99).", {}, {r}));
    out.push_back(raw("Notation _" + op + "_", "Notation \"'_" + op + "_'\" := (" + r + ").", {}, {r}));
  }
  return out;
}

// ---------------------------------------------------------------- instances

std::vector<VernSentence> translate_instance(const InstanceDecl& inst, ClassContext& cx) {
  const ClassInfo* info = cx.ifaces.find_class(inst.cls);
  if (!info) throw Unsupported("instance of unknown class " + inst.cls.str());
  std::string iname = instance_name(inst.cls, inst.head);
  std::vector<std::string> ivs = surface_vars(inst.head);
  std::vector<CoreBinder> binders = implicit_vars(ivs);
  for (const auto& c : inst.context) binders.push_back(generalized_binder(constraint_type(c, cx)));
  auto methods = kept_methods(*info, cx.edits);

  std::map<std::string, const Binding*> provided;
  for (const auto& b : inst.methods) {
    if (b.kind != Binding::Fun) continue;
    bool known = std::any_of(info->methods.begin(), info->methods.end(),
                             [&](const MethodInfo& m) { return m.name.base == b.name.base; });
    if (!known) throw Unsupported("'" + b.name.base + "' is not a method of " + inst.cls.str());
    provided[b.name.base] = &b;
  }

  auto def_name = [&](const MethodInfo& m) { return iname + "_" + cx.env.render_base(m.name); };
  std::vector<VernSentence> defs;
  std::vector<std::pair<std::string, CoreTerm>> values;
  std::vector<std::pair<std::string, std::string>> cps_values;

  auto build = [&](const MethodInfo& m, bool from_default) {
    MethodShape shape = method_shape(m, info->param, &inst.head);
    VernSentence s;
    s.kind = VernSentence::LocalDefinition;
    s.name = def_name(m);
    s.origin = inst.cls.base + " " + m.name.base;
    s.binders = binders;
    s.type.push_back(shape_type(shape, cx));
    cx.env.reset_fresh();
    try {
      CoreTerm body;
      if (!from_default) {
        body = cx.ds.lower_binding(*provided.at(m.name.base), s.name, RecursionMode{});
      } else {
        auto dit = info->defaults.find(m.name.base);
        if (dit == info->defaults.end()) throw MissingMethod(inst.cls.base, m.name.base);
        for (const auto* sib : methods) cx.env.add_local_rename(sib->name, def_name(*sib));
        try {
          body = cx.ds.lower_binding(dit->second, s.name, RecursionMode{});
        } catch (...) {
          for (const auto* sib : methods) cx.env.remove_local_rename(sib->name);
          throw;
        }
        for (const auto* sib : methods) cx.env.remove_local_rename(sib->name);
      }
      if (!shape.locals.empty() || !shape.context.empty()) {
        CoreTerm f;
        f.kind = CoreTerm::Fun;
        f.params = implicit_vars(shape.locals);
        for (const auto& c : shape.context) f.params.push_back(generalized_binder(constraint_type(c, cx)));
        f.args.push_back(std::move(body));
        body = std::move(f);
      }
      s.body.push_back(std::move(body));
      defs.push_back(std::move(s));
    } catch (const Error& e) {
      defs.push_back(axiomatize(s, e.message()));
    }
  };
  for (const auto* m : methods)
    if (provided.count(m->name.base)) build(*m, false);
  for (const auto* m : methods)
    if (!provided.count(m->name.base)) build(*m, true);

  for (const auto* m : methods) {
    MethodShape shape = method_shape(*m, info->param, &inst.head);
    CoreTerm v = cvar(def_name(*m));
    if (!shape.locals.empty()) {
      CoreTerm f;
      f.kind = CoreTerm::Fun;
      f.params = implicit_vars(shape.locals);
      f.args.push_back(std::move(v));
      v = std::move(f);
    }
    if (info->cps) cps_values.push_back({cx.env.render(m->name) + "_", print_term(v, 6)});
    values.push_back({cx.env.render(m->name), std::move(v)});
  }

  CoreType itype = tapp(tcon(cx.env.render(info->name)), cx.ds.lower_type(inst.head));
  if (info->cps) {
    std::string text = "Instance " + iname + print_binders(binders) + " : " + print_core_type(itype) +
                       " :=\n  fun _ k__ => k__ {|";
    for (size_t i = 0; i < cps_values.size(); ++i)
      text += std::string(i ? " ;" : "") + "\n    " + cps_values[i].first + " := " + cps_values[i].second;
    text += " |}.";
    std::set<std::string> refs;
    free_names(itype, refs);
    for (const auto& b : binders)
      for (const auto& t : b.type) free_names(t, refs);
    for (const auto& [k, v] : values) {
      free_names(v, refs);
      refs.insert(k + "_");
    }
    VernSentence r = raw(iname, text, {iname}, refs);
    r.origin = inst.cls.base;
    defs.push_back(std::move(r));
    return defs;
  }
  VernSentence is;
  is.kind = VernSentence::Instance;
  is.name = iname;
  is.origin = inst.cls.base;
  is.binders = binders;
  is.type.push_back(itype);
  is.values = std::move(values);
  defs.push_back(std::move(is));
  return defs;
}

// ------------------------------------------------------------------ deriving

namespace {

Expr con_expr(const std::string& module, const std::string& base) {
  return mk_con(QualName{module, base, Namespace::Constructor});
}

Pattern con_pat(const ConDecl& c, const std::string& prefix) {
  std::vector<Pattern> args;
  for (size_t i = 0; i < c.args.size(); ++i) args.push_back(mk_pvar(prefix + std::to_string(i + 1)));
  return mk_pcon(c.name, std::move(args));
}

Pattern con_wild(const ConDecl& c) { return mk_pcon(c.name, std::vector<Pattern>(c.args.size(), mk_pwild())); }

Equation equation(std::vector<Pattern> params, Expr body) {
  Equation eq;
  eq.params = std::move(params);
  eq.rhs.grhss.push_back(GuardedRhs{{}, std::move(body)});
  return eq;
}

Expr local(const std::string& n) { return mk_var(local_name(n)); }

}  // namespace

std::optional<InstanceDecl> derive_instance(const DataDecl& d, const QualName& cls) {
  bool eq = cls.module == "GHC.Classes" && cls.base == "Eq";
  bool ord = cls.module == "GHC.Classes" && cls.base == "Ord";
  if (!eq && !ord) return std::nullopt;
  InstanceDecl inst;
  inst.cls = cls;
  inst.head = data_head(d);
  inst.derived = true;
  for (const auto& p : d.params) inst.context.push_back(Constraint{cls, type_var(p)});
  Binding b;
  b.kind = Binding::Fun;
  if (eq) {
    b.name = QualName{"GHC.Classes", "==", Namespace::Value};
    b.infix = true;
    QualName eqop{"GHC.Classes", "==", Namespace::Value};
    QualName andop{"GHC.Classes", "&&", Namespace::Value};
    for (const auto& c : d.cons) {
      Expr body = con_expr("GHC.Types", "True");
      for (size_t i = c.args.size(); i-- > 0;) {
        std::string k = std::to_string(i + 1);
        Expr test = mk_opapp(local("x" + k), eqop, false, local("y" + k));
        body = i + 1 == c.args.size() ? test : mk_opapp(test, andop, false, body);
      }
      b.eqs.push_back(equation({con_pat(c, "x"), con_pat(c, "y")}, std::move(body)));
    }
    if (d.cons.size() > 1) b.eqs.push_back(equation({mk_pwild(), mk_pwild()}, con_expr("GHC.Types", "False")));
  } else {
    b.name = QualName{"GHC.Classes", "compare", Namespace::Value};
    QualName cmp{"GHC.Classes", "compare", Namespace::Value};
    for (size_t ci = 0; ci < d.cons.size(); ++ci) {
      const ConDecl& c = d.cons[ci];
      Expr body = con_expr("GHC.Types", "EQ");
      for (size_t i = c.args.size(); i-- > 0;) {
        std::string k = std::to_string(i + 1);
        Expr cs;
        cs.kind = Expr::Case;
        cs.args.push_back(mk_apps(mk_var(cmp), {local("x" + k), local("y" + k)}));
        for (const char* r : {"LT", "EQ", "GT"}) {
          Alt a;
          a.pat = mk_pcon(QualName{"GHC.Types", r, Namespace::Constructor}, {});
          a.rhs.grhss.push_back(GuardedRhs{{}, std::string(r) == "EQ" ? body : con_expr("GHC.Types", r)});
          cs.alts.push_back(std::move(a));
        }
        body = std::move(cs);
      }
      b.eqs.push_back(equation({con_pat(c, "x"), con_pat(c, "y")}, std::move(body)));
    }
    for (size_t i = 0; i < d.cons.size(); ++i)
      for (size_t j = 0; j < d.cons.size(); ++j)
        if (i != j)
          b.eqs.push_back(equation({con_wild(d.cons[i]), con_wild(d.cons[j])}, con_expr("GHC.Types", i < j ? "LT" : "GT")));
  }
  inst.methods.push_back(std::move(b));
  return inst;
}

}  // namespace totalizer
