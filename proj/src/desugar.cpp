// SPDX-License-Identifier: Apache-2.0
#include "totalizer/desugar.hpp"

#include <algorithm>
#include <set>

namespace totalizer {

namespace {

bool is_true_guard(const Stmt& s) {
  if (s.kind == Stmt::Let) return true;
  if (s.kind != Stmt::Exp) return s.pat.kind == Pattern::Var || s.pat.kind == Pattern::Wild;
  const Expr& e = s.expr;
  if (e.kind == Expr::Var) return e.name.module == "GHC.Base" && e.name.base == "otherwise";
  if (e.kind == Expr::Con) return e.name.module == "GHC.Types" && e.name.base == "True";
  return false;
}

bool always_succeeds(const GuardedRhs& g) {
  return std::all_of(g.guards.begin(), g.guards.end(), [](const Stmt& s) {
    return s.kind == Stmt::Exp ? is_true_guard(s) : s.kind == Stmt::Let;
  });
}

const CorePat& strip_as(const CorePat& p) { return p.kind == CorePat::As ? strip_as(p.args[0]) : p; }

bool disjoint(const CorePat& a0, const CorePat& b0) {
  const CorePat& a = strip_as(a0);
  const CorePat& b = strip_as(b0);
  if (a.kind != CorePat::Con || b.kind != CorePat::Con) return false;
  if (a.name != b.name) return true;
  for (size_t i = 0; i < a.args.size() && i < b.args.size(); ++i)
    if (disjoint(a.args[i], b.args[i])) return true;
  return false;
}

bool simple_param(const Pattern& p) { return p.kind == Pattern::Var || p.kind == Pattern::Wild; }

CoreTerm core_num(const std::string& lit) {
  CoreTerm t;
  t.kind = CoreTerm::Num;
  t.lit = lit;
  return t;
}

}  // namespace

Desugarer::Desugarer(NameEnv& env, const IfaceTable& ifaces) : env_(env), ifaces_(ifaces) {}

void Desugarer::add_data(const DataDecl& d) {
  std::vector<QualName> cons;
  for (const auto& c : d.cons) {
    local_cons_[c.name] = ConEntry{c.fields, static_cast<int>(c.args.size()), d.name};
    cons.push_back(c.name);
  }
  local_types_[d.name] = std::move(cons);
  sigs_built_ = false;
}

std::string Desugarer::var(const std::string& base) const { return env_.render(local_name(base)); }

CoreTerm Desugarer::global(const std::string& module, const std::string& base, Namespace ns) const {
  return cvar(env_.render(QualName{module, base, ns}));
}

std::optional<Desugarer::ConEntry> Desugarer::con_entry(const QualName& con) const {
  if (auto it = local_cons_.find(con); it != local_cons_.end()) return it->second;
  if (const ConInfo* ci = ifaces_.find_constructor(con)) return ConEntry{ci->fields, ci->arity, ci->type};
  for (const auto& bt : builtin_types())
    for (const auto& [q, arity] : bt.constructors)
      if (q.module == con.module && q.base == con.base) return ConEntry{{}, arity, bt.type};
  return std::nullopt;
}

std::vector<QualName> Desugarer::constructors_of(const QualName& type) const {
  if (auto it = local_types_.find(type); it != local_types_.end()) return it->second;
  if (const TypeInfo* ti = ifaces_.find_type(type)) return ti->constructors;
  for (const auto& bt : builtin_types())
    if (bt.type.module == type.module && bt.type.base == type.base) {
      std::vector<QualName> out;
      for (const auto& c : bt.constructors) out.push_back(c.first);
      return out;
    }
  return {};
}

const Desugarer::Signature* Desugarer::signature(const std::string& rendered_con) const {
  if (!sigs_built_) {
    sigs_.clear();
    auto add_type = [&](const std::vector<std::pair<QualName, int>>& cons) {
      Signature s;
      for (const auto& [q, n] : cons) s.cons.push_back({env_.render(q), n});
      for (const auto& c : s.cons) sigs_.emplace(c.first, s);
    };
    for (const auto& bt : builtin_types()) add_type(bt.constructors);
    auto add_iface = [&](const ModuleIface& m) {
      for (const auto& [tn, ti] : m.types) {
        if (ti.constructors.empty()) continue;
        std::vector<std::pair<QualName, int>> cons;
        for (const auto& c : ti.constructors) {
          auto it = m.constructors.find(c);
          cons.push_back({c, it == m.constructors.end() ? 0 : it->second.arity});
        }
        add_type(cons);
      }
    };
    for (const auto& [name, m] : builtin_ifaces())
      if (!ifaces_.all().count(name)) add_iface(m);
    for (const auto& [name, m] : ifaces_.all()) add_iface(m);
    for (const auto& [tn, cons] : local_types_) {
      std::vector<std::pair<QualName, int>> cs;
      for (const auto& c : cons) cs.push_back({c, local_cons_.at(c).arity});
      Signature s;
      for (const auto& [q, n] : cs) s.cons.push_back({env_.render(q), n});
      for (const auto& c : s.cons) sigs_[c.first] = s;
    }
    sigs_built_ = true;
  }
  auto it = sigs_.find(rendered_con);
  return it == sigs_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------- coverage

bool Desugarer::useful(const std::vector<std::vector<CorePat>>& rows, size_t width) const {
  if (width == 0) return rows.empty();
  std::set<std::string> heads;
  for (const auto& r : rows) {
    const CorePat& p = strip_as(r[0]);
    if (p.kind == CorePat::Con || p.kind == CorePat::Num) heads.insert(p.kind == CorePat::Con ? p.name : "#" + p.lit);
  }
  if (!heads.empty()) {
    const Signature* sig = signature(*heads.begin());
    bool complete = sig != nullptr;
    if (complete) {
      std::set<std::string> all;
      for (const auto& c : sig->cons) all.insert(c.first);
      for (const auto& h : heads) complete = complete && all.count(h);
      for (const auto& c : sig->cons) complete = complete && heads.count(c.first);
    }
    if (complete) {
      for (const auto& [c, arity] : sig->cons) {
        std::vector<std::vector<CorePat>> spec;
        for (const auto& r : rows) {
          const CorePat& p = strip_as(r[0]);
          std::vector<CorePat> nr;
          if (p.kind == CorePat::Con) {
            if (p.name != c) continue;
            nr = p.args;
            nr.resize(static_cast<size_t>(arity));
          } else {
            nr.assign(static_cast<size_t>(arity), pwild());
          }
          nr.insert(nr.end(), r.begin() + 1, r.end());
          spec.push_back(std::move(nr));
        }
        if (useful(spec, static_cast<size_t>(arity) + width - 1)) return true;
      }
      return false;
    }
  }
  std::vector<std::vector<CorePat>> def;
  for (const auto& r : rows) {
    const CorePat& p = strip_as(r[0]);
    if (p.kind == CorePat::Var || p.kind == CorePat::Wild) def.emplace_back(r.begin() + 1, r.end());
  }
  return useful(def, width - 1);
}

bool Desugarer::exhaustive(const std::vector<std::vector<CorePat>>& rows) const {
  if (rows.empty()) return false;
  return !useful(rows, rows.front().size());
}

// ---------------------------------------------------------------- patterns

CorePat Desugarer::lower_pattern(const Pattern& p) {
  switch (p.kind) {
    case Pattern::Var:
      return pvar(var(p.name.base));
    case Pattern::Wild:
      return pwild();
    case Pattern::Con: {
      std::vector<CorePat> args;
      for (const auto& a : p.args) args.push_back(lower_pattern(a));
      return pcon(env_.render(p.name), std::move(args));
    }
    case Pattern::Rec: {
      auto ce = con_entry(p.name);
      if (!ce) throw Unsupported("record pattern for unknown constructor " + p.name.str(), p.loc);
      std::vector<CorePat> args(static_cast<size_t>(ce->arity), pwild());
      std::vector<bool> given(args.size(), false);
      for (size_t i = 0; i < p.fields.size(); ++i) {
        auto it = std::find(ce->fields.begin(), ce->fields.end(), p.fields[i].base);
        if (it == ce->fields.end()) throw UnknownField(p.name.base, p.fields[i].base);
        size_t k = static_cast<size_t>(it - ce->fields.begin());
        args[k] = lower_pattern(p.args[i]);
        given[k] = true;
      }
      if (p.wildcard)
        for (size_t k = 0; k < ce->fields.size(); ++k)
          if (!given[k]) args[k] = pvar(var(ce->fields[k]));
      return pcon(env_.render(p.name), std::move(args));
    }
    case Pattern::As: {
      CorePat r;
      r.kind = CorePat::As;
      r.name = var(p.name.base);
      r.args.push_back(lower_pattern(p.args[0]));
      return r;
    }
    case Pattern::Tuple: {
      std::string pair = env_.render(QualName{"GHC.Tuple", "(,)", Namespace::Constructor});
      CorePat acc = lower_pattern(p.args[0]);
      for (size_t i = 1; i < p.args.size(); ++i) acc = pcon(pair, {std::move(acc), lower_pattern(p.args[i])});
      return acc;
    }
    case Pattern::List: {
      std::string cons = env_.render(QualName{"GHC.Types", ":", Namespace::Constructor});
      CorePat acc = pcon(env_.render(QualName{"GHC.Types", "[]", Namespace::Constructor}), {});
      for (auto it = p.args.rbegin(); it != p.args.rend(); ++it) acc = pcon(cons, {lower_pattern(*it), std::move(acc)});
      return acc;
    }
    case Pattern::Lazy: {
      const Pattern& in = p.args[0];
      if (in.kind != Pattern::Var && in.kind != Pattern::Wild && in.kind != Pattern::Tuple)
        throw Unsupported("lazy pattern over a refutable pattern", p.loc);
      return lower_pattern(in);
    }
    case Pattern::Lit:
      throw Unsupported("literal pattern in a binding position", p.loc);
  }
  return pwild();
}

Pattern Desugarer::strip_literals(const Pattern& p, std::vector<Stmt>& guards) {
  if (p.kind == Pattern::Lit) {
    std::string v = env_.fresh_arg();
    Expr lit = p.lit[0] == '-' ? Expr{} : mk_lit(p.lit, p.loc);
    if (p.lit[0] == '-') {
      lit.kind = Expr::Neg;
      lit.args.push_back(mk_lit(p.lit.substr(1), p.loc));
    }
    Stmt s;
    s.kind = Stmt::Exp;
    s.expr = mk_opapp(mk_var(local_name(v), p.loc), QualName{"GHC.Classes", "==", Namespace::Value}, false, lit);
    guards.push_back(std::move(s));
    return mk_pvar(v, p.loc);
  }
  Pattern out = p;
  for (auto& a : out.args) a = strip_literals(a, guards);
  return out;
}

Desugarer::MAlt Desugarer::make_alt(const std::vector<Pattern>& pats, const Rhs& rhs) {
  std::vector<Stmt> lit_guards;
  std::vector<Pattern> stripped;
  for (const auto& p : pats) stripped.push_back(strip_literals(p, lit_guards));
  MAlt a;
  for (const auto& p : stripped) a.pats.push_back(lower_pattern(p));
  a.rhs = rhs;
  if (!lit_guards.empty())
    for (auto& g : a.rhs.grhss) g.guards.insert(g.guards.begin(), lit_guards.begin(), lit_guards.end());
  a.can_fail = std::none_of(a.rhs.grhss.begin(), a.rhs.grhss.end(), always_succeeds);
  return a;
}

// ------------------------------------------------------------ alternatives

CoreTerm Desugarer::make_case(const std::vector<CoreTerm>& scruts, const std::vector<MAlt>& group, const CoreTerm& ft) {
  std::vector<CoreBranch> branches;
  std::vector<std::vector<CorePat>> rows;
  for (const auto& a : group) {
    branches.push_back(CoreBranch{a.pats, lower_rhs(a.rhs, ft)});
    rows.push_back(a.pats);
  }
  if (!exhaustive(rows)) branches.push_back(CoreBranch{std::vector<CorePat>(scruts.size(), pwild()), ft});
  return cmatch(scruts, std::move(branches));
}

CoreTerm Desugarer::lower_alts(const std::vector<CoreTerm>& scruts, std::vector<MAlt> alts, const CoreTerm& ft) {
  if (alts.empty()) return ft;
  auto exclusive = [](const MAlt& a, const MAlt& b) {
    if (!a.can_fail) return true;
    for (size_t i = 0; i < a.pats.size(); ++i)
      if (disjoint(a.pats[i], b.pats[i])) return true;
    return false;
  };
  // Groups of pairwise exclusive alternatives, the last group as long as possible.
  std::vector<std::vector<MAlt>> groups;
  size_t end = alts.size();
  while (end > 0) {
    size_t j = end - 1;
    while (j > 0) {
      bool ok = true;
      for (size_t k = j; k < end && ok; ++k) ok = exclusive(alts[j - 1], alts[k]);
      if (!ok) break;
      --j;
    }
    groups.insert(groups.begin(), std::vector<MAlt>(alts.begin() + static_cast<long>(j), alts.begin() + static_cast<long>(end)));
    end = j;
  }
  CoreTerm cur = ft;
  std::vector<std::pair<std::string, CoreTerm>> joins;
  for (size_t g = groups.size(); g-- > 1;) {
    std::string j = env_.fresh_join();
    joins.push_back({j, make_case(scruts, groups[g], cur)});
    cur = cvar(j);
  }
  CoreTerm out = make_case(scruts, groups[0], cur);
  for (auto it = joins.rbegin(); it != joins.rend(); ++it) out = clet(it->first, std::move(it->second), std::move(out));
  return out;
}

CoreTerm Desugarer::lower_rhs(const Rhs& rhs, const CoreTerm& ft) {
  std::vector<const GuardedRhs*> gs;
  for (const auto& g : rhs.grhss) {
    gs.push_back(&g);
    if (always_succeeds(g)) break;
  }
  CoreTerm cur = ft;
  std::vector<std::pair<std::string, CoreTerm>> joins;
  for (size_t i = gs.size(); i-- > 1;) {
    std::string j = env_.fresh_join();
    joins.push_back({j, lower_guards(*gs[i], 0, cur)});
    cur = cvar(j);
  }
  CoreTerm out = lower_guards(*gs[0], 0, cur);
  for (auto it = joins.rbegin(); it != joins.rend(); ++it) out = clet(it->first, std::move(it->second), std::move(out));
  return lower_binds(rhs.where, std::move(out));
}

CoreTerm Desugarer::lower_guards(const GuardedRhs& g, size_t i, const CoreTerm& ft) {
  if (i == g.guards.size()) return lower_expr(g.body);
  const Stmt& s = g.guards[i];
  switch (s.kind) {
    case Stmt::Exp:
      if (is_true_guard(s)) return lower_guards(g, i + 1, ft);
      return cif(lower_expr(s.expr), lower_guards(g, i + 1, ft), ft);
    case Stmt::Let:
      return lower_binds(s.binds, lower_guards(g, i + 1, ft));
    case Stmt::Bind: {
      std::vector<Stmt> lit_guards;
      Pattern p = strip_literals(s.pat, lit_guards);
      CoreTerm scrut = lower_expr(s.expr);
      CorePat cp = lower_pattern(p);
      GuardedRhs rest;
      rest.guards = std::move(lit_guards);
      rest.guards.insert(rest.guards.end(), g.guards.begin() + static_cast<long>(i) + 1, g.guards.end());
      rest.body = g.body;
      return match_one(std::move(scrut), cp, lower_guards(rest, 0, ft), ft);
    }
  }
  return ft;
}

CoreTerm Desugarer::match_one(CoreTerm scrut, const CorePat& p, CoreTerm body, const CoreTerm& ft) {
  std::vector<CoreBranch> branches{CoreBranch{{p}, std::move(body)}};
  if (!exhaustive({{p}})) branches.push_back(CoreBranch{{pwild()}, ft});
  return cmatch({std::move(scrut)}, std::move(branches));
}

// ----------------------------------------------------------------- binds

CoreTerm Desugarer::lower_binds(const std::vector<Binding>& binds, CoreTerm body) {
  struct Node {
    bool pat = false;
    std::string name;
    CorePat cpat;
    CoreTerm term;
    std::set<std::string> defines;
    std::set<std::string> uses;
  };
  std::vector<Node> nodes;
  for (const auto& b : binds) {
    if (b.kind == Binding::Sig) continue;
    Node n;
    if (b.kind == Binding::Fun) {
      n.name = var(b.name.base);
      n.defines.insert(n.name);
      LoweredFun f = lower_equations(b.eqs);
      n.term = close_function(std::move(f), n.name, RecursionMode{});
    } else {
      n.pat = true;
      n.cpat = lower_pattern(b.pat);
      pattern_binders(n.cpat, n.defines);
      n.term = lower_rhs(b.rhs, cfailure());
    }
    free_names(n.term, n.uses);
    if (n.pat)
      for (const auto& d : n.defines)
        if (n.uses.count(d)) throw Unsupported("recursive pattern binding", b.loc);
    nodes.push_back(std::move(n));
  }
  std::vector<size_t> order;
  std::vector<bool> done(nodes.size(), false);
  while (order.size() < nodes.size()) {
    bool progress = false;
    for (size_t i = 0; i < nodes.size(); ++i) {
      if (done[i]) continue;
      bool ready = true;
      for (size_t j = 0; j < nodes.size() && ready; ++j) {
        if (j == i || done[j]) continue;
        for (const auto& d : nodes[j].defines)
          if (nodes[i].uses.count(d)) ready = false;
      }
      if (ready) {
        done[i] = true;
        order.push_back(i);
        progress = true;
        break;
      }
    }
    if (!progress) throw Unsupported("mutually recursive local bindings");
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node& n = nodes[*it];
    if (n.pat) body = match_one(std::move(n.term), n.cpat, std::move(body), cfailure());
    else body = clet(n.name, std::move(n.term), std::move(body));
  }
  return body;
}

// ------------------------------------------------------------- functions

LoweredFun Desugarer::lower_equations(const std::vector<Equation>& eqs) {
  LoweredFun f;
  size_t n = eqs.front().params.size();
  if (n == 0) {
    f.body = lower_rhs(eqs.front().rhs, cfailure());
    return f;
  }
  if (eqs.size() == 1 && std::all_of(eqs[0].params.begin(), eqs[0].params.end(), simple_param)) {
    for (const auto& p : eqs[0].params) f.params.push_back(p.kind == Pattern::Var ? var(p.name.base) : "_");
    f.body = lower_rhs(eqs[0].rhs, cfailure());
    return f;
  }
  std::vector<CoreTerm> scruts;
  for (size_t i = 0; i < n; ++i) {
    f.params.push_back(env_.fresh_arg());
    scruts.push_back(cvar(f.params.back()));
  }
  std::vector<MAlt> alts;
  for (const auto& eq : eqs) alts.push_back(make_alt(eq.params, eq.rhs));
  f.body = lower_alts(scruts, std::move(alts), cfailure());
  return f;
}

CoreTerm Desugarer::close_function(LoweredFun f, const std::string& self, const RecursionMode& mode) {
  std::set<std::string> fv;
  free_names(cfun(f.params, f.body), fv);
  if (!fv.count(self) || mode.kind == RecursionMode::ProgramFixpoint) return cfun(f.params, std::move(f.body));
  if (f.params.empty()) throw Unsupported("recursive definition of " + self + " without arguments");
  for (auto& p : f.params)
    if (p == "_") p = env_.fresh_arg();
  CoreTerm t;
  if (mode.kind == RecursionMode::UnsafeFix) {
    t.kind = CoreTerm::UnsafeFix;
    t.name = self;
    t.args.push_back(cfun(f.params, std::move(f.body)));
    return t;
  }
  t.kind = CoreTerm::Fix;
  t.name = self;
  for (auto& p : f.params) t.params.push_back(CoreParam{p, false, false, {}});
  t.args.push_back(std::move(f.body));
  return t;
}

CoreTerm Desugarer::lower_binding(const Binding& b, const std::string& self, const RecursionMode& mode) {
  CoreTerm t = close_function(lower_equations(b.eqs), self, mode);
  clear_unused_pattern_vars(t);
  return t;
}

// ------------------------------------------------------------ expressions

CoreTerm Desugarer::with_scrutinee(const Expr& e, const std::function<CoreTerm(const CoreTerm&)>& k) {
  if (e.kind == Expr::Var) return k(lower_expr(e));
  std::string v = env_.fresh_arg();
  CoreTerm bound = lower_expr(e);
  return clet(v, std::move(bound), k(cvar(v)));
}

CoreTerm Desugarer::lower_case(const Expr& e) {
  return with_scrutinee(e.args[0], [&](const CoreTerm& s) {
    std::vector<MAlt> alts;
    for (const auto& a : e.alts) alts.push_back(make_alt({a.pat}, a.rhs));
    return lower_alts({s}, std::move(alts), cfailure());
  });
}

CoreTerm Desugarer::lower_lambda(const Expr& e) {
  if (std::all_of(e.pats.begin(), e.pats.end(), simple_param)) {
    std::vector<std::string> ps;
    for (const auto& p : e.pats) ps.push_back(p.kind == Pattern::Var ? var(p.name.base) : "_");
    return cfun(std::move(ps), lower_expr(e.args[0]));
  }
  std::vector<std::string> ps;
  std::vector<CoreTerm> scruts;
  for (size_t i = 0; i < e.pats.size(); ++i) {
    ps.push_back(env_.fresh_arg());
    scruts.push_back(cvar(ps.back()));
  }
  Rhs rhs;
  rhs.grhss.push_back(GuardedRhs{{}, e.args[0]});
  return cfun(ps, lower_alts(scruts, {make_alt(e.pats, rhs)}, cfailure()));
}

CoreTerm Desugarer::lower_do(const std::vector<Stmt>& stmts, size_t i) {
  const Stmt& s = stmts[i];
  if (i + 1 == stmts.size()) {
    if (s.kind != Stmt::Exp) throw Unsupported("do block ending in a binding");
    return lower_expr(s.expr);
  }
  switch (s.kind) {
    case Stmt::Exp:
      return capps(global("GHC.Base", ">>"), {lower_expr(s.expr), lower_do(stmts, i + 1)});
    case Stmt::Let:
      return lower_binds(s.binds, lower_do(stmts, i + 1));
    case Stmt::Bind: {
      CoreTerm m = lower_expr(s.expr);
      CoreTerm k;
      if (simple_param(s.pat)) {
        k = cfun({s.pat.kind == Pattern::Var ? var(s.pat.name.base) : "_"}, lower_do(stmts, i + 1));
      } else {
        std::string v = env_.fresh_arg();
        CorePat cp = lower_pattern(s.pat);
        k = cfun({v}, match_one(cvar(v), cp, lower_do(stmts, i + 1), cfailure()));
      }
      return capps(global("GHC.Base", ">>="), {std::move(m), std::move(k)});
    }
  }
  return cfailure();
}

CoreTerm Desugarer::lower_comp(const Expr& e, size_t i) {
  CoreTerm nil = global("GHC.Types", "[]", Namespace::Constructor);
  if (i == e.stmts.size())
    return capps(global("GHC.Types", ":", Namespace::Constructor), {lower_expr(e.args[0]), nil});
  const Stmt& s = e.stmts[i];
  switch (s.kind) {
    case Stmt::Exp:
      return cif(lower_expr(s.expr), lower_comp(e, i + 1), nil);
    case Stmt::Let:
      return lower_binds(s.binds, lower_comp(e, i + 1));
    case Stmt::Bind: {
      CoreTerm src = lower_expr(s.expr);
      CoreTerm k;
      if (simple_param(s.pat)) {
        k = cfun({s.pat.kind == Pattern::Var ? var(s.pat.name.base) : "_"}, lower_comp(e, i + 1));
      } else {
        std::string v = env_.fresh_arg();
        CorePat cp = lower_pattern(s.pat);
        k = cfun({v}, match_one(cvar(v), cp, lower_comp(e, i + 1), nil));
      }
      return capps(global("GHC.List", "concatMap"), {std::move(k), std::move(src)});
    }
  }
  return nil;
}

CoreTerm Desugarer::lower_reccon(const Expr& e) {
  auto ce = con_entry(e.name);
  if (!ce) throw Unsupported("record construction with unknown constructor " + e.name.str(), e.loc);
  std::vector<CoreTerm> args(static_cast<size_t>(ce->arity), cfailure());
  std::vector<bool> given(args.size(), false);
  for (size_t i = 0; i < e.fields.size(); ++i) {
    auto it = std::find(ce->fields.begin(), ce->fields.end(), e.fields[i].base);
    if (it == ce->fields.end()) throw UnknownField(e.name.base, e.fields[i].base);
    size_t k = static_cast<size_t>(it - ce->fields.begin());
    args[k] = lower_expr(e.args[i]);
    given[k] = true;
  }
  if (e.wildcard)
    for (size_t k = 0; k < ce->fields.size(); ++k)
      if (!given[k]) args[k] = cvar(var(ce->fields[k]));
  return capps(cvar(env_.render(e.name)), std::move(args));
}

CoreTerm Desugarer::lower_recupdate(const Expr& e) {
  if (e.fields.empty()) return lower_expr(e.args[0]);
  // Constructors of the updated type that carry every named field.
  QualName type;
  bool found = false;
  auto owner = [&](const QualName& field) -> std::optional<QualName> {
    for (const auto& [c, ce] : local_cons_)
      if (c.module == field.module && std::count(ce.fields.begin(), ce.fields.end(), field.base)) return ce.type;
    if (const ModuleIface* m = ifaces_.find(field.module))
      for (const auto& [c, ci] : m->constructors)
        if (std::count(ci.fields.begin(), ci.fields.end(), field.base)) return ci.type;
    return std::nullopt;
  };
  if (auto t = owner(e.fields[0])) {
    type = *t;
    found = true;
  }
  if (!found) throw UnknownField("record update", e.fields[0].base);
  std::vector<CoreTerm> values;
  std::set<std::string> captured;
  for (size_t i = 1; i < e.args.size(); ++i) {
    values.push_back(lower_expr(e.args[i]));
    free_names(values.back(), captured);
  }
  return with_scrutinee(e.args[0], [&](const CoreTerm& s) {
    std::vector<CoreBranch> branches;
    std::vector<std::vector<CorePat>> rows;
    for (const auto& c : constructors_of(type)) {
      auto ce = con_entry(c);
      if (!ce) continue;
      bool all = true;
      for (const auto& f : e.fields) all = all && std::count(ce->fields.begin(), ce->fields.end(), f.base);
      if (!all) continue;
      std::vector<CorePat> ps;
      std::vector<CoreTerm> out;
      for (size_t k = 0; k < ce->fields.size(); ++k) {
        const std::string& f = ce->fields[k];
        auto it = std::find_if(e.fields.begin(), e.fields.end(), [&](const QualName& q) { return q.base == f; });
        if (it != e.fields.end()) {
          ps.push_back(pwild());
          out.push_back(values[static_cast<size_t>(it - e.fields.begin())]);
          continue;
        }
        std::string v = var(f);
        if (captured.count(v) || (s.kind == CoreTerm::Var && s.name == v)) v = env_.fresh_arg();
        ps.push_back(pvar(v));
        out.push_back(cvar(v));
      }
      std::string cn = env_.render(c);
      rows.push_back({pcon(cn, ps)});
      branches.push_back(CoreBranch{{pcon(cn, std::move(ps))}, capps(cvar(cn), std::move(out))});
    }
    if (branches.empty()) throw UnknownField("record update", e.fields[0].base);
    if (!exhaustive(rows)) branches.push_back(CoreBranch{{pwild()}, cfailure()});
    return cmatch({s}, std::move(branches));
  });
}

CoreTerm Desugarer::lower_expr(const Expr& e) {
  switch (e.kind) {
    case Expr::Var:
    case Expr::Con:
      return cvar(env_.render(e.name));
    case Expr::Lit: {
      if (!e.lit.empty() && e.lit[0] == '-')
        return capp(global("GHC.Num", "negate"), capp(global("GHC.Num", "fromInteger"), core_num(e.lit.substr(1))));
      return capp(global("GHC.Num", "fromInteger"), core_num(e.lit));
    }
    case Expr::App:
      return capp(lower_expr(e.args[0]), lower_expr(e.args[1]));
    case Expr::OpApp:
      return capps(cvar(env_.render(e.name)), {lower_expr(e.args[0]), lower_expr(e.args[1])});
    case Expr::Neg:
      return capp(global("GHC.Num", "negate"), lower_expr(e.args[0]));
    case Expr::Lambda:
      return lower_lambda(e);
    case Expr::Let:
      return lower_binds(e.binds, lower_expr(e.args[0]));
    case Expr::If:
      return cif(lower_expr(e.args[0]), lower_expr(e.args[1]), lower_expr(e.args[2]));
    case Expr::Case:
      return lower_case(e);
    case Expr::Do:
      return lower_do(e.stmts, 0);
    case Expr::ListComp:
      return lower_comp(e, 0);
    case Expr::RecCon:
      return lower_reccon(e);
    case Expr::RecUpdate:
      return lower_recupdate(e);
    case Expr::Tuple: {
      CoreTerm pair = global("GHC.Tuple", "(,)", Namespace::Constructor);
      CoreTerm acc = lower_expr(e.args[0]);
      for (size_t i = 1; i < e.args.size(); ++i) acc = capps(pair, {std::move(acc), lower_expr(e.args[i])});
      return acc;
    }
    case Expr::List: {
      CoreTerm cons = global("GHC.Types", ":", Namespace::Constructor);
      CoreTerm acc = global("GHC.Types", "[]", Namespace::Constructor);
      for (auto it = e.args.rbegin(); it != e.args.rend(); ++it) acc = capps(cons, {lower_expr(*it), std::move(acc)});
      return acc;
    }
    case Expr::EnumFrom: {
      bool then = e.enum_parts.size() > 0 && e.enum_parts[0];
      bool to = e.enum_parts.size() > 1 && e.enum_parts[1];
      std::string fn = std::string("enumFrom") + (then ? "Then" : "") + (to ? "To" : "");
      std::vector<CoreTerm> args;
      for (const auto& a : e.args) args.push_back(lower_expr(a));
      return capps(global("GHC.Enum", fn), std::move(args));
    }
    case Expr::TypeAnnot: {
      CoreTerm t;
      t.kind = CoreTerm::Annot;
      t.args.push_back(lower_expr(e.args[0]));
      t.type.push_back(lower_type(e.type.type));
      return t;
    }
    case Expr::Bottom:
      return cfailure();
  }
  return cfailure();
}

// ----------------------------------------------------------------- types

CoreType Desugarer::lower_type(const Type& t) const {
  switch (t.kind) {
    case Type::Var:
      return tvar(t.var);
    case Type::Con:
      return tcon(env_.render(t.con));
    case Type::App:
      return tapp(lower_type(t.args[0]), lower_type(t.args[1]));
    case Type::Fun:
      return tfun(lower_type(t.args[0]), lower_type(t.args[1]));
    case Type::List:
      return tapp(tcon(env_.render(QualName{"GHC.Types", "[]", Namespace::Type})), lower_type(t.args[0]));
    case Type::Unit:
      return tcon(env_.render(QualName{"GHC.Tuple", "()", Namespace::Type}));
    case Type::Tuple: {
      CoreType acc = lower_type(t.args[0]);
      for (size_t i = 1; i < t.args.size(); ++i) {
        CoreType p;
        p.kind = CoreType::Prod;
        p.args.push_back(std::move(acc));
        p.args.push_back(lower_type(t.args[i]));
        acc = std::move(p);
      }
      return acc;
    }
  }
  return tvar("_");
}

Type substitute_type(const Type& t, const std::string& var, const Type& head) {
  if (t.kind == Type::Var && t.var == var) return head;
  Type out = t;
  for (auto& a : out.args) a = substitute_type(a, var, head);
  return out;
}

// --------------------------------------------------------------- records

std::vector<Decl> Desugarer::record_accessors(const DataDecl& d) const {
  std::vector<Decl> out;
  std::vector<std::string> seen;
  Type self;
  self.kind = Type::Con;
  self.con = d.name;
  for (const auto& p : d.params) {
    Type v;
    v.var = p;
    Type app;
    app.kind = Type::App;
    app.args = {self, v};
    self = app;
  }
  for (const auto& c : d.cons) {
    for (size_t k = 0; k < c.fields.size(); ++k) {
      const std::string& f = c.fields[k];
      if (std::count(seen.begin(), seen.end(), f)) continue;
      seen.push_back(f);
      QualName fq{d.name.module, f, Namespace::Value};
      TypeSig sig;
      sig.names.push_back(fq);
      sig.type.type.kind = Type::Fun;
      sig.type.type.args = {self, c.args[k]};
      out.push_back(Decl{sig, c.loc});

      Expr scase;
      scase.kind = Expr::Case;
      scase.args.push_back(mk_var(local_name("x")));
      for (const auto& other : d.cons) {
        auto it = std::find(other.fields.begin(), other.fields.end(), f);
        if (it == other.fields.end()) continue;
        std::vector<Pattern> ps(other.args.size(), mk_pwild());
        ps[static_cast<size_t>(it - other.fields.begin())] = mk_pvar(f);
        Alt a;
        a.pat = mk_pcon(other.name, std::move(ps));
        a.rhs.grhss.push_back(GuardedRhs{{}, mk_var(local_name(f))});
        scase.alts.push_back(std::move(a));
      }
      Binding b;
      b.kind = Binding::Fun;
      b.name = fq;
      Equation eq;
      eq.params.push_back(mk_pvar("x"));
      eq.rhs.grhss.push_back(GuardedRhs{{}, std::move(scase)});
      b.eqs.push_back(std::move(eq));
      out.push_back(Decl{FunBind{std::move(b)}, c.loc});
    }
  }
  return out;
}

// ---------------------------------------------------------- unused vars

namespace {

void clear_pattern(CorePat& p, const std::set<std::string>& used) {
  if (p.kind == CorePat::Var && !used.count(p.name)) {
    p = pwild();
    return;
  }
  for (auto& a : p.args) clear_pattern(a, used);
  if (p.kind == CorePat::As && !used.count(p.name)) {
    CorePat inner = p.args[0];
    p = std::move(inner);
  }
}

}  // namespace

void clear_unused_pattern_vars(CoreTerm& t) {
  for (auto& a : t.args) clear_unused_pattern_vars(a);
  for (auto& b : t.branches) {
    clear_unused_pattern_vars(b.body);
    std::set<std::string> used;
    free_names(b.body, used);
    for (auto& p : b.pats) clear_pattern(p, used);
  }
}

}  // namespace totalizer
