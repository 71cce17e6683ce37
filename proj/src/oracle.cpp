// SPDX-License-Identifier: Apache-2.0
#include "totalizer/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "totalizer/names.hpp"
#include "totalizer/parser.hpp"
#include "totalizer/resolve.hpp"
#include "totalizer/translate.hpp"

namespace totalizer::oracle {

namespace {

// ------------------------------------------------------------------ values

struct Value;
using VP = std::shared_ptr<const Value>;

struct Value {
  enum Kind { Int, Con, Fun } kind = Int;
  std::int64_t i = 0;
  std::string name;  // Con
  std::vector<VP> args;
  std::function<VP(const VP&)> fn;
};

struct BottomSignal {
  std::string reason;
};
struct StuckSignal {
  std::string reason;
};

VP mk_int(std::int64_t i) {
  auto v = std::make_shared<Value>();
  v->i = i;
  return v;
}

VP mk_con(std::string name, std::vector<VP> args = {}) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Con;
  v->name = std::move(name);
  v->args = std::move(args);
  return v;
}

VP mk_fun(std::function<VP(const VP&)> fn) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Fun;
  v->fn = std::move(fn);
  return v;
}

std::string unqualified(const std::string& name) {
  auto dot = name.rfind('.');
  return dot == std::string::npos ? name : name.substr(dot + 1);
}

void show(const VP& v, std::ostringstream& os, bool nested) {
  switch (v->kind) {
    case Value::Int:
      if (nested && v->i < 0) os << "(" << v->i << ")";
      else os << v->i;
      return;
    case Value::Fun:
      os << "<fun>";
      return;
    case Value::Con:
      if (v->args.empty()) {
        os << unqualified(v->name);
        return;
      }
      if (nested) os << "(";
      os << unqualified(v->name);
      for (const auto& a : v->args) {
        os << " ";
        show(a, os, true);
      }
      if (nested) os << ")";
      return;
  }
}

std::string show(const VP& v) {
  std::ostringstream os;
  show(v, os, false);
  return os.str();
}

bool structurally_equal(const VP& a, const VP& b) {
  if (a->kind != b->kind) throw StuckSignal{"comparing values of different kinds"};
  if (a->kind == Value::Fun) throw StuckSignal{"comparing functions"};
  if (a->kind == Value::Int) return a->i == b->i;
  if (a->name != b->name || a->args.size() != b->args.size()) return false;
  for (size_t k = 0; k < a->args.size(); ++k)
    if (!structurally_equal(a->args[k], b->args[k])) return false;
  return true;
}

std::int64_t wrap(std::uint64_t u) { return static_cast<std::int64_t>(u); }

// ------------------------------------------------------------------ thunks

struct Thunk {
  std::function<VP()> compute;
  VP value;
  bool busy = false;

  VP force() {
    if (value) return value;
    if (busy) throw StuckSignal{"value depends on itself"};
    busy = true;
    try {
      value = compute();
    } catch (...) {
      busy = false;
      throw;
    }
    busy = false;
    compute = nullptr;
    return value;
  }
};
using TP = std::shared_ptr<Thunk>;

TP ready(VP v) {
  auto t = std::make_shared<Thunk>();
  t->value = std::move(v);
  return t;
}

TP delay(std::function<VP()> f) {
  auto t = std::make_shared<Thunk>();
  t->compute = std::move(f);
  return t;
}

struct Scope;
using SP = std::shared_ptr<Scope>;

struct Scope {
  std::map<std::string, TP> vars;
  SP parent;

  const TP* find(const std::string& n) const {
    for (const Scope* s = this; s; s = s->parent.get())
      if (auto it = s->vars.find(n); it != s->vars.end()) return &it->second;
    return nullptr;
  }
};

SP child(const SP& parent) {
  auto s = std::make_shared<Scope>();
  s->parent = parent;
  return s;
}

// Curried function collecting `n` arguments before running `body`.
VP collect(size_t n, std::function<VP(std::vector<VP>)> body, std::vector<VP> got = {}) {
  if (got.size() == n) return body(std::move(got));
  return mk_fun([n, body, got](const VP& x) {
    std::vector<VP> more = got;
    more.push_back(x);
    return collect(n, body, std::move(more));
  });
}

VP call(const VP& f, const VP& x) {
  if (f->kind == Value::Fun) return f->fn(x);
  if (f->kind == Value::Con) {
    std::vector<VP> args = f->args;
    args.push_back(x);
    return mk_con(f->name, std::move(args));
  }
  throw StuckSignal{"applying an integer"};
}

std::int64_t as_int(const VP& v) {
  if (v->kind != Value::Int) throw StuckSignal{"expected an integer, got " + show(v)};
  return v->i;
}

// Shared arithmetic and comparison builtins; `t` and `f` are the boolean constructor names.
struct Builtins {
  std::string t = "true", f = "false";

  VP boolean(bool b) const { return mk_con(b ? t : f); }
  bool as_bool(const VP& v) const {
    if (v->kind == Value::Con && v->args.empty() && v->name == t) return true;
    if (v->kind == Value::Con && v->args.empty() && v->name == f) return false;
    throw StuckSignal{"expected a boolean, got " + show(v)};
  }

  std::optional<VP> binary(const std::string& op, const VP& a, const VP& b) const {
    auto u = [](const VP& v) { return static_cast<std::uint64_t>(as_int(v)); };
    if (op == "+") return mk_int(wrap(u(a) + u(b)));
    if (op == "-") return mk_int(wrap(u(a) - u(b)));
    if (op == "*") return mk_int(wrap(u(a) * u(b)));
    if (op == "==") return boolean(structurally_equal(a, b));
    if (op == "/=") return boolean(!structurally_equal(a, b));
    if (op == "<") return boolean(as_int(a) < as_int(b));
    if (op == "<=") return boolean(as_int(a) <= as_int(b));
    if (op == ">") return boolean(as_int(a) > as_int(b));
    if (op == ">=") return boolean(as_int(a) >= as_int(b));
    if (op == "&&") return boolean(as_bool(a) && as_bool(b));
    if (op == "||") return boolean(as_bool(a) || as_bool(b));
    return std::nullopt;
  }

  VP binary_fun(const std::string& op) const {
    Builtins self = *this;
    return collect(2, [self, op](std::vector<VP> xs) { return *self.binary(op, xs[0], xs[1]); });
  }
};

struct Budget {
  std::uint64_t left;
  void tick() {
    if (left == 0) throw StuckSignal{"step budget exhausted"};
    --left;
  }
};

Outcome run_entry(const std::function<VP()>& f) {
  try {
    return Outcome{Outcome::Value, show(f())};
  } catch (const BottomSignal& b) {
    return Outcome{Outcome::Bottom, b.reason};
  } catch (const StuckSignal& s) {
    return Outcome{Outcome::Stuck, s.reason};
  }
}

// ----------------------------------------------------------------- surface

class SurfaceEval {
 public:
  SurfaceEval(const SurfaceModule& m, std::uint64_t budget) : m_(m), names_(m.name, nullptr), budget_{budget} {
    for (const auto& d : m.decls) {
      if (const auto* dd = std::get_if<DataDecl>(&d.v)) {
        for (const auto& c : dd->cons) {
          cons_[c.name] = ConInfo{con_name(c.name), c.fields, c.args.size()};
          for (size_t k = 0; k < c.fields.size(); ++k)
            fields_[QualName{m.name, c.fields[k], Namespace::Value}].push_back({c.name, k});
        }
      } else if (const auto* fb = std::get_if<FunBind>(&d.v)) {
        globals_[fb->bind.name.str()] = &fb->bind;
      }
    }
    top_ = std::make_shared<Scope>();
  }

  Outcome entry(const std::string& base) {
    return run_entry([&] { return global(QualName{m_.name, base, Namespace::Value}); });
  }

 private:
  struct ConInfo {
    std::string shown;
    std::vector<std::string> fields;
    size_t arity = 0;
  };

  std::string con_name(const QualName& q) const { return unqualified(names_.render(q)); }

  VP global(const QualName& q) {
    std::string key = q.str();
    if (auto it = global_thunks_.find(key); it != global_thunks_.end()) return it->second->force();
    if (auto it = globals_.find(key); it != globals_.end()) {
      const Binding* b = it->second;
      TP t = delay([this, b] { return function_value(b->eqs, top_); });
      global_thunks_[key] = t;
      return t->force();
    }
    if (auto it = fields_.find(q); it != fields_.end()) {
      auto owners = it->second;
      std::map<std::string, size_t> by_name;
      for (const auto& [c, k] : owners) by_name[cons_.at(c).shown] = k;
      return mk_fun([by_name, key](const VP& r) -> VP {
        if (r->kind != Value::Con) throw StuckSignal{"field selection from a non-constructor"};
        auto hit = by_name.find(r->name);
        if (hit == by_name.end()) throw BottomSignal{"no field " + key + " in " + r->name};
        return r->args.at(hit->second);
      });
    }
    if (key == "GHC.Base.otherwise") return ops_.boolean(true);
    if (key == "GHC.Classes.not") return mk_fun([this](const VP& b) { return ops_.boolean(!ops_.as_bool(b)); });
    if (key == "GHC.Num.negate") return mk_fun([](const VP& x) { return mk_int(wrap(0 - static_cast<std::uint64_t>(as_int(x)))); });
    if (key == "GHC.Num.fromInteger") return mk_fun([](const VP& x) { return x; });
    static const std::set<std::string> binops = {"+", "-", "*", "==", "/=", "<", "<=", ">", ">=", "&&", "||"};
    if ((q.module == "GHC.Num" || q.module == "GHC.Classes") && binops.count(q.base)) return ops_.binary_fun(q.base);
    throw StuckSignal{"unknown name " + key};
  }

  VP constructor(const QualName& q) { return mk_con(con_name(q)); }

  // Function (or value when there are no parameters) defined by equations.
  VP function_value(const std::vector<Equation>& eqs, const SP& scope) {
    size_t n = eqs.front().params.size();
    if (n == 0) {
      auto r = eval_rhs(eqs.front().rhs, scope);
      if (!r) throw BottomSignal{"no guard holds"};
      return *r;
    }
    const std::vector<Equation>* pe = &eqs;
    return collect(n, [this, pe, scope](std::vector<VP> args) -> VP {
      for (const auto& eq : *pe) {
        SP s = child(scope);
        bool ok = true;
        for (size_t k = 0; k < args.size() && ok; ++k) ok = match(eq.params[k], ready(args[k]), s);
        if (!ok) continue;
        if (auto r = eval_rhs(eq.rhs, s)) return *r;
      }
      throw BottomSignal{"pattern match failure"};
    });
  }

  // Empty when every guard fails, so the caller falls through to its next alternative.
  std::optional<VP> eval_rhs(const Rhs& rhs, const SP& scope) {
    SP s = bind_all(rhs.where, scope);
    for (const auto& g : rhs.grhss) {
      SP gs = child(s);
      if (guards_hold(g.guards, gs)) return eval(g.body, gs);
    }
    return std::nullopt;
  }

  bool guards_hold(const std::vector<Stmt>& guards, SP& s) {
    for (const auto& st : guards) {
      switch (st.kind) {
        case Stmt::Exp:
          if (!ops_.as_bool(eval(st.expr, s))) return false;
          break;
        case Stmt::Bind: {
          TP t = delay([this, e = &st.expr, s] { return eval(*e, s); });
          SP next = child(s);
          if (!match(st.pat, t, next)) return false;
          s = next;
          break;
        }
        case Stmt::Let:
          s = bind_all(st.binds, s);
          break;
      }
    }
    return true;
  }

  // Recursive binding group: functions and values lazily, other patterns at once.
  SP bind_all(const std::vector<Binding>& binds, const SP& scope) {
    if (binds.empty()) return scope;
    SP s = child(scope);
    std::vector<std::pair<const Binding*, TP>> patterns;
    for (const auto& b : binds) {
      if (b.kind == Binding::Fun) {
        s->vars[b.name.base] = delay([this, eqs = &b.eqs, s] { return function_value(*eqs, s); });
      } else if (b.kind == Binding::Pat) {
        TP t = delay([this, rhs = &b.rhs, s]() -> VP {
          auto r = eval_rhs(*rhs, s);
          if (!r) throw BottomSignal{"no guard holds"};
          return *r;
        });
        if (b.pat.kind == Pattern::Var) s->vars[b.pat.name.base] = t;
        else patterns.push_back({&b, t});
      }
    }
    for (const auto& [b, t] : patterns)
      if (!match(b->pat, t, s)) throw BottomSignal{"irrefutable pattern failed"};
    return s;
  }

  const ConInfo& con_info(const QualName& q) {
    auto it = cons_.find(q);
    if (it == cons_.end()) throw StuckSignal{"unknown record constructor " + q.str()};
    return it->second;
  }

  bool match_con(const std::string& shown, const std::vector<Pattern>& args, const VP& v, const SP& s) {
    if (v->kind != Value::Con) throw StuckSignal{"matching a constructor against " + show(v)};
    if (v->name != shown) return false;
    if (v->args.size() != args.size()) throw StuckSignal{"constructor arity mismatch for " + shown};
    for (size_t k = 0; k < args.size(); ++k)
      if (!match(args[k], ready(v->args[k]), s)) return false;
    return true;
  }

  bool match(const Pattern& p, const TP& t, const SP& s) {
    budget_.tick();
    switch (p.kind) {
      case Pattern::Var:
        s->vars[p.name.base] = t;
        return true;
      case Pattern::Wild:
        return true;
      case Pattern::Lazy:
        return match(p.args[0], t, s);
      case Pattern::As:
        s->vars[p.name.base] = t;
        return match(p.args[0], t, s);
      case Pattern::Lit:
        return as_int(t->force()) == std::stoll(p.lit);
      case Pattern::Con:
        return match_con(con_name(p.name), p.args, t->force(), s);
      case Pattern::Rec: {
        const ConInfo& ci = con_info(p.name);
        VP v = t->force();
        if (v->kind != Value::Con) throw StuckSignal{"matching a record against " + show(v)};
        if (v->name != ci.shown) return false;
        std::set<std::string> given;
        for (size_t k = 0; k < p.fields.size(); ++k) {
          auto it = std::find(ci.fields.begin(), ci.fields.end(), p.fields[k].base);
          if (it == ci.fields.end()) throw StuckSignal{"no field " + p.fields[k].base};
          given.insert(p.fields[k].base);
          if (!match(p.args[k], ready(v->args[static_cast<size_t>(it - ci.fields.begin())]), s)) return false;
        }
        if (p.wildcard)
          for (size_t k = 0; k < ci.fields.size(); ++k)
            if (!given.count(ci.fields[k])) s->vars[ci.fields[k]] = ready(v->args[k]);
        return true;
      }
      case Pattern::Tuple: {
        VP v = t->force();
        for (size_t k = p.args.size(); k-- > 1;) {
          if (v->kind != Value::Con || v->args.size() != 2) throw StuckSignal{"matching a tuple against " + show(v)};
          if (!match(p.args[k], ready(v->args[1]), s)) return false;
          v = v->args[0];
        }
        return match(p.args[0], ready(v), s);
      }
      case Pattern::List: {
        VP v = t->force();
        for (const auto& a : p.args) {
          if (v->kind != Value::Con) throw StuckSignal{"matching a list against " + show(v)};
          if (v->name != nil_) {
            if (!match(a, ready(v->args.at(0)), s)) return false;
            v = v->args.at(1);
          } else {
            return false;
          }
        }
        return v->kind == Value::Con && v->name == nil_;
      }
    }
    return false;
  }

  VP pair(VP a, VP b) const { return mk_con(pair_, {std::move(a), std::move(b)}); }

  VP list(const std::vector<VP>& xs) const {
    VP acc = mk_con(nil_);
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) acc = mk_con(cons_name_, {*it, acc});
    return acc;
  }

  void comprehension(const Expr& e, size_t i, const SP& s, std::vector<VP>& out) {
    budget_.tick();
    if (i == e.stmts.size()) {
      out.push_back(eval(e.args[0], s));
      return;
    }
    const Stmt& st = e.stmts[i];
    switch (st.kind) {
      case Stmt::Exp:
        if (ops_.as_bool(eval(st.expr, s))) comprehension(e, i + 1, s, out);
        return;
      case Stmt::Let:
        comprehension(e, i + 1, bind_all(st.binds, s), out);
        return;
      case Stmt::Bind: {
        VP l = eval(st.expr, s);
        while (l->kind == Value::Con && l->name == cons_name_) {
          SP c = child(s);
          if (match(st.pat, ready(l->args[0]), c)) comprehension(e, i + 1, c, out);
          l = l->args[1];
        }
        return;
      }
    }
  }

  VP eval(const Expr& e, const SP& s) {
    budget_.tick();
    switch (e.kind) {
      case Expr::Var: {
        if (e.name.local()) {
          if (const TP* t = s->find(e.name.base)) return (*t)->force();
          throw StuckSignal{"unbound variable " + e.name.base};
        }
        return global(e.name);
      }
      case Expr::Con:
        return constructor(e.name);
      case Expr::Lit:
        return mk_int(std::stoll(e.lit));
      case Expr::App: {
        VP f = eval(e.args[0], s);
        VP x = eval(e.args[1], s);
        return call(f, x);
      }
      case Expr::OpApp: {
        VP l = eval(e.args[0], s);
        VP r = eval(e.args[1], s);
        if (e.op_con) return mk_con(con_name(e.name), {l, r});
        if (e.name.module == "GHC.Num" || e.name.module == "GHC.Classes")
          if (auto v = ops_.binary(e.name.base, l, r)) return *v;
        return call(call(global(e.name), l), r);
      }
      case Expr::Neg:
        return mk_int(wrap(0 - static_cast<std::uint64_t>(as_int(eval(e.args[0], s)))));
      case Expr::Lambda: {
        const Expr* pe = &e;
        return collect(e.pats.size(), [this, pe, s](std::vector<VP> args) -> VP {
          SP c = child(s);
          for (size_t k = 0; k < args.size(); ++k)
            if (!match(pe->pats[k], ready(args[k]), c)) throw BottomSignal{"lambda pattern failed"};
          return eval(pe->args[0], c);
        });
      }
      case Expr::Let:
        return eval(e.args[0], bind_all(e.binds, s));
      case Expr::If:
        return eval(ops_.as_bool(eval(e.args[0], s)) ? e.args[1] : e.args[2], s);
      case Expr::Case: {
        TP scrut = delay([this, x = &e.args[0], s] { return eval(*x, s); });
        for (const auto& a : e.alts) {
          SP c = child(s);
          if (!match(a.pat, scrut, c)) continue;
          if (auto r = eval_rhs(a.rhs, c)) return *r;
        }
        throw BottomSignal{"no case alternative matches"};
      }
      case Expr::ListComp: {
        std::vector<VP> out;
        comprehension(e, 0, s, out);
        return list(out);
      }
      case Expr::RecCon: {
        const ConInfo& ci = con_info(e.name);
        std::vector<VP> args(ci.arity);
        for (size_t k = 0; k < e.fields.size(); ++k) {
          auto it = std::find(ci.fields.begin(), ci.fields.end(), e.fields[k].base);
          if (it == ci.fields.end()) throw StuckSignal{"no field " + e.fields[k].base};
          args[static_cast<size_t>(it - ci.fields.begin())] = eval(e.args[k], s);
        }
        for (size_t k = 0; k < args.size(); ++k) {
          if (args[k]) continue;
          const TP* t = e.wildcard && k < ci.fields.size() ? s->find(ci.fields[k]) : nullptr;
          if (!t) throw BottomSignal{"missing field in construction of " + ci.shown};
          args[k] = (*t)->force();
        }
        return mk_con(ci.shown, std::move(args));
      }
      case Expr::RecUpdate: {
        VP r = eval(e.args[0], s);
        if (r->kind != Value::Con) throw StuckSignal{"record update of " + show(r)};
        const ConInfo* ci = nullptr;
        for (const auto& [q, info] : cons_)
          if (info.shown == r->name) ci = &info;
        if (!ci) throw StuckSignal{"record update of " + r->name};
        std::vector<VP> args = r->args;
        for (size_t k = 0; k < e.fields.size(); ++k) {
          auto it = std::find(ci->fields.begin(), ci->fields.end(), e.fields[k].base);
          if (it == ci->fields.end()) throw BottomSignal{"no field " + e.fields[k].base + " in " + ci->shown};
          args[static_cast<size_t>(it - ci->fields.begin())] = eval(e.args[k + 1], s);
        }
        return mk_con(ci->shown, std::move(args));
      }
      case Expr::Tuple: {
        VP acc = eval(e.args[0], s);
        for (size_t k = 1; k < e.args.size(); ++k) acc = pair(acc, eval(e.args[k], s));
        return acc;
      }
      case Expr::List: {
        std::vector<VP> xs;
        for (const auto& a : e.args) xs.push_back(eval(a, s));
        return list(xs);
      }
      case Expr::TypeAnnot:
        return eval(e.args[0], s);
      case Expr::Bottom:
        throw BottomSignal{"undefined"};
      case Expr::Do:
      case Expr::EnumFrom:
        throw StuckSignal{"expression form not interpreted"};
    }
    throw StuckSignal{"expression form not interpreted"};
  }

  const SurfaceModule& m_;
  NameEnv names_;
  Budget budget_;
  Builtins ops_;
  std::string nil_ = "nil", cons_name_ = "cons", pair_ = "pair";
  std::map<QualName, ConInfo> cons_;
  std::map<QualName, std::vector<std::pair<QualName, size_t>>> fields_;
  std::map<std::string, const Binding*> globals_;
  std::map<std::string, TP> global_thunks_;
  SP top_;
};

// -------------------------------------------------------------------- core

class CoreEval {
 public:
  CoreEval(const std::vector<VernSentence>& sentences, std::uint64_t budget) : budget_{budget} {
    for (const auto& s : sentences) {
      switch (s.kind) {
        case VernSentence::Definition:
        case VernSentence::LocalDefinition:
          if (!s.body.empty()) defs_[s.name] = &s;
          break;
        case VernSentence::Axiom:
        case VernSentence::LocalAxiom:
          axioms_.insert(s.name);
          break;
        case VernSentence::Inductive:
          for (const auto& c : s.constructors) cons_.insert(c.name);
          break;
        default:
          break;
      }
    }
    top_ = std::make_shared<Scope>();
  }

  Outcome entry(const std::string& name) {
    return run_entry([&] { return global(name); });
  }

 private:
  VP global(const std::string& name) {
    if (auto it = thunks_.find(name); it != thunks_.end()) return it->second->force();
    if (auto it = defs_.find(name); it != defs_.end()) {
      const VernSentence* s = it->second;
      TP t = delay([this, s] { return definition(*s); });
      thunks_[name] = t;
      return t->force();
    }
    if (axioms_.count(name)) throw BottomSignal{"axiom " + name};
    if (cons_.count(name) || name == "true" || name == "false" || name == "nil" || name == "cons" ||
        name == "pair" || name == "tt")
      return mk_con(name);
    if (auto v = builtin(name)) return *v;
    throw StuckSignal{"unknown name " + name};
  }

  VP definition(const VernSentence& s) {
    std::vector<std::string> params;
    for (const auto& b : s.binders)
      if (!b.implicit && !b.generalized) params.push_back(b.name);
    if (params.empty()) return eval(s.body[0], top_);
    const CoreTerm* body = &s.body[0];
    return collect(params.size(), [this, params, body](std::vector<VP> args) {
      SP c = child(top_);
      for (size_t k = 0; k < args.size(); ++k) c->vars[params[k]] = ready(args[k]);
      return eval(*body, c);
    });
  }

  std::optional<VP> builtin(const std::string& name) {
    static const std::map<std::string, std::string> binops = {
        {"GHC.Num.op_zp__", "+"},      {"GHC.Num.op_zm__", "-"},      {"GHC.Num.op_zt__", "*"},
        {"GHC.Classes.op_zeze__", "=="}, {"GHC.Classes.op_zsze__", "/="}, {"GHC.Classes.op_zl__", "<"},
        {"GHC.Classes.op_zlze__", "<="}, {"GHC.Classes.op_zg__", ">"},    {"GHC.Classes.op_zgze__", ">="},
        {"andb", "&&"},                {"orb", "||"}};
    if (auto it = binops.find(name); it != binops.end()) return ops_.binary_fun(it->second);
    if (name == "GHC.Num.negate")
      return mk_fun([](const VP& x) { return mk_int(wrap(0 - static_cast<std::uint64_t>(as_int(x)))); });
    if (name == "GHC.Num.fromInteger") return mk_fun([](const VP& x) { return x; });
    if (name == "negb") return mk_fun([this](const VP& b) { return ops_.boolean(!ops_.as_bool(b)); });
    if (name == "GHC.Base.otherwise") return ops_.boolean(true);
    if (name == "GHC.List.concatMap")
      return collect(2, [](std::vector<VP> xs) {
        std::vector<VP> out;
        for (VP l = xs[1]; l->kind == Value::Con && l->name == "cons"; l = l->args[1]) {
          for (VP r = call(xs[0], l->args[0]); r->kind == Value::Con && r->name == "cons"; r = r->args[1])
            out.push_back(r->args[0]);
        }
        VP acc = mk_con("nil");
        for (auto it = out.rbegin(); it != out.rend(); ++it) acc = mk_con("cons", {*it, acc});
        return acc;
      });
    return std::nullopt;
  }

  bool match(const CorePat& p, const TP& t, const SP& s) {
    budget_.tick();
    switch (p.kind) {
      case CorePat::Var:
        s->vars[p.name] = t;
        return true;
      case CorePat::Wild:
        return true;
      case CorePat::As:
        s->vars[p.name] = t;
        return match(p.args[0], t, s);
      case CorePat::Num:
        return as_int(t->force()) == std::stoll(p.lit);
      case CorePat::Con: {
        VP v = t->force();
        if (v->kind != Value::Con) throw StuckSignal{"matching a constructor against " + show(v)};
        if (v->name != p.name) return false;
        if (v->args.size() != p.args.size()) throw StuckSignal{"constructor arity mismatch for " + p.name};
        for (size_t k = 0; k < p.args.size(); ++k)
          if (!match(p.args[k], ready(v->args[k]), s)) return false;
        return true;
      }
    }
    return false;
  }

  VP function(const std::vector<CoreParam>& ps, const CoreTerm* body, const SP& s) {
    std::vector<std::string> names;
    for (const auto& p : ps)
      if (!p.implicit && !p.generalized) names.push_back(p.name);
    if (names.empty()) return eval(*body, s);
    return collect(names.size(), [this, names, body, s](std::vector<VP> args) {
      SP c = child(s);
      for (size_t k = 0; k < args.size(); ++k)
        if (names[k] != "_") c->vars[names[k]] = ready(args[k]);
      return eval(*body, c);
    });
  }

  VP eval(const CoreTerm& t, const SP& s) {
    budget_.tick();
    switch (t.kind) {
      case CoreTerm::Var:
        if (const TP* v = s->find(t.name)) return (*v)->force();
        return global(t.name);
      case CoreTerm::App: {
        VP f = eval(t.args[0], s);
        VP x = eval(t.args[1], s);
        return call(f, x);
      }
      case CoreTerm::Fun:
        return function(t.params, &t.args[0], s);
      case CoreTerm::Fix: {
        SP c = child(s);
        const CoreTerm* pt = &t;
        c->vars[t.name] = delay([this, pt, c] { return function(pt->params, &pt->args[0], c); });
        return c->vars[t.name]->force();
      }
      case CoreTerm::UnsafeFix: {
        SP c = child(s);
        const CoreTerm* body = &t.args[0];
        c->vars[t.name] = delay([this, body, c] { return eval(*body, c); });
        return c->vars[t.name]->force();
      }
      case CoreTerm::Match: {
        std::vector<TP> scruts;
        for (const auto& a : t.args) scruts.push_back(delay([this, pa = &a, s] { return eval(*pa, s); }));
        for (const auto& b : t.branches) {
          SP c = child(s);
          bool ok = b.pats.size() == scruts.size();
          for (size_t k = 0; k < scruts.size() && ok; ++k) ok = match(b.pats[k], scruts[k], c);
          if (ok) return eval(b.body, c);
        }
        throw StuckSignal{"match without a matching branch"};
      }
      case CoreTerm::Let: {
        SP c = child(s);
        c->vars[t.name] = delay([this, pb = &t.args[0], s] { return eval(*pb, s); });
        return eval(t.args[1], c);
      }
      case CoreTerm::If:
        return eval(ops_.as_bool(eval(t.args[0], s)) ? t.args[1] : t.args[2], s);
      case CoreTerm::Failure:
        throw BottomSignal{"patternFailure"};
      case CoreTerm::Num:
        return mk_int(std::stoll(t.lit));
      case CoreTerm::Annot:
        return eval(t.args[0], s);
    }
    throw StuckSignal{"term form not interpreted"};
  }

  Budget budget_;
  Builtins ops_;
  std::map<std::string, const VernSentence*> defs_;
  std::set<std::string> axioms_;
  std::set<std::string> cons_;
  std::map<std::string, TP> thunks_;
  SP top_;
};

// --------------------------------------------------------------- generator

enum class Ty { Int, Bool, List, T, R, Fn };

struct GVar {
  std::string name;
  Ty ty;
};

struct GScope {
  std::vector<GVar> vars;
  std::set<std::string> shadowed;  // field names bound as variables by `{..}`

  void add(std::string n, Ty t) { vars.push_back({std::move(n), t}); }
};

struct GCon {
  std::string name;
  std::vector<Ty> args;
  std::vector<std::string> fields;
};

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  Program run() {
    make_types();
    has_walk_ = coin(0.6);
    std::ostringstream os;
    os << "module Gen where\n\n";
    os << data_decl("T", tcons_) << "\n" << data_decl("R", rcons_) << "\n";
    if (has_walk_) os << walk_decl() << "\n";
    size_t nparams = 1 + pick(3);
    std::vector<Ty> params;
    for (size_t k = 0; k < nparams; ++k) params.push_back(any_data_ty());
    Ty result = coin(0.6) ? Ty::Int : std::vector<Ty>{Ty::Bool, Ty::List, Ty::T}[pick(3)];
    os << "f :: ";
    for (Ty t : params) os << ty_name(t) << " -> ";
    os << ty_name(result) << "\n";
    size_t neqs = 1 + pick(4);
    for (size_t k = 0; k < neqs; ++k) os << equation(params, result, k + 1 == neqs && coin(0.5));
    os << "\n";
    Program p;
    size_t nentries = 3 + pick(3);
    for (size_t k = 0; k < nentries; ++k) {
      std::string name = "entry" + std::to_string(k);
      os << name << " :: " << ty_name(result) << "\n" << name << " = f";
      GScope empty;
      for (Ty t : params) os << " " << expr(t, 1 + pick(2), empty);
      os << "\n";
      p.entries.push_back(name);
    }
    p.source = os.str();
    return p;
  }

 private:
  size_t pick(size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng_); }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }
  std::string fresh(const char* prefix) { return prefix + std::to_string(++fresh_); }
  Ty any_data_ty() { return std::vector<Ty>{Ty::Int, Ty::Bool, Ty::List, Ty::T, Ty::R}[pick(5)]; }

  static std::string ty_name(Ty t) {
    switch (t) {
      case Ty::Int: return "Int";
      case Ty::Bool: return "Bool";
      case Ty::List: return "[Int]";
      case Ty::T: return "T";
      case Ty::R: return "R";
      case Ty::Fn: return "Int -> Int";
    }
    return "Int";
  }

  void make_types() {
    static const char* tnames[] = {"A", "B", "C", "D"};
    size_t nt = 2 + pick(3);
    for (size_t k = 0; k < nt; ++k) {
      GCon c{tnames[k], {}, {}};
      if (k > 0) {
        size_t nargs = pick(3);
        for (size_t a = 0; a < nargs; ++a) c.args.push_back(coin(0.7) ? Ty::Int : Ty::T);
      }
      tcons_.push_back(c);
    }
    GCon r1{"R1", {Ty::Int}, {"fa"}};
    if (coin(0.7)) {
      r1.args.push_back(Ty::Int);
      r1.fields.push_back("fb");
    }
    rcons_.push_back(r1);
    if (coin(0.7)) {
      GCon r2{"R2", {Ty::Int}, {"fa"}};
      if (coin(0.7)) {
        r2.args.push_back(Ty::Bool);
        r2.fields.push_back("fc");
      }
      rcons_.push_back(r2);
    }
    for (const auto& c : rcons_)
      for (size_t k = 0; k < c.fields.size(); ++k) field_ty_[c.fields[k]] = c.args[k];
  }

  std::string data_decl(const char* name, const std::vector<GCon>& cons) {
    std::string out = std::string("data ") + name + " = ";
    for (size_t k = 0; k < cons.size(); ++k) {
      if (k) out += " | ";
      out += cons[k].name;
      if (!cons[k].fields.empty()) {
        out += " { ";
        for (size_t a = 0; a < cons[k].args.size(); ++a)
          out += (a ? ", " : "") + cons[k].fields[a] + " :: " + ty_name(cons[k].args[a]);
        out += " }";
      } else {
        for (Ty t : cons[k].args) out += " " + ty_name(t);
      }
    }
    return out + "\n";
  }

  std::string lit() { return std::to_string(pick(6)); }
  std::string cmp() { return std::vector<std::string>{"==", "/=", "<", "<=", ">", ">="}[pick(6)]; }

  std::string walk_decl() {
    std::string base = lit();
    std::ostringstream os;
    os << "walk :: [Int] -> Int\n";
    os << "walk [] = " << base << "\n";
    os << "walk (x : xs)\n";
    os << "  | x " << cmp() << " " << lit() << " = walk xs\n";
    os << "  | otherwise = (x " << std::vector<std::string>{"+", "-", "*"}[pick(3)] << " " << lit()
       << ") + walk xs\n";
    return os.str();
  }

  std::vector<const GVar*> vars_of(const GScope& s, Ty t) {
    std::vector<const GVar*> out;
    for (const auto& v : s.vars)
      if (v.ty == t) out.push_back(&v);
    return out;
  }

  std::optional<std::string> var(const GScope& s, Ty t) {
    auto vs = vars_of(s, t);
    if (vs.empty()) return std::nullopt;
    return vs[pick(vs.size())]->name;
  }

  std::vector<std::string> accessors(const GScope& s, Ty t) {
    std::vector<std::string> out;
    for (const auto& [f, ft] : field_ty_)
      if (ft == t && !s.shadowed.count(f)) out.push_back(f);
    return out;
  }

  std::string expr(Ty t, int depth, const GScope& s) {
    if (depth <= 0 || coin(0.2)) return leaf(t, s);
    switch (t) {
      case Ty::Int: return int_expr(depth, s);
      case Ty::Bool: return bool_expr(depth, s);
      case Ty::List: return list_expr(depth, s);
      case Ty::T: return t_expr(depth, s);
      case Ty::R: return r_expr(depth, s);
      case Ty::Fn: return leaf(t, s);
    }
    return leaf(t, s);
  }

  std::string leaf(Ty t, const GScope& s) {
    if (auto v = var(s, t); v && coin(0.6)) return *v;
    switch (t) {
      case Ty::Int:
        return coin(0.15) ? "(-" + lit() + ")" : lit();
      case Ty::Bool:
        return coin(0.5) ? "True" : "False";
      case Ty::List:
        return coin(0.3) ? "[]" : "[" + lit() + ", " + lit() + "]";
      case Ty::T: {
        std::string out = tcons_[0].name;
        return out;
      }
      case Ty::R: {
        const GCon& c = rcons_[pick(rcons_.size())];
        std::string out = "(" + c.name;
        for (Ty a : c.args) out += " " + leaf(a, GScope{});
        return out + ")";
      }
      case Ty::Fn:
        return "(\\" + fresh("v") + " -> 0)";
    }
    return "0";
  }

  std::string int_expr(int depth, const GScope& s) {
    switch (pick(11)) {
      case 0:
      case 1:
        return "(" + expr(Ty::Int, depth - 1, s) + " " + std::vector<std::string>{"+", "-", "*"}[pick(3)] + " " +
               expr(Ty::Int, depth - 1, s) + ")";
      case 2:
        return if_expr(Ty::Int, depth, s);
      case 3:
        return case_expr(Ty::Int, depth, s);
      case 4:
        return let_expr(Ty::Int, depth, s);
      case 5: {
        auto fs = accessors(s, Ty::Int);
        if (fs.empty()) break;
        return "(" + fs[pick(fs.size())] + " " + expr(Ty::R, depth - 1, s) + ")";
      }
      case 6:
        if (!has_walk_) break;
        return "(walk " + expr(Ty::List, depth - 1, s) + ")";
      case 7: {
        auto g = var(s, Ty::Fn);
        if (!g) break;
        return "(" + *g + " " + expr(Ty::Int, depth - 1, s) + ")";
      }
      case 8: {
        std::string v = fresh("v");
        GScope inner = s;
        inner.add(v, Ty::Int);
        return "((\\" + v + " -> " + expr(Ty::Int, depth - 1, inner) + ") " + expr(Ty::Int, depth - 1, s) + ")";
      }
      case 9:
        return "(negate " + expr(Ty::Int, depth - 1, s) + ")";
      default:
        break;
    }
    return leaf(Ty::Int, s);
  }

  std::string bool_expr(int depth, const GScope& s) {
    switch (pick(6)) {
      case 0:
      case 1:
        return "(" + expr(Ty::Int, depth - 1, s) + " " + cmp() + " " + expr(Ty::Int, depth - 1, s) + ")";
      case 2:
        return "(" + expr(Ty::Bool, depth - 1, s) + (coin(0.5) ? " && " : " || ") + expr(Ty::Bool, depth - 1, s) +
               ")";
      case 3:
        return "(not " + expr(Ty::Bool, depth - 1, s) + ")";
      case 4: {
        auto fs = accessors(s, Ty::Bool);
        if (fs.empty()) break;
        return "(" + fs[pick(fs.size())] + " " + expr(Ty::R, depth - 1, s) + ")";
      }
      default:
        return case_expr(Ty::Bool, depth, s);
    }
    return leaf(Ty::Bool, s);
  }

  std::string list_expr(int depth, const GScope& s) {
    switch (pick(6)) {
      case 0:
        return "(" + expr(Ty::Int, depth - 1, s) + " : " + expr(Ty::List, depth - 1, s) + ")";
      case 1:
        return "[" + expr(Ty::Int, depth - 1, s) + ", " + expr(Ty::Int, depth - 1, s) + "]";
      case 2:
      case 3: {
        GScope inner = s;
        std::string v = fresh("v");
        std::string src = expr(Ty::List, depth - 1, s);
        inner.add(v, Ty::Int);
        std::string quals = v + " <- " + src;
        if (coin(0.3)) {
          std::string w = fresh("v");
          quals += ", " + w + " <- " + expr(Ty::List, depth - 1, inner);
          inner.add(w, Ty::Int);
        }
        if (coin(0.3)) {
          std::string y = fresh("y");
          quals += ", let " + y + " = " + expr(Ty::Int, depth - 1, inner);
          inner.add(y, Ty::Int);
        }
        if (coin(0.6)) quals += ", " + expr(Ty::Bool, depth - 1, inner);
        return "[ " + expr(Ty::Int, depth - 1, inner) + " | " + quals + " ]";
      }
      case 4:
        return if_expr(Ty::List, depth, s);
      default:
        return case_expr(Ty::List, depth, s);
    }
  }

  std::string con_app(const GCon& c, int depth, const GScope& s) {
    if (c.args.empty()) return c.name;
    std::string out = "(" + c.name;
    for (Ty a : c.args) out += " " + expr(a, depth - 1, s);
    return out + ")";
  }

  std::string t_expr(int depth, const GScope& s) {
    switch (pick(4)) {
      case 0:
      case 1:
        return con_app(tcons_[pick(tcons_.size())], depth, s);
      case 2:
        return if_expr(Ty::T, depth, s);
      default:
        return case_expr(Ty::T, depth, s);
    }
  }

  std::string r_expr(int depth, const GScope& s) {
    const GCon& c = rcons_[pick(rcons_.size())];
    switch (pick(4)) {
      case 0:
        return con_app(c, depth, s);
      case 1: {
        std::string out = "(" + c.name + " { ";
        bool first = true;
        for (size_t k = 0; k < c.fields.size(); ++k) {
          if (k > 0 && coin(0.05)) continue;
          out += (first ? "" : ", ") + c.fields[k] + " = " + expr(c.args[k], depth - 1, s);
          first = false;
        }
        return out + " })";
      }
      case 2: {
        std::vector<std::string> fs;
        for (const auto& [f, ft] : field_ty_) fs.push_back(f);
        std::string f = fs[pick(fs.size())];
        return "(" + expr(Ty::R, depth - 1, s) + " { " + f + " = " + expr(field_ty_[f], depth - 1, s) + " })";
      }
      default:
        return if_expr(Ty::R, depth, s);
    }
  }

  std::string if_expr(Ty t, int depth, const GScope& s) {
    return "(if " + expr(Ty::Bool, depth - 1, s) + " then " + expr(t, depth - 1, s) + " else " +
           expr(t, depth - 1, s) + ")";
  }

  std::string let_expr(Ty t, int depth, const GScope& s) {
    GScope inner = s;
    std::vector<std::string> binds;
    std::string x = fresh("x");
    binds.push_back(x + " = " + expr(Ty::Int, depth - 1, s));
    inner.add(x, Ty::Int);
    if (coin(0.4)) {
      std::string a = fresh("a"), b = fresh("b");
      binds.push_back("(" + a + ", " + b + ") = (" + expr(Ty::Int, depth - 1, s) + ", " + expr(Ty::Bool, depth - 1, s) +
                      ")");
      inner.add(a, Ty::Int);
      inner.add(b, Ty::Bool);
    }
    if (coin(0.3)) {
      std::string g = fresh("g"), y = fresh("y");
      GScope body = inner;
      body.add(y, Ty::Int);
      binds.push_back(g + " " + y + " = " + expr(Ty::Int, depth - 1, body));
      inner.add(g, Ty::Fn);
    }
    std::string out = "(let { ";
    for (size_t k = 0; k < binds.size(); ++k) out += (k ? "; " : "") + binds[k];
    return out + " } in " + expr(t, depth - 1, inner) + ")";
  }

  // Pattern of type `t`; binders are added to `s`.
  std::string pattern(Ty t, int depth, GScope& s, bool top) {
    double var_p = depth <= 0 ? 0.5 : 0.25;
    if (coin(var_p)) {
      std::string v = fresh("p");
      s.add(v, t);
      return v;
    }
    if (coin(0.15)) return "_";
    switch (t) {
      case Ty::Int: {
        if (coin(0.2)) return "(-1)";
        return lit();
      }
      case Ty::Bool:
        return coin(0.5) ? "True" : "False";
      case Ty::List: {
        switch (pick(4)) {
          case 0:
            return "[]";
          case 1: {
            std::string h = pattern(Ty::Int, depth - 1, s, false);
            return "[" + h + "]";
          }
          case 2: {
            std::string v = fresh("l");
            std::string h = pattern(Ty::Int, depth - 1, s, false);
            s.add(v, Ty::List);
            return v + "@(" + h + " : _)";
          }
          default: {
            std::string h = pattern(Ty::Int, depth - 1, s, false);
            std::string tl = pattern(Ty::List, depth - 1, s, false);
            return "(" + h + " : " + tl + ")";
          }
        }
      }
      case Ty::T: {
        const GCon& c = tcons_[pick(tcons_.size())];
        std::string out = c.name;
        for (Ty a : c.args) out += " " + pattern(a, depth - 1, s, false);
        if (!c.args.empty()) out = "(" + out + ")";
        if (top && coin(0.2)) {
          std::string v = fresh("t");
          s.add(v, Ty::T);
          out = v + "@" + (c.args.empty() ? out : out);
        }
        return out;
      }
      case Ty::R: {
        const GCon& c = rcons_[pick(rcons_.size())];
        switch (pick(3)) {
          case 0: {
            std::string out = "(" + c.name;
            for (Ty a : c.args) out += " " + pattern(a, depth - 1, s, false);
            return out + ")";
          }
          case 1: {
            std::string f = c.fields[pick(c.fields.size())];
            return c.name + " { " + f + " = " + pattern(field_ty_[f], depth - 1, s, false) + " }";
          }
          default:
            for (size_t k = 0; k < c.fields.size(); ++k) {
              s.add(c.fields[k], c.args[k]);
              s.shadowed.insert(c.fields[k]);
            }
            return c.name + " {..}";
        }
      }
      case Ty::Fn:
        break;
    }
    return "_";
  }

  std::string case_expr(Ty t, int depth, const GScope& s) {
    Ty st = any_data_ty();
    std::string out = "(case " + expr(st, depth - 1, s) + " of { ";
    size_t nalts = 1 + pick(3);
    for (size_t k = 0; k < nalts; ++k) {
      GScope inner = s;
      std::string p = pattern(st, 2, inner, true);
      out += (k ? "; " : "") + p;
      if (coin(0.35)) {
        out += " | " + expr(Ty::Bool, depth - 1, inner) + " -> " + expr(t, depth - 1, inner);
        if (coin(0.4)) out += " | otherwise -> " + expr(t, depth - 1, inner);
      } else {
        out += " -> " + expr(t, depth - 1, inner);
      }
    }
    if (coin(0.7)) out += "; _ -> " + expr(t, depth - 1, s);
    return out + " })";
  }

  std::string guard(GScope& s, int depth, bool last) {
    switch (pick(6)) {
      case 0: {
        Ty st = coin(0.5) ? Ty::List : (coin(0.5) ? Ty::T : Ty::R);
        std::string e = expr(st, depth, s);
        std::string p = pattern(st, 2, s, true);
        return p + " <- " + e;
      }
      case 1: {
        std::string z = fresh("z");
        std::string e = expr(Ty::Int, depth, s);
        s.add(z, Ty::Int);
        return last ? "let { " + z + " = " + e + " }" : "let " + z + " = " + e;
      }
      default:
        return expr(Ty::Bool, depth, s);
    }
  }

  std::string equation(const std::vector<Ty>& params, Ty result, bool catch_all) {
    GScope s;
    std::string head = "f";
    for (Ty t : params) {
      if (catch_all) {
        std::string v = fresh("p");
        s.add(v, t);
        head += " " + v;
      } else {
        head += " " + pattern(t, 2, s, true);
      }
    }
    std::vector<std::string> where;
    if (coin(0.4)) {
      size_t n = 1 + pick(2);
      for (size_t k = 0; k < n; ++k) {
        switch (pick(3)) {
          case 0: {
            std::string w = fresh("w");
            where.push_back(w + " = " + expr(Ty::Int, 2, s));
            s.add(w, Ty::Int);
            break;
          }
          case 1: {
            std::string a = fresh("a"), b = fresh("b");
            where.push_back("(" + a + ", " + b + ") = (" + expr(Ty::Int, 1, s) + ", " + expr(Ty::List, 1, s) + ")");
            s.add(a, Ty::Int);
            s.add(b, Ty::List);
            break;
          }
          default: {
            std::string g = fresh("g"), y = fresh("y");
            GScope body = s;
            body.add(y, Ty::Int);
            where.push_back(g + " " + y + " = " + expr(Ty::Int, 2, body));
            s.add(g, Ty::Fn);
            break;
          }
        }
      }
    }
    std::ostringstream os;
    if (coin(0.4)) {
      os << head << " = " << expr(result, 3, s) << "\n";
    } else {
      os << head << "\n";
      size_t n = 1 + pick(3);
      for (size_t k = 0; k < n; ++k) {
        GScope gs = s;
        size_t ng = 1 + pick(2);
        std::string gl;
        for (size_t g = 0; g < ng; ++g) gl += (g ? ", " : "") + guard(gs, 2, g + 1 == ng);
        os << "  | " << gl << " = " << expr(result, 3, gs) << "\n";
      }
      if (coin(0.4)) os << "  | otherwise = " << expr(result, 3, s) << "\n";
    }
    if (!where.empty()) {
      os << "  where\n";
      for (const auto& w : where) os << "    " << w << "\n";
    }
    return os.str();
  }

  std::mt19937_64 rng_;
  int fresh_ = 0;
  bool has_walk_ = false;
  std::vector<GCon> tcons_, rcons_;
  std::map<std::string, Ty> field_ty_;
};

}  // namespace

std::string Outcome::shown() const {
  switch (kind) {
    case Value: return text;
    case Bottom: return "bottom";
    case Stuck: return "stuck: " + text;
  }
  return text;
}

std::vector<Outcome> eval_surface(const SurfaceModule& resolved, const std::vector<std::string>& entries,
                                  std::uint64_t budget) {
  std::vector<Outcome> out;
  for (const auto& e : entries) {
    SurfaceEval ev(resolved, budget);
    out.push_back(ev.entry(e));
  }
  return out;
}

std::vector<Outcome> eval_core(const std::vector<VernSentence>& sentences, const std::vector<std::string>& entries,
                               std::uint64_t budget) {
  std::vector<Outcome> out;
  for (const auto& e : entries) {
    CoreEval ev(sentences, budget);
    out.push_back(ev.entry(e));
  }
  return out;
}

Program generate(std::uint64_t seed) { return Generator(seed).run(); }

bool CheckResult::ok() const {
  if (!problems.empty() || cases.empty()) return false;
  for (const auto& c : cases)
    if (!c.agree) return false;
  return true;
}

CheckResult check_program(const Program& p) {
  CheckResult r;
  SurfaceModule m;
  try {
    m = parse_module_source(p.source);
  } catch (const Error& e) {
    r.problems.push_back(std::string("parse: ") + e.what());
    return r;
  }
  for (const auto& d : m.decls)
    if (const auto* u = std::get_if<UnsupportedDecl>(&d.v)) r.problems.push_back("unsupported " + u->name + ": " + u->reason);
  IfaceTable table;
  EditSet edits;
  ModuleResult mr;
  try {
    mr = translate_module(m, "Gen.hs", table, edits);
  } catch (const Error& e) {
    r.problems.push_back(std::string("translate: ") + e.what());
    return r;
  }
  r.output = mr.text;
  for (const auto& a : mr.report.axioms)
    if (a.category != "patternFailure") r.problems.push_back("axiom " + a.name + ": " + a.reason);
  for (const auto& d : mr.report.diagnostics) r.problems.push_back(d.severity + ": " + d.message);
  SurfaceModule resolved = m;
  for (const auto& d : resolve_module(resolved, table)) r.problems.push_back("resolve: " + d.message);
  auto surface = eval_surface(resolved, p.entries);
  auto core = eval_core(mr.file.sentences, p.entries);
  for (size_t k = 0; k < p.entries.size(); ++k) {
    CaseResult c{p.entries[k], surface[k], core[k], false};
    c.agree = c.surface.kind != Outcome::Stuck && c.core.kind != Outcome::Stuck && c.surface.shown() == c.core.shown();
    r.cases.push_back(std::move(c));
  }
  return r;
}

}  // namespace totalizer::oracle
