// SPDX-License-Identifier: Apache-2.0
#include "totalizer/translate.hpp"

#include <algorithm>

#include "totalizer/classes.hpp"
#include "totalizer/desugar.hpp"
#include "totalizer/lint.hpp"
#include "totalizer/names.hpp"
#include "totalizer/parser.hpp"

namespace totalizer {

namespace {

void surface_vars(const Type& t, std::vector<std::string>& out) {
  if (t.kind == Type::Var && std::find(out.begin(), out.end(), t.var) == out.end()) out.push_back(t.var);
  for (const auto& a : t.args) surface_vars(a, out);
}

CoreType sort_type() {
  CoreType t;
  t.kind = CoreType::Sort;
  return t;
}

// Splits `a -> b -> c` into at most `n` argument types and the result.
std::pair<std::vector<Type>, Type> split_arrows(Type t, size_t n) {
  std::vector<Type> args;
  while (args.size() < n && t.kind == Type::Fun) {
    args.push_back(t.args[0]);
    Type rest = t.args[1];
    t = std::move(rest);
  }
  return {std::move(args), std::move(t)};
}

std::string decl_base(const Decl& d) {
  if (const auto* x = std::get_if<DataDecl>(&d.v)) return x->name.base;
  if (const auto* x = std::get_if<TypeSynonym>(&d.v)) return x->name.base;
  if (const auto* x = std::get_if<ClassDecl>(&d.v)) return x->name.base;
  if (const auto* x = std::get_if<FunBind>(&d.v)) return x->bind.name.base;
  if (const auto* x = std::get_if<UnsupportedDecl>(&d.v)) return x->name;
  return "";
}

class ModuleTranslator {
 public:
  ModuleTranslator(SurfaceModule& m, const std::string& source, const IfaceTable& ifaces, const EditSet& edits)
      : m_(m), source_(source), imports_(ifaces), table_(ifaces), edits_(edits),
        env_(m.name, &edits, [this](const QualName& q) { return table_.rendered(q); }), ds_(env_, table_) {}

  // Interface of the module without translating it, for modules skipped by an edit.
  ModuleIface interface_only() {
    resolve_module(m_, imports_);
    ModuleReport ignored;
    constructor_renames(ignored);
    return summarize_module(m_, env_, &edits_);
  }

  ModuleResult run() {
    ModuleResult r;
    r.report.module = m_.name;
    r.report.source = source_;
    for (auto d : resolve_module(m_, imports_)) {
      d.file = source_;
      r.report.diagnostics.push_back(std::move(d));
    }
    constructor_renames(r.report);
    table_.add(summarize_module(m_, env_, &edits_));
    for (const auto& d : m_.decls)
      if (const auto* dd = std::get_if<DataDecl>(&d.v)) ds_.add_data(*dd);
    for (const auto& d : m_.decls)
      if (const auto* ts = std::get_if<TypeSig>(&d.v))
        for (const auto& n : ts->names) sigs_[n.base] = ts->type;
    for (const auto* e : edits_.redefines(m_.name)) redefined_.insert(e->target);

    for (const auto& d : m_.decls) {
      std::string base = decl_base(d);
      if (!base.empty() && (redefined_.count(base) || redefined_.count(mangle(base)))) continue;
      declaration(d);
      if (const auto* dd = std::get_if<DataDecl>(&d.v)) {
        for (const auto& acc : ds_.record_accessors(*dd)) {
          if (const auto* ts = std::get_if<TypeSig>(&acc.v))
            for (const auto& n : ts->names) sigs_[n.base] = ts->type;
          if (std::get_if<FunBind>(&acc.v)) declaration(acc);
        }
        deriving(*dd);
      }
    }
    for (const auto* e : edits_.redefines(m_.name)) redefine(*e);

    drop_skipped_references();
    std::vector<VernSentence> sorted = order(r.report);
    auto support = support_axioms(sorted);
    sorted.insert(sorted.begin(), support.begin(), support.end());

    r.file.module = m_.name;
    r.file.source = source_;
    r.file.imports = required_modules(sorted, m_.name);
    r.file.sentences = std::move(sorted);
    r.text = print_file(r.file);

    ModuleIface iface = summarize_module(m_, env_, &edits_);
    prune_iface(iface, r.file.sentences);
    r.iface = std::move(iface);
    fill_report(r);
    return r;
  }

 private:
  void constructor_renames(ModuleReport& report) {
    std::set<std::string> taken;
    for (const auto& d : m_.decls) {
      std::string b = decl_base(d);
      if (!b.empty()) taken.insert(b);
      if (const auto* dd = std::get_if<DataDecl>(&d.v))
        for (const auto& c : dd->cons) taken.insert(c.name.base);
    }
    for (const auto& d : m_.decls) {
      const auto* dd = std::get_if<DataDecl>(&d.v);
      if (!dd) continue;
      try {
        DataDecl renamed = rename_constructor_clash(*dd, taken);
        for (size_t i = 0; i < dd->cons.size(); ++i)
          if (renamed.cons[i].name.base != dd->cons[i].name.base)
            env_.add_local_rename(dd->cons[i].name, mangle(renamed.cons[i].name.base));
      } catch (const ClashError& e) {
        clashes_[dd->name.base] = e.message();
        report.diagnostics.push_back(Diagnostic{"error", source_, d.loc, e.message()});
      }
    }
  }

  void emit(VernSentence s, size_t index) {
    positions_.push_back(index);
    out_.push_back(std::move(s));
  }

  void skipped(const std::string& name) { skipped_.push_back(name); }

  std::vector<CoreBinder> sig_binders(const QualType& qt) {
    std::vector<std::string> vs;
    surface_vars(qt.type, vs);
    for (const auto& c : qt.context) surface_vars(c.type, vs);
    std::vector<CoreBinder> out;
    for (const auto& v : vs) out.push_back(implicit_binder(v));
    for (const auto& c : qt.context)
      out.push_back(generalized_binder(tapp(tcon(env_.render(c.cls)), ds_.lower_type(c.type))));
    return out;
  }

  ClassContext context() { return ClassContext{env_, ds_, table_, edits_}; }

  void declaration(const Decl& d) {
    size_t index = counter_++;
    env_.reset_fresh();
    if (const auto* dd = std::get_if<DataDecl>(&d.v)) {
      data(*dd, index);
    } else if (const auto* ts = std::get_if<TypeSynonym>(&d.v)) {
      QualName q{m_.name, ts->name.base, Namespace::Type};
      if (edits_.skip_value(q)) return skipped(ts->name.base);
      VernSentence s;
      s.name = env_.render_base(q);
      s.origin = ts->name.base;
      for (const auto& p : ts->params) s.binders.push_back(CoreBinder{p, false, false, {sort_type()}});
      try {
        s.type_body.push_back(ds_.lower_type(ts->rhs));
        emit(std::move(s), index);
      } catch (const Error& e) {
        emit(axiomatize(s, e.message()), index);
      }
    } else if (const auto* cd = std::get_if<ClassDecl>(&d.v)) {
      QualName q{m_.name, cd->name.base, Namespace::Class};
      if (edits_.skip_class(q)) return skipped(cd->name.base);
      const ClassInfo* info = table_.find_class(q);
      auto cx = context();
      try {
        for (auto& s : translate_class(*cd, *info, cx)) emit(std::move(s), index);
      } catch (const Error& e) {
        CoreType k = tfun(sort_type(), sort_type());
        emit(failure_axiom(env_.render_base(q), {k}, e.message(), cd->name.base), index);
      }
    } else if (const auto* id = std::get_if<InstanceDecl>(&d.v)) {
      instance(*id, index);
    } else if (const auto* fb = std::get_if<FunBind>(&d.v)) {
      function(fb->bind, index);
    } else if (const auto* ud = std::get_if<UnsupportedDecl>(&d.v)) {
      if (ud->name.empty()) {
        diagnostics_.push_back(Diagnostic{"warning", source_, d.loc, "ignored declaration: " + ud->reason});
        return;
      }
      QualName q{m_.name, ud->name, ud->ns};
      if (ud->ns == Namespace::Value && edits_.skip_value(q)) return skipped(ud->name);
      if (ud->ns == Namespace::Class && edits_.skip_class(q)) return skipped(ud->name);
      std::vector<CoreType> type;
      std::vector<CoreBinder> binders;
      if (auto it = sigs_.find(ud->name); it != sigs_.end() && ud->ns == Namespace::Value) {
        try {
          binders = sig_binders(it->second);
          for (auto& b : binders) b.implicit = true;
          type.push_back(tforall(binders, ds_.lower_type(it->second.type)));
        } catch (const Error&) {
          type.clear();
        }
      }
      emit(failure_axiom(env_.render_base(q), type, ud->reason, ud->name), index);
    }
  }

  void data(const DataDecl& d, size_t index) {
    QualName q{m_.name, d.name.base, Namespace::Type};
    if (edits_.skip_value(q)) return skipped(d.name.base);
    VernSentence s;
    s.kind = VernSentence::Inductive;
    s.name = env_.render_base(q);
    s.origin = d.name.base;
    for (const auto& p : d.params) s.binders.push_back(CoreBinder{p, false, false, {}});
    if (auto it = clashes_.find(d.name.base); it != clashes_.end()) return emit(axiomatize(s, it->second), index);
    try {
      CoreType head = tcon(s.name);
      for (const auto& p : d.params) head = tapp(head, tvar(p));
      for (const auto& c : d.cons) {
        CoreType t = head;
        for (size_t i = c.args.size(); i-- > 0;) t = tfun(ds_.lower_type(c.args[i]), t);
        s.constructors.push_back(VernField{env_.render_base(c.name), t});
      }
      emit(std::move(s), index);
    } catch (const Error& e) {
      emit(axiomatize(s, e.message()), index);
    }
  }

  void deriving(const DataDecl& d) {
    for (const auto& cls : d.deriving) {
      size_t index = counter_++;
      env_.reset_fresh();
      std::string iname = instance_name(cls, data_head(d));
      if (edits_.skip_class(cls) || edits_.skip_instance(m_.name, iname)) {
        skipped(iname);
        continue;
      }
      auto inst = derive_instance(d, cls);
      if (!inst) {
        emit(failure_axiom(iname, {}, "deriving " + cls.str() + " is not supported", d.name.base), index);
        continue;
      }
      instance(*inst, index);
    }
  }

  void instance(const InstanceDecl& inst, size_t index) {
    std::string iname = instance_name(inst.cls, inst.head);
    if (edits_.skip_class(inst.cls) || edits_.skip_instance(m_.name, iname)) return skipped(iname);
    auto cx = context();
    try {
      for (auto& s : translate_instance(inst, cx)) emit(std::move(s), index);
    } catch (const Error& e) {
      emit(failure_axiom(iname, {}, e.message(), inst.cls.base), index);
    }
  }

  void function(const Binding& b, size_t index) {
    QualName q{m_.name, b.name.base, Namespace::Value};
    if (edits_.skip_value(q)) return skipped(b.name.base);
    RecursionMode mode = edits_.recursion_mode(q);
    VernSentence s;
    s.name = env_.render_base(q);
    s.origin = b.name.base;
    auto sig = sigs_.find(b.name.base);
    try {
      if (sig != sigs_.end()) {
        s.binders = sig_binders(sig->second);
        s.type.push_back(ds_.lower_type(sig->second.type));
      }
      if (mode.kind == RecursionMode::ProgramFixpoint) {
        if (sig == sigs_.end()) throw Unsupported("termination edit on " + b.name.base + " needs a type signature");
        LoweredFun f = ds_.lower_equations(b.eqs);
        clear_unused_pattern_vars(f.body);
        auto [args, result] = split_arrows(sig->second.type, f.params.size());
        if (args.size() != f.params.size())
          throw Unsupported("type signature of " + b.name.base + " has fewer arguments than its equations");
        s.kind = VernSentence::ProgramFixpoint;
        for (size_t i = 0; i < args.size(); ++i)
          s.binders.push_back(CoreBinder{f.params[i], false, false, {ds_.lower_type(args[i])}});
        s.type = {ds_.lower_type(result)};
        s.measure = mode.measure;
        s.body.push_back(std::move(f.body));
      } else {
        s.body.push_back(ds_.lower_binding(b, s.name, mode));
      }
      emit(std::move(s), index);
    } catch (const Error& e) {
      if (s.kind == VernSentence::ProgramFixpoint) {
        s.kind = VernSentence::Definition;
        s.binders = sig_binders(sig->second);
        s.type = {ds_.lower_type(sig->second.type)};
      }
      emit(axiomatize(s, e.message()), index);
    }
  }

  void redefine(const Edit& e) {
    VernSentence s;
    s.kind = VernSentence::Raw;
    s.name = e.target;
    s.origin = e.target;
    s.raw = e.text;
    s.raw_defines = {e.target};
    for (const auto& t : coq_tokens(e.text))
      if (t.kind == CoqToken::Ident && t.text != e.target) s.raw_refs.insert(t.text);
    emit(std::move(s), counter_++);
  }

  // A missing name, or empty when `s` uses only names that exist.
  std::string missing_reference(const VernSentence& s) const {
    for (const auto& r : s.references()) {
      if (skipped_rendered_.count(r)) return r;
      std::string q = qualifier_of(r);
      if (q.empty() || q == m_.name) continue;
      if (edits_.skip_module(q)) return r;
      const auto& all = table_.all();
      if (auto it = all.find(q); it != all.end() && imports_.all().count(q)) {
        auto names = exported_names(it->second);
        if (!names.count(r.substr(q.size() + 1))) return r;
      }
    }
    return "";
  }

  void drop_skipped_references() {
    for (const auto& n : skipped_) skipped_rendered_.insert(env_.render_base(QualName{m_.name, n, Namespace::Value}));
    for (const auto& n : skipped_) skipped_rendered_.insert(n);
    for (auto& s : out_) {
      if (s.injected) continue;
      std::string miss = missing_reference(s);
      if (miss.empty()) continue;
      std::string reason = "uses " + miss + ", which is skipped or not translated";
      VernSentence a = axiomatize(s, reason);
      if (!missing_reference(a).empty()) a = failure_axiom(s.name, {}, reason, s.origin);
      s = std::move(a);
    }
  }

  std::vector<std::pair<std::string, std::string>> order_pairs() {
    std::vector<std::pair<std::string, std::string>> out;
    auto rendered = [&](const std::string& n) {
      QualName q = split_qualified(n, Namespace::Value);
      if (q.base.rfind("instance_", 0) == 0) return q.base;
      return env_.render_base(QualName{m_.name, q.base, Namespace::Value});
    };
    for (const auto& o : edits_.orders())
      for (size_t i = 0; i + 1 < o.size(); ++i) out.push_back({rendered(o[i]), rendered(o[i + 1])});
    return out;
  }

  std::vector<VernSentence> order(ModuleReport& report) {
    auto before = order_pairs();
    std::vector<VernSentence> v = out_;
    std::vector<std::vector<size_t>> cycles;
    for (size_t round = 0; round <= v.size(); ++round) {
      try {
        std::vector<size_t> idx = topo_order(v, before, &cycles);
        std::vector<VernSentence> sorted;
        std::vector<size_t> pos;
        for (size_t i : idx) {
          sorted.push_back(v[i]);
          pos.push_back(positions_[i]);
        }
        size_t lowest = SIZE_MAX;
        std::vector<bool> moved(sorted.size(), false);
        for (size_t k = sorted.size(); k-- > 0;) {
          if (pos[k] > lowest) moved[k] = true;
          lowest = std::min(lowest, pos[k]);
        }
        for (size_t k = 0; k < sorted.size(); ++k)
          if (moved[k] && sorted[k].kind != VernSentence::Raw) report.reordered.push_back(sorted[k].name);
        return sorted;
      } catch (const CycleError&) {
        for (const auto& c : cycles) {
          std::vector<std::string> names;
          for (size_t i : c) names.push_back(v[i].name);
          for (size_t i : c) {
            std::string others;
            for (const auto& n : names)
              if (n != v[i].name) others += (others.empty() ? "" : ", ") + n;
            v[i] = axiomatize(v[i], "mutually recursive with " + others + "; mutual recursion is not supported");
          }
        }
      }
    }
    throw CycleError("dependency cycle could not be broken");
  }

  void prune_iface(ModuleIface& iface, const std::vector<VernSentence>& sentences) {
    std::set<std::string> defined;
    for (const auto& s : sentences)
      for (const auto& d : s.defines()) defined.insert(d);
    for (auto it = iface.values.begin(); it != iface.values.end();)
      it = defined.count(it->second) ? std::next(it) : iface.values.erase(it);
    for (auto it = iface.constructors.begin(); it != iface.constructors.end();)
      it = defined.count(it->second.rendered) ? std::next(it) : iface.constructors.erase(it);
    for (auto it = iface.types.begin(); it != iface.types.end();)
      it = defined.count(it->second.rendered) ? std::next(it) : iface.types.erase(it);
    for (auto it = iface.classes.begin(); it != iface.classes.end();)
      it = defined.count(it->second.rendered) ? std::next(it) : iface.classes.erase(it);
    std::vector<InstanceInfo> kept;
    for (auto& i : iface.instances)
      if (defined.count(i.name)) kept.push_back(std::move(i));
    iface.instances = std::move(kept);
  }

  void fill_report(ModuleResult& r) {
    ModuleReport& rep = r.report;
    for (auto& d : diagnostics_) rep.diagnostics.push_back(d);
    rep.skipped_names = skipped_;
    for (const auto& s : r.file.sentences) {
      ++rep.sentences;
      bool axiom = s.kind == VernSentence::Axiom || s.kind == VernSentence::LocalAxiom ||
                   (s.kind == VernSentence::Raw && s.raw.rfind("Local Axiom", 0) == 0);
      if (axiom) {
        if (s.injected) {
          AxiomEntry a{s.name, s.name == "patternFailure" ? "patternFailure" : "unsafeFix", "", {}};
          std::string target = a.category;
          for (const auto& u : r.file.sentences)
            if (!u.injected && u.references().count(target)) a.used_by.push_back(u.name);
          rep.axioms.push_back(std::move(a));
        } else {
          rep.axioms.push_back({s.name, "unsupported", s.comment, {}});
        }
      } else if (s.kind != VernSentence::Raw || !s.raw_defines.empty()) {
        rep.definitions.push_back(s.name);
      }
    }
  }

  SurfaceModule& m_;
  std::string source_;
  const IfaceTable& imports_;
  IfaceTable table_;
  const EditSet& edits_;
  NameEnv env_;
  Desugarer ds_;
  std::map<std::string, QualType> sigs_;
  std::map<std::string, std::string> clashes_;
  std::set<std::string> redefined_;
  std::vector<VernSentence> out_;
  std::vector<size_t> positions_;
  std::vector<std::string> skipped_;
  std::set<std::string> skipped_rendered_;
  std::vector<Diagnostic> diagnostics_;
  size_t counter_ = 0;
};

}  // namespace

std::set<std::string> exported_names(const ModuleIface& iface) {
  std::set<std::string> out;
  for (const auto& [q, r] : iface.values) out.insert(r);
  for (const auto& [q, c] : iface.constructors) out.insert(c.rendered);
  for (const auto& [q, t] : iface.types) out.insert(t.rendered);
  for (const auto& [q, c] : iface.classes) {
    out.insert(c.rendered);
    for (const auto& m : c.methods) out.insert(m.rendered);
  }
  for (const auto& i : iface.instances) out.insert(i.name);
  return out;
}

ModuleResult translate_module(SurfaceModule m, const std::string& source, const IfaceTable& ifaces,
                              const EditSet& edits) {
  ModuleTranslator t(m, source, ifaces, edits);
  return t.run();
}

ModuleIface module_interface(SurfaceModule m, const IfaceTable& ifaces, const EditSet& edits) {
  ModuleTranslator t(m, "", ifaces, edits);
  return t.interface_only();
}

ModuleResult translate_source(std::string_view source, const std::string& source_name, const IfaceTable& ifaces,
                              const EditSet& edits) {
  return translate_module(parse_module_source(source), source_name, ifaces, edits);
}

}  // namespace totalizer
