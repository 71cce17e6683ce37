// SPDX-License-Identifier: Apache-2.0
#include "totalizer/vernac.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>

#include "totalizer/error.hpp"

namespace totalizer {

std::string qualifier_of(const std::string& name) {
  auto dot = name.rfind('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == name.size()) return "";
  return name.substr(0, dot);
}

std::set<std::string> VernSentence::defines() const {
  std::set<std::string> out;
  if (kind == Raw) return raw_defines;
  if (!name.empty()) out.insert(name);
  for (const auto& c : constructors) out.insert(c.name);
  if (kind == Class || kind == Record)
    for (const auto& f : fields) out.insert(f.name);
  return out;
}

std::set<std::string> VernSentence::references() const {
  std::set<std::string> out = raw_refs;
  std::set<std::string> inner;
  for (const auto& b : binders)
    for (const auto& t : b.type) free_names(t, out);
  for (const auto& t : type) free_names(t, inner);
  for (const auto& t : body) free_names(t, inner);
  for (const auto& t : type_body) free_names(t, inner);
  for (const auto& c : constructors) free_names(c.type, out);
  for (const auto& f : fields) free_names(f.type, inner);
  for (const auto& [k, v] : values) {
    free_names(v, inner);
    if (!qualifier_of(k).empty()) out.insert(k);
  }
  std::set<std::string> bound;
  for (const auto& b : binders)
    if (!b.generalized) bound.insert(b.name);
  for (const auto& n : inner)
    if (!bound.count(n)) out.insert(n);
  return out;
}

// ---------------------------------------------------------------- printing

namespace {

std::string clean_comment(std::string s) {
  for (size_t p; (p = s.find("*)")) != std::string::npos;) s.replace(p, 2, "* )");
  for (size_t p; (p = s.find("(*")) != std::string::npos;) s.replace(p, 2, "( *");
  return s;
}

std::string type_suffix(const VernSentence& s) { return s.type.empty() ? "" : " : " + print_core_type(s.type[0]); }

std::string field_block(const std::vector<std::pair<std::string, std::string>>& items, const std::string& sep) {
  if (items.empty()) return "{}";
  std::string out = "{\n";
  for (size_t i = 0; i < items.size(); ++i)
    out += "  " + items[i].first + sep + items[i].second + (i + 1 < items.size() ? " ;\n" : " }");
  return out;
}

}  // namespace

std::string print_sentence(const VernSentence& s) {
  std::string out;
  std::string bs = print_binders(s.binders);
  switch (s.kind) {
    case VernSentence::Definition:
    case VernSentence::LocalDefinition:
      if (!s.type_body.empty()) {
        out = "Definition " + s.name + bs + " : Type :=\n  " + print_core_type(s.type_body[0]) + ".";
        break;
      }
      out = std::string(s.kind == VernSentence::LocalDefinition ? "Local " : "") + "Definition " + s.name + bs +
            type_suffix(s) + " :=\n  " + print_term(s.body.at(0), 2) + ".";
      break;
    case VernSentence::ProgramFixpoint:
      out = "Program Fixpoint " + s.name + bs + " " + s.measure + type_suffix(s) + " :=\n  " +
            print_term(s.body.at(0), 2) + ".";
      break;
    case VernSentence::Inductive: {
      out = "Inductive " + s.name + bs + " : Type :=";
      if (s.constructors.size() == 1) {
        out += " " + s.constructors[0].name + " : " + print_core_type(s.constructors[0].type);
      } else {
        for (const auto& c : s.constructors) out += "\n  | " + c.name + " : " + print_core_type(c.type);
      }
      out += ".";
      break;
    }
    case VernSentence::Class:
    case VernSentence::Record: {
      std::vector<std::pair<std::string, std::string>> items;
      for (const auto& f : s.fields) items.push_back({f.name, print_core_type(f.type)});
      out = std::string(s.kind == VernSentence::Class ? "Class " : "Record ") + s.name + bs + " := " +
            field_block(items, " : ") + ".";
      break;
    }
    case VernSentence::Instance: {
      std::vector<std::pair<std::string, std::string>> items;
      for (const auto& [k, v] : s.values) items.push_back({k, print_term(v, 4)});
      out = "Instance " + s.name + bs + type_suffix(s) + " := " + field_block(items, " := ") + ".";
      break;
    }
    case VernSentence::Axiom:
    case VernSentence::LocalAxiom:
      out = std::string(s.kind == VernSentence::LocalAxiom ? "Local " : "") + "Axiom " + s.name + bs +
            type_suffix(s) + ".";
      break;
    case VernSentence::Raw:
      out = s.raw;
      break;
  }
  if (!s.comment.empty()) out += " (* " + clean_comment(s.comment) + " *)";
  return out;
}

// ----------------------------------------------------------------- sorting

std::vector<size_t> topo_order(const std::vector<VernSentence>& v,
                               const std::vector<std::pair<std::string, std::string>>& before,
                               std::vector<std::vector<size_t>>* cycles) {
  size_t n = v.size();
  std::map<std::string, size_t> owner;
  for (size_t i = 0; i < n; ++i)
    for (const auto& d : v[i].defines()) owner.emplace(d, i);
  std::vector<std::set<size_t>> succ(n);
  std::vector<size_t> indeg(n, 0);
  auto edge = [&](size_t from, size_t to) {
    if (from != to && succ[from].insert(to).second) ++indeg[to];
  };
  for (size_t i = 0; i < n; ++i)
    for (const auto& r : v[i].references())
      if (auto it = owner.find(r); it != owner.end()) edge(it->second, i);
  for (const auto& [a, b] : before) {
    auto ia = owner.find(a), ib = owner.find(b);
    if (ia != owner.end() && ib != owner.end()) edge(ia->second, ib->second);
  }
  std::priority_queue<size_t, std::vector<size_t>, std::greater<>> ready;
  for (size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) ready.push(i);
  std::vector<size_t> order;
  while (!ready.empty()) {
    size_t i = ready.top();
    ready.pop();
    order.push_back(i);
    for (size_t j : succ[i])
      if (--indeg[j] == 0) ready.push(j);
  }
  if (order.size() < n) {
    // Strongly connected components among the leftovers.
    std::vector<bool> left(n, true);
    for (size_t i : order) left[i] = false;
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on(n, false);
    std::vector<size_t> stack;
    std::vector<std::vector<size_t>> sccs;
    int counter = 0;
    std::function<void(size_t)> strong = [&](size_t u) {
      index[u] = low[u] = counter++;
      stack.push_back(u);
      on[u] = true;
      for (size_t w : succ[u]) {
        if (!left[w]) continue;
        if (index[w] < 0) {
          strong(w);
          low[u] = std::min(low[u], low[w]);
        } else if (on[w]) {
          low[u] = std::min(low[u], index[w]);
        }
      }
      if (low[u] == index[u]) {
        std::vector<size_t> comp;
        size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on[w] = false;
          comp.push_back(w);
        } while (w != u);
        if (comp.size() > 1) {
          std::sort(comp.begin(), comp.end());
          sccs.push_back(std::move(comp));
        }
      }
    };
    for (size_t i = 0; i < n; ++i)
      if (left[i] && index[i] < 0) strong(i);
    std::sort(sccs.begin(), sccs.end());
    if (cycles) *cycles = sccs;
    std::string names;
    for (const auto& c : sccs)
      for (size_t i : c) names += (names.empty() ? "" : ", ") + v[i].name;
    throw CycleError("dependency cycle among " + names);
  }
  return order;
}

std::vector<VernSentence> topo_sort(std::vector<VernSentence> v,
                                    const std::vector<std::pair<std::string, std::string>>& before,
                                    std::vector<std::vector<size_t>>* cycles) {
  std::vector<VernSentence> out;
  out.reserve(v.size());
  for (size_t i : topo_order(v, before, cycles)) out.push_back(std::move(v[i]));
  return out;
}

// ------------------------------------------------------------------ axioms

VernSentence failure_axiom(const std::string& name, const std::vector<CoreType>& type, const std::string& reason,
                           const std::string& origin) {
  VernSentence a;
  a.kind = VernSentence::Axiom;
  a.name = name;
  a.origin = origin;
  if (!type.empty()) {
    a.type = type;
    a.comment = "translation failed: " + reason;
  } else {
    CoreBinder b{"a", true, false, {}};
    CoreType sort;
    sort.kind = CoreType::Sort;
    b.type.push_back(sort);
    a.type.push_back(tforall({b}, tvar("a")));
    a.comment = "translation failed: " + reason + "; no type signature, so the type is left fully general";
  }
  return a;
}

VernSentence axiomatize(const VernSentence& s, const std::string& reason) {
  if (!s.fallback.empty()) return failure_axiom(s.name, s.fallback, reason, s.origin);
  if (s.kind == VernSentence::Inductive) {
    CoreType t;
    t.kind = CoreType::Sort;
    CoreType k = t;
    for (size_t i = 0; i < s.binders.size(); ++i) k = tfun(t, k);
    return failure_axiom(s.name, {k}, reason, s.origin);
  }
  if (!s.type.empty()) {
    std::vector<CoreBinder> bs;
    for (const auto& b : s.binders) {
      CoreBinder c = b;
      c.implicit = true;
      bs.push_back(c);
    }
    return failure_axiom(s.name, {tforall(bs, s.type[0])}, reason, s.origin);
  }
  return failure_axiom(s.name, {}, reason, s.origin);
}

std::vector<VernSentence> support_axioms(const std::vector<VernSentence>& v) {
  bool failure = false, fix = false;
  for (const auto& s : v) {
    auto refs = s.references();
    failure = failure || refs.count("patternFailure");
    fix = fix || refs.count("unsafeFix");
  }
  std::vector<VernSentence> out;
  auto raw = [&](const std::string& name, const std::string& text) {
    VernSentence s;
    s.kind = VernSentence::Raw;
    s.name = name;
    s.raw = text;
    s.raw_defines = {name};
    s.injected = true;
    out.push_back(std::move(s));
  };
  if (failure) raw("patternFailure", "Local Axiom patternFailure : forall {a}, a.");
  if (fix) {
    raw("unsafeFix", "Local Axiom unsafeFix : forall {a}, (a -> a) -> a.");
    raw("unroll_unsafeFix", "Local Axiom unroll_unsafeFix : forall a (f : a -> a), unsafeFix f = f (unsafeFix f).");
  }
  return out;
}

std::vector<std::string> required_modules(const std::vector<VernSentence>& v, const std::string& self) {
  std::set<std::string> mods;
  for (const auto& s : v)
    for (const auto& r : s.references()) {
      std::string q = qualifier_of(r);
      if (!q.empty() && q != self) mods.insert(q);
    }
  return {mods.begin(), mods.end()};
}

// -------------------------------------------------------------------- file

std::string print_file(const VernFile& f) {
  std::string out = "(* Translated from Haskell module " + f.module;
  if (!f.source.empty()) out += " (" + f.source + ")";
  out += ". *)\n\n";
  out += "Require Import HsToCoqSupport.\n";
  for (const auto& r : f.imports) out += "Require " + r + ".\n";
  out += "\nGeneralizable All Variables.\nUnset Implicit Arguments.\nSet Maximal Implicit Insertion.\n"
         "Unset Strict Implicit.\n";
  for (const auto& s : f.sentences) out += "\n" + print_sentence(s) + "\n";
  return out;
}

const std::string& support_file_text() {
  static const std::string text =
      "(* Shared support for translated modules. *)\n\n"
      "Require Export Coq.Lists.List.\n"
      "Require Export Coq.ZArith.ZArith.\n"
      "Require Export Coq.Program.Wf.\n\n"
      "Global Generalizable All Variables.\n";
  return text;
}

const std::set<std::string>& support_names() {
  static const std::set<std::string> names;
  return names;
}

}  // namespace totalizer
