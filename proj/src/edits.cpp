// SPDX-License-Identifier: Apache-2.0
#include "totalizer/edits.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "totalizer/names.hpp"

namespace totalizer {

QualName parse_edit_name(const std::string& text, Namespace ns) { return split_qualified(text, ns); }

namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string strip_comment(const std::string& line) {
  size_t h = line.find('#');
  return h == std::string::npos ? line : line.substr(0, h);
}

std::string trim(std::string s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// A sentence ends at a `.` followed by whitespace or end of input.
bool sentence_complete(const std::string& s) {
  std::string t = trim(s);
  return !t.empty() && t.back() == '.';
}

std::string defined_name(const std::string& sentence, int line) {
  auto toks = split_ws(sentence);
  size_t i = 0;
  while (i < toks.size() && (toks[i] == "Local" || toks[i] == "Program" || toks[i] == "Global" ||
                             toks[i] == "#[local]" || toks[i] == "Polymorphic"))
    ++i;
  static const std::set<std::string> keywords = {"Definition", "Fixpoint", "Inductive", "Instance", "Class",
                                                 "Record",     "Axiom",    "Lemma",     "Theorem",  "Parameter",
                                                 "CoInductive", "Structure", "Function", "Let", "Variant"};
  if (i >= toks.size() || !keywords.count(toks[i]))
    throw EditParseError(line, "redefine must start with a sentence keyword such as Definition");
  if (i + 1 >= toks.size()) throw EditParseError(line, "redefine sentence lacks a defined name");
  std::string name = toks[i + 1];
  size_t cut = name.find_first_of(" :({.");
  if (cut != std::string::npos) name = name.substr(0, cut);
  if (name.empty()) throw EditParseError(line, "redefine sentence lacks a defined name");
  return name;
}

std::string kind_keyword(const Edit& e) {
  switch (e.kind) {
    case Edit::SkipModule:
      return "skip module " + e.module;
    case Edit::SkipValue:
      return "skip " + e.name.str();
    case Edit::SkipClass:
      return "skip class " + e.name.str();
    case Edit::SkipInstance:
      return "skip instance " + e.name.str();
    case Edit::SkipMethod:
      return "skip method " + e.name.str() + " " + e.method;
    case Edit::RenameType:
      return "rename type " + e.name.str() + " = " + e.target;
    case Edit::RenameValue:
      return "rename value " + e.name.str() + " = " + e.target;
    case Edit::Redefine:
      return "redefine " + e.text;
    case Edit::Order: {
      std::string s = "order";
      for (const auto& o : e.order) s += " " + o;
      return s;
    }
    case Edit::Nonterminating:
      return "nonterminating " + e.name.str();
    case Edit::Termination:
      return "termination " + e.name.str() + " " + e.text;
    case Edit::CpsClass:
      return "cps class " + e.name.str();
  }
  return "";
}

}  // namespace

bool EditSet::matches(const QualName& pattern, const QualName& q) const {
  if (pattern.base != q.base) return false;
  return pattern.module.empty() || pattern.module == q.module;
}

const Edit* EditSet::find(Edit::Kind kind, const QualName& q) const {
  // Later edits shadow earlier ones; a qualified edit beats a bare one.
  const Edit* bare = nullptr;
  for (auto it = edits_.rbegin(); it != edits_.rend(); ++it) {
    if (it->kind != kind || !matches(it->name, q)) continue;
    if (!it->name.module.empty()) return &*it;
    if (!bare) bare = &*it;
  }
  return bare;
}

void EditSet::add(Edit e) {
  auto recursion = [](Edit::Kind k) { return k == Edit::Nonterminating || k == Edit::Termination; };
  for (const auto& old : edits_) {
    if ((e.kind == Edit::RenameType || e.kind == Edit::RenameValue) && old.kind == e.kind && old.name == e.name &&
        old.target != e.target)
      throw EditParseError(e.line, "conflicting rename for " + e.name.str() + " (line " + std::to_string(old.line) +
                                       " renames it to " + old.target + ")");
    if (recursion(e.kind) && recursion(old.kind) && old.name == e.name &&
        (old.kind != e.kind || old.text != e.text))
      throw EditParseError(e.line, "more than one recursion directive for " + e.name.str());
  }
  edits_.push_back(std::move(e));
}

void EditSet::merge(const EditSet& later) {
  for (const auto& e : later.edits_) {
    auto recursion = [](Edit::Kind k) { return k == Edit::Nonterminating || k == Edit::Termination; };
    edits_.erase(std::remove_if(edits_.begin(), edits_.end(),
                                [&](const Edit& old) {
                                  if ((e.kind == Edit::RenameType || e.kind == Edit::RenameValue) &&
                                      old.kind == e.kind && old.name == e.name)
                                    return true;
                                  return recursion(e.kind) && recursion(old.kind) && old.name == e.name;
                                }),
                 edits_.end());
    edits_.push_back(e);
  }
}

bool EditSet::skip_module(const std::string& module) const {
  return std::any_of(edits_.begin(), edits_.end(),
                     [&](const Edit& e) { return e.kind == Edit::SkipModule && e.module == module; });
}

std::set<std::string> EditSet::skipped_modules() const {
  std::set<std::string> out;
  for (const auto& e : edits_)
    if (e.kind == Edit::SkipModule) out.insert(e.module);
  return out;
}

bool EditSet::skip_value(const QualName& q) const {
  return skip_module(q.module) || find(Edit::SkipValue, QualName{q.module, q.base, Namespace::Value}) != nullptr;
}

bool EditSet::skip_class(const QualName& q) const {
  return skip_module(q.module) || find(Edit::SkipClass, QualName{q.module, q.base, Namespace::Class}) != nullptr;
}

bool EditSet::skip_instance(const std::string& module, const std::string& instance_name) const {
  return find(Edit::SkipInstance, QualName{module, instance_name, Namespace::Value}) != nullptr;
}

bool EditSet::skip_method(const QualName& cls, const std::string& method) const {
  for (auto it = edits_.rbegin(); it != edits_.rend(); ++it)
    if (it->kind == Edit::SkipMethod && it->method == method &&
        matches(it->name, QualName{cls.module, cls.base, Namespace::Class}))
      return true;
  return false;
}

std::optional<std::string> EditSet::user_rename(Namespace ns, const QualName& q) const {
  Edit::Kind kind = ns == Namespace::Type || ns == Namespace::Class ? Edit::RenameType : Edit::RenameValue;
  QualName probe{q.module, q.base, Namespace::Value};
  for (auto it = edits_.rbegin(); it != edits_.rend(); ++it)
    if (it->kind == kind && it->name.module == probe.module && it->name.base == probe.base) return it->target;
  for (auto it = edits_.rbegin(); it != edits_.rend(); ++it)
    if (it->kind == kind && it->name.module.empty() && it->name.base == probe.base) return it->target;
  return std::nullopt;
}

std::optional<std::string> EditSet::lookup_rename(Namespace ns, const QualName& q) const {
  if (auto r = user_rename(ns, q)) return r;
  return prelude_rename(ns, q);
}

RecursionMode EditSet::recursion_mode(const QualName& q) const {
  QualName probe{q.module, q.base, Namespace::Value};
  const Edit* nt = find(Edit::Nonterminating, probe);
  const Edit* te = find(Edit::Termination, probe);
  if (te && (!nt || te > nt)) return RecursionMode{RecursionMode::ProgramFixpoint, te->text};
  if (nt) return RecursionMode{RecursionMode::UnsafeFix, ""};
  return RecursionMode{};
}

bool EditSet::cps_class(const QualName& q) const {
  return find(Edit::CpsClass, QualName{q.module, q.base, Namespace::Class}) != nullptr;
}

std::vector<const Edit*> EditSet::redefines(const std::string& module) const {
  std::vector<const Edit*> out;
  for (const auto& e : edits_)
    if (e.kind == Edit::Redefine && (e.name.module.empty() || e.name.module == module)) out.push_back(&e);
  return out;
}

std::vector<std::vector<std::string>> EditSet::orders() const {
  std::vector<std::vector<std::string>> out;
  for (const auto& e : edits_)
    if (e.kind == Edit::Order) out.push_back(e.order);
  return out;
}

std::string EditSet::print() const {
  std::string out;
  for (const auto& e : edits_) out += kind_keyword(e) + "\n";
  return out;
}

EditSet parse_edits(std::string_view text) {
  EditSet set;
  std::vector<std::string> lines;
  {
    std::string cur;
    for (char c : text) {
      if (c == '\n') lines.push_back(std::move(cur)), cur.clear();
      else if (c != '\r') cur += c;
    }
    lines.push_back(std::move(cur));
  }
  for (size_t li = 0; li < lines.size(); ++li) {
    int lineno = static_cast<int>(li) + 1;
    std::string line = strip_comment(lines[li]);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    Edit e;
    e.line = lineno;
    const std::string& kw = toks[0];
    auto need = [&](size_t n, const char* usage) {
      if (toks.size() != n) throw EditParseError(lineno, std::string("expected: ") + usage);
    };
    if (kw == "skip") {
      if (toks.size() >= 2 && toks[1] == "module") {
        need(3, "skip module MODULE");
        e.kind = Edit::SkipModule;
        e.module = toks[2];
      } else if (toks.size() >= 2 && toks[1] == "class") {
        need(3, "skip class NAME");
        e.kind = Edit::SkipClass;
        e.name = parse_edit_name(toks[2], Namespace::Class);
      } else if (toks.size() >= 2 && toks[1] == "instance") {
        need(3, "skip instance NAME");
        e.kind = Edit::SkipInstance;
        e.name = parse_edit_name(toks[2], Namespace::Value);
      } else if (toks.size() >= 2 && toks[1] == "method") {
        need(4, "skip method CLASS METHOD");
        e.kind = Edit::SkipMethod;
        e.name = parse_edit_name(toks[2], Namespace::Class);
        e.method = toks[3];
      } else {
        need(2, "skip NAME");
        e.kind = Edit::SkipValue;
        e.name = parse_edit_name(toks[1], Namespace::Value);
      }
    } else if (kw == "rename") {
      need(5, "rename type|value NAME = TARGET");
      if (toks[3] != "=") throw EditParseError(lineno, "expected '=' in rename");
      if (toks[1] == "type") e.kind = Edit::RenameType;
      else if (toks[1] == "value") e.kind = Edit::RenameValue;
      else throw EditParseError(lineno, "rename namespace must be 'type' or 'value'");
      e.name = parse_edit_name(toks[2], e.kind == Edit::RenameType ? Namespace::Type : Namespace::Value);
      e.target = toks[4];
    } else if (kw == "redefine") {
      std::string body = trim(line.substr(line.find("redefine") + 8));
      while (!sentence_complete(body)) {
        if (++li >= lines.size()) throw EditParseError(lineno, "redefine sentence is not terminated by '.'");
        body += "\n" + strip_comment(lines[li]);
      }
      e.kind = Edit::Redefine;
      e.text = trim(body);
      e.target = defined_name(e.text, lineno);
      e.name = parse_edit_name(e.target, Namespace::Value);
      e.target = e.name.base;
    } else if (kw == "order") {
      if (toks.size() < 3) throw EditParseError(lineno, "order needs at least two names");
      e.kind = Edit::Order;
      e.order.assign(toks.begin() + 1, toks.end());
    } else if (kw == "nonterminating") {
      need(2, "nonterminating NAME");
      e.kind = Edit::Nonterminating;
      e.name = parse_edit_name(toks[1], Namespace::Value);
    } else if (kw == "termination") {
      if (toks.size() < 3) throw EditParseError(lineno, "expected: termination NAME PAYLOAD");
      e.kind = Edit::Termination;
      e.name = parse_edit_name(toks[1], Namespace::Value);
      size_t at = line.find(toks[1], line.find("termination") + 11) + toks[1].size();
      e.text = trim(line.substr(at));
    } else if (kw == "cps") {
      if (toks.size() != 3 || toks[1] != "class") throw EditParseError(lineno, "expected: cps class NAME");
      e.kind = Edit::CpsClass;
      e.name = parse_edit_name(toks[2], Namespace::Class);
    } else {
      throw EditParseError(lineno, "unknown edit '" + kw + "'");
    }
    set.add(std::move(e));
  }
  return set;
}

EditSet load_edits_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IOError", "cannot read edits file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_edits(ss.str());
}

}  // namespace totalizer
