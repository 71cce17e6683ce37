// SPDX-License-Identifier: Apache-2.0
#include "totalizer/lint.hpp"

#include <cctype>
#include <set>

#include "totalizer/names.hpp"
#include "totalizer/vernac.hpp"

namespace totalizer {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {
      "fun", "fix", "forall", "let", "in", "match", "with", "end", "if", "then", "else", "as", "return",
      "Type", "Prop", "Set", "at", "level", "measure", "struct", "wf", "exists", "_"};
  return k;
}

const std::set<std::string>& commands() {
  static const std::set<std::string> k = {
      "Definition", "Fixpoint", "Axiom", "Parameter", "Instance", "Class", "Record", "Inductive",
      "Lemma", "Theorem"};
  return k;
}

}  // namespace

std::vector<CoqToken> coq_tokens(std::string_view s) {
  std::vector<CoqToken> out;
  int line = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n && i < s.size(); ++k, ++i)
      if (s[i] == '\n') ++line;
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (s.compare(i, 2, "(*") == 0) {
      int depth = 0;
      do {
        if (s.compare(i, 2, "(*") == 0) {
          ++depth;
          advance(2);
        } else if (s.compare(i, 2, "*)") == 0) {
          --depth;
          advance(2);
        } else {
          advance(1);
        }
      } while (depth > 0 && i < s.size());
      continue;
    }
    CoqToken t;
    t.line = line;
    size_t start = i;
    if (c == '"') {
      advance(1);
      while (i < s.size()) {
        if (s[i] == '"') {
          if (i + 1 < s.size() && s[i + 1] == '"') {
            advance(2);
            continue;
          }
          advance(1);
          break;
        }
        advance(1);
      }
      t.kind = CoqToken::String;
    } else if (ident_start(c)) {
      while (i < s.size()) {
        while (i < s.size() && ident_char(s[i])) ++i;
        if (i + 1 < s.size() && s[i] == '.' && ident_start(s[i + 1])) {
          ++i;
          continue;
        }
        break;
      }
      t.kind = CoqToken::Ident;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      t.kind = CoqToken::Number;
    } else {
      static const char* const multi[] = {":=", "=>", "->", "<-", "{|", "|}", "`{", "`("};
      size_t n = 1;
      for (const char* m : multi)
        if (s.compare(i, std::char_traits<char>::length(m), m) == 0) n = std::char_traits<char>::length(m);
      i += n;
      t.kind = CoqToken::Symbol;
    }
    t.text = std::string(s.substr(start, i - start));
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<std::vector<CoqToken>> coq_sentences(std::string_view text) {
  std::vector<std::vector<CoqToken>> out;
  std::vector<CoqToken> cur;
  for (auto& t : coq_tokens(text)) {
    if (t.kind == CoqToken::Symbol && t.text == ".") {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(std::move(t));
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

namespace {

class Linter {
 public:
  Linter(const ExternalNames& external) : external_(external) {}

  void sentence(const std::vector<CoqToken>& ts) {
    size_t i = 0;
    while (i < ts.size() && (ts[i].text == "Local" || ts[i].text == "Global" || ts[i].text == "Program")) ++i;
    if (i >= ts.size()) return;
    const std::string& cmd = ts[i].text;
    bound_.clear();
    if (cmd == "Require") {
      for (size_t k = i + 1; k < ts.size(); ++k)
        if (ts[k].text != "Import" && ts[k].text != "Export") required_.insert(ts[k].text);
      return;
    }
    if (cmd == "Set" || cmd == "Unset" || cmd == "Generalizable" || cmd == "Arguments") return;
    if (cmd == "Existing") {
      for (size_t k = i + 2; k < ts.size(); ++k) use(ts[k]);
      return;
    }
    if (cmd == "Infix" || cmd == "Notation") {
      for (size_t k = i + 1; k < ts.size(); ++k)
        if (ts[k].kind == CoqToken::Ident) use(ts[k]);
      return;
    }
    if (!commands().count(cmd) || i + 1 >= ts.size()) {
      issue(ts[i], "unrecognized command " + cmd);
      return;
    }
    const std::string& name = ts[i + 1].text;
    bool recursive = cmd == "Inductive" || cmd == "Fixpoint";
    if (recursive) defined_.insert(name);
    std::set<std::string> later;
    later.insert(name);
    if (cmd == "Record") later.insert("Build_" + name);
    // Header binders up to `:` or `:=` at depth zero.
    size_t k = i + 2;
    binders(ts, k, [](const CoqToken& t, int depth) {
      return depth == 0 && t.kind == CoqToken::Symbol && (t.text == ":" || t.text == ":=");
    });
    bool fields = cmd == "Class" || cmd == "Record" || cmd == "Inductive";
    body(ts, k, fields ? &later : nullptr);
    for (const auto& n : later) defined_.insert(n);
  }

  std::vector<LintIssue> issues;

 private:
  using Stop = bool (*)(const CoqToken&, int);

  // Binder list: identifiers bind, annotations after `:` inside brackets are uses.
  void binders(const std::vector<CoqToken>& ts, size_t& k, Stop stop) {
    int depth = 0;
    std::vector<int> annot;  // bracket depths whose remaining tokens are uses
    std::vector<int> generalized;
    for (; k < ts.size(); ++k) {
      const CoqToken& t = ts[k];
      if (stop(t, depth)) return;
      if (t.kind == CoqToken::Symbol) {
        if (t.text == "(" || t.text == "{" || t.text == "`{" || t.text == "`(") {
          ++depth;
          if (t.text[0] == '`') generalized.push_back(depth);
          if (t.text == "{" && k + 1 < ts.size() &&
              (ts[k + 1].text == "measure" || ts[k + 1].text == "struct" || ts[k + 1].text == "wf"))
            annot.push_back(depth);
        } else if (t.text == ")" || t.text == "}") {
          if (!annot.empty() && annot.back() == depth) annot.pop_back();
          if (!generalized.empty() && generalized.back() == depth) generalized.pop_back();
          --depth;
        } else if (t.text == ":" && depth > 0 && (annot.empty() || annot.back() != depth)) {
          annot.push_back(depth);
        }
        continue;
      }
      if (t.kind != CoqToken::Ident || keywords().count(t.text)) continue;
      if (!generalized.empty() && generalized.back() == depth) {
        if (known(t.text) || t.text.find('.') != std::string::npos) use(t);
        else bound_.insert(t.text);
      } else if (!annot.empty() && annot.back() <= depth) {
        use(t);
      } else {
        bound_.insert(t.text);
      }
    }
  }

  void body(const std::vector<CoqToken>& ts, size_t& k, std::set<std::string>* later) {
    bool pattern = false;
    bool field_pos = true;  // after `:=`, `|`, `{` or `;` a name followed by `:` is being declared
    for (; k < ts.size(); ++k) {
      const CoqToken& t = ts[k];
      if (t.kind == CoqToken::Symbol) {
        if (t.text == "|" || t.text == "with") pattern = true;
        if (t.text == "=>" || t.text == ":") pattern = false;
        field_pos = t.text == ":=" || t.text == "|" || t.text == "{" || t.text == ";";
        continue;
      }
      if (t.kind != CoqToken::Ident) {
        field_pos = false;
        continue;
      }
      if (t.text == "with") {
        pattern = true;
        continue;
      }
      if (t.text == "fun" || t.text == "forall" || t.text == "fix") {
        ++k;
        if (t.text == "fun")
          binders(ts, k, [](const CoqToken& x, int d) { return d == 0 && x.text == "=>"; });
        else if (t.text == "forall")
          binders(ts, k, [](const CoqToken& x, int d) { return d == 0 && x.text == ","; });
        else
          binders(ts, k, [](const CoqToken& x, int d) { return d == 0 && x.text == ":="; });
        field_pos = false;
        continue;
      }
      if (t.text == "let" && k + 1 < ts.size() && ts[k + 1].kind == CoqToken::Ident) {
        bound_.insert(ts[++k].text);
        continue;
      }
      bool declares = later && field_pos && k + 1 < ts.size() && ts[k + 1].text == ":";
      field_pos = false;
      if (keywords().count(t.text)) continue;
      if (declares) {
        later->insert(t.text);
        continue;
      }
      if (pattern && !known(t.text) && t.text.find('.') == std::string::npos) {
        bound_.insert(t.text);
        continue;
      }
      use(t);
    }
  }

  bool known(const std::string& n) const {
    return bound_.count(n) || defined_.count(n) || target_builtins().count(n) || support_names().count(n);
  }

  void use(const CoqToken& t) {
    if (t.kind != CoqToken::Ident || keywords().count(t.text) || known(t.text)) return;
    std::string q = qualifier_of(t.text);
    if (!q.empty()) {
      if (!required_.count(q)) {
        issue(t, "module " + q + " is not Required");
        return;
      }
      if (external_ && !external_(q, t.text.substr(q.size() + 1)))
        issue(t, "module " + q + " does not define " + t.text.substr(q.size() + 1));
      return;
    }
    issue(t, "used before definition");
  }

  void issue(const CoqToken& t, std::string msg) { issues.push_back(LintIssue{t.line, t.text, std::move(msg)}); }

  const ExternalNames& external_;
  std::set<std::string> defined_;
  std::set<std::string> required_;
  std::set<std::string> bound_;
};

}  // namespace

std::vector<LintIssue> lint_file(std::string_view text, const ExternalNames& external) {
  Linter l(external);
  for (const auto& s : coq_sentences(text)) l.sentence(s);
  return l.issues;
}

}  // namespace totalizer
