// SPDX-License-Identifier: Apache-2.0
#include "totalizer/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace totalizer {
namespace {

constexpr std::array kKeywords = {"case",  "class",  "data",   "default", "deriving", "do",     "else",
                                  "if",    "import", "in",     "infix",   "infixl",   "infixr", "instance",
                                  "let",   "module", "newtype", "of",     "then",     "type",   "where",
                                  "_"};
constexpr std::array kReservedOps = {"..", "::", "=", "\\", "|", "<-", "->", "@", "~", "=>"};

bool is_symbol_char(char c) {
  switch (c) {
    case '!': case '#': case '$': case '%': case '&': case '*': case '+': case '.': case '/':
    case '<': case '=': case '>': case '?': case '@': case '\\': case '^': case '|': case '-':
    case '~': case ':':
      return true;
    default:
      return false;
  }
}

bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : s_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    int last_line = 0;
    for (;;) {
      skip_space();
      Token t;
      t.loc = {line_, col_};
      if (i_ >= s_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      scan(t);
      t.bol = t.loc.line != last_line;
      last_line = t.loc.line;
      out.push_back(std::move(t));
    }
  }

 private:
  char peek(size_t k = 0) const { return i_ + k < s_.size() ? s_[i_ + k] : '\0'; }

  void advance() {
    char c = s_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if (c == '\t') {
      col_ = ((col_ - 1) / 8 + 1) * 8 + 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++col_;
    }
  }

  void skip_space() {
    for (;;) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
        advance();
      } else if (c == '-' && peek(1) == '-' && line_comment_start()) {
        while (i_ < s_.size() && peek() != '\n') advance();
      } else if (c == '{' && peek(1) == '-') {
        block_comment();
      } else {
        return;
      }
    }
  }

  bool line_comment_start() const {
    size_t k = i_;
    while (k < s_.size() && s_[k] == '-') ++k;
    return k >= s_.size() || !is_symbol_char(s_[k]);
  }

  void block_comment() {
    Loc start{line_, col_};
    int depth = 0;
    while (i_ < s_.size()) {
      if (peek() == '{' && peek(1) == '-') {
        advance(), advance(), ++depth;
      } else if (peek() == '-' && peek(1) == '}') {
        advance(), advance();
        if (--depth == 0) return;
      } else {
        advance();
      }
    }
    throw ParseError("unterminated block comment", start);
  }

  void scan(Token& t) {
    char c = peek();
    if (std::isupper(static_cast<unsigned char>(c))) return scan_upper(t);
    if (std::islower(static_cast<unsigned char>(c)) || c == '_') return scan_lower(t);
    if (std::isdigit(static_cast<unsigned char>(c))) return scan_number(t);
    if (c == '"') return scan_string(t);
    if (c == '\'') return scan_char(t);
    if (std::string_view("()[],;`{}").find(c) != std::string_view::npos) {
      t.kind = Tok::Special;
      t.text = std::string(1, c);
      advance();
      return;
    }
    if (is_symbol_char(c)) {
      std::string sym;
      while (is_symbol_char(peek())) sym += peek(), advance();
      classify_symbol(t, sym);
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", t.loc);
  }

  static void classify_symbol(Token& t, const std::string& sym) {
    if (std::find(kReservedOps.begin(), kReservedOps.end(), sym) != kReservedOps.end()) {
      t.kind = Tok::Keyword;
    } else {
      t.kind = sym[0] == ':' ? Tok::ConSym : Tok::VarSym;
    }
    t.text = sym;
  }

  std::string ident() {
    std::string s;
    while (is_ident_char(peek())) s += peek(), advance();
    return s;
  }

  void scan_lower(Token& t) {
    t.text = ident();
    bool kw = std::find(kKeywords.begin(), kKeywords.end(), t.text) != kKeywords.end();
    t.kind = kw ? Tok::Keyword : Tok::VarId;
  }

  // ConId, or a qualified name M.N.x / M.N.Con / M.N.+ .
  void scan_upper(Token& t) {
    std::string qual;
    std::string part = ident();
    for (;;) {
      if (peek() != '.') break;
      char n = peek(1);
      if (std::isupper(static_cast<unsigned char>(n))) {
        advance();
        qual += (qual.empty() ? "" : ".") + part;
        part = ident();
        continue;
      }
      if (std::islower(static_cast<unsigned char>(n)) || n == '_') {
        advance();
        qual += (qual.empty() ? "" : ".") + part;
        t.qual = qual;
        t.text = ident();
        t.kind = Tok::VarId;
        return;
      }
      if (is_symbol_char(n)) {
        advance();
        qual += (qual.empty() ? "" : ".") + part;
        std::string sym;
        while (is_symbol_char(peek())) sym += peek(), advance();
        t.qual = qual;
        t.text = sym;
        t.kind = sym[0] == ':' ? Tok::ConSym : Tok::VarSym;
        return;
      }
      break;
    }
    t.qual = qual;
    t.text = part;
    t.kind = Tok::ConId;
  }

  void scan_number(Token& t) {
    std::string s;
    if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
      advance(), advance();
      std::string hex;
      while (std::isxdigit(static_cast<unsigned char>(peek()))) hex += peek(), advance();
      t.kind = Tok::Integer;
      t.text = std::to_string(std::stoll(hex, nullptr, 16));
      return;
    }
    while (std::isdigit(static_cast<unsigned char>(peek()))) s += peek(), advance();
    t.kind = Tok::Integer;
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      s += '.', advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) s += peek(), advance();
      t.kind = Tok::Float;
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (std::isdigit(static_cast<unsigned char>(peek(1))) || peek(1) == '-' || peek(1) == '+')) {
      s += peek(), advance();
      while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '-' || peek() == '+') s += peek(), advance();
      t.kind = Tok::Float;
    }
    t.text = s;
  }

  void scan_string(Token& t) {
    advance();
    std::string s;
    while (i_ < s_.size() && peek() != '"') {
      if (peek() == '\n') throw ParseError("newline in string literal", t.loc);
      if (peek() == '\\') s += peek(), advance();
      if (i_ < s_.size()) s += peek(), advance();
    }
    if (i_ >= s_.size()) throw ParseError("unterminated string literal", t.loc);
    advance();
    t.kind = Tok::String;
    t.text = s;
  }

  void scan_char(Token& t) {
    advance();
    std::string s;
    if (peek() == '\\') s += peek(), advance();
    while (i_ < s_.size() && peek() != '\'' && peek() != '\n') s += peek(), advance();
    if (peek() != '\'') throw ParseError("unterminated character literal", t.loc);
    advance();
    t.kind = Tok::Char;
    t.text = s;
  }

  std::string_view s_;
  size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

bool layout_keyword(const Token& t) {
  return t.kind == Tok::Keyword && (t.text == "where" || t.text == "let" || t.text == "do" || t.text == "of");
}

Token synth(const char* text, Loc loc) {
  Token t;
  t.kind = Tok::Special;
  t.text = text;
  t.loc = loc;
  t.implicit = true;
  return t;
}

// Tokens that may legitimately continue a line after an implicit block closed.
bool continues_line(const Token& t) {
  switch (t.kind) {
    case Tok::VarSym: case Tok::ConSym: case Tok::End:
      return true;
    case Tok::Keyword:
      return t.text != "_" && t.text != "case" && t.text != "let" && t.text != "do" && t.text != "if" &&
             t.text != "data" && t.text != "type" && t.text != "class" && t.text != "instance" &&
             t.text != "newtype" && t.text != "import";
    case Tok::Special:
      return t.text != "(" && t.text != "[";
    default:
      return false;
  }
}

struct Ctx {
  int indent = 0;  // 0 for explicit braces
  std::string kind;
  size_t depth = 0;  // bracket depth when opened
};

class Layout {
 public:
  std::vector<Token> run(std::vector<Token> raw) {
    if (raw.empty() || raw.back().kind != Tok::End) raw.push_back(Token{});
    size_t start = 0;
    if (!raw.front().keyword("module")) {
      open_implicit(raw.front().kind == Tok::End ? 0 : raw.front().loc.col, "top", raw.front().loc);
      if (raw.front().kind != Tok::End) start = 1, emit_token(raw.front());
    }
    for (size_t i = start; i < raw.size(); ++i) {
      const Token& t = raw[i];
      if (pending_) {
        pending_ = false;
        if (t.special("{")) {
          ctx_.push_back({0, pending_kind_, brackets_.size()});
          brackets_.push_back('L');
          out_.push_back(t);
          continue;
        }
        int n = t.kind == Tok::End ? 0 : t.loc.col;
        if (n > enclosing_indent()) {
          open_implicit(n, pending_kind_, t.loc);
          emit_token(t);
          continue;
        }
        out_.push_back(synth("{", t.loc));
        out_.push_back(synth("}", t.loc));
      }
      if (t.kind == Tok::End) break;
      if (t.bol) offside(t);
      emit_token(t);
    }
    while (!ctx_.empty()) {
      if (ctx_.back().indent == 0) throw LayoutError("unclosed explicit brace", raw.back().loc);
      close_implicit(raw.back().loc);
    }
    Token end;
    end.loc = raw.back().loc;
    out_.push_back(end);
    return std::move(out_);
  }

 private:
  int enclosing_indent() const {
    for (auto it = ctx_.rbegin(); it != ctx_.rend(); ++it) return it->indent;
    return 0;
  }

  bool top_implicit() const { return !ctx_.empty() && ctx_.back().indent > 0; }

  void open_implicit(int n, const std::string& kind, Loc loc) {
    ctx_.push_back({n, kind, brackets_.size()});
    out_.push_back(synth("{", loc));
  }

  void close_implicit(Loc loc) {
    ctx_.pop_back();
    out_.push_back(synth("}", loc));
  }

  void offside(const Token& t) {
    bool popped = false;
    int popped_indent = 0;
    while (top_implicit() && t.loc.col < ctx_.back().indent) {
      popped_indent = ctx_.back().indent;
      close_implicit(t.loc);
      popped = true;
    }
    if (top_implicit() && t.loc.col == ctx_.back().indent) {
      out_.push_back(synth(";", t.loc));
    } else if (popped && top_implicit() && t.loc.col > ctx_.back().indent && t.loc.col < popped_indent &&
               !continues_line(t)) {
      throw LayoutError("inconsistent indentation: column " + std::to_string(t.loc.col) +
                            " matches no enclosing block",
                        t.loc);
    }
  }

  // Closes implicit blocks opened at or inside the current bracket depth.
  void close_inside(size_t depth, Loc loc) {
    while (top_implicit() && ctx_.back().depth >= depth) close_implicit(loc);
  }

  void emit_token(const Token& t) {
    bool after_let_brace = closed_let_brace_;
    closed_let_brace_ = false;
    if (t.kind == Tok::Special) {
      const std::string& s = t.text;
      if (s == "(" || s == "[" || s == "{") {
        brackets_.push_back(s[0]);
      } else if (s == ")" || s == "]" || s == "}") {
        close_inside(brackets_.size(), t.loc);
        if (brackets_.empty()) throw LayoutError("unbalanced '" + s + "'", t.loc);
        if (brackets_.back() == 'L') {
          if (s != "}") throw LayoutError("'" + s + "' closes a layout brace", t.loc);
          closed_let_brace_ = ctx_.back().kind == "let";
          ctx_.pop_back();
        }
        brackets_.pop_back();
        trim_ifs();
      } else if (s == ",") {
        while (top_implicit() && ctx_.back().kind == "let" && ctx_.back().depth == brackets_.size())
          close_implicit(t.loc);
      }
      out_.push_back(t);
      return;
    }
    if (t.kind == Tok::Keyword) {
      if (t.text == "in") {
        if (!after_let_brace && top_implicit() && ctx_.back().kind == "let" &&
            ctx_.back().depth == brackets_.size())
          close_implicit(t.loc);
      } else if (t.text == "if") {
        ifs_.push_back(ctx_.size());
      } else if (t.text == "then" || t.text == "else") {
        if (!ifs_.empty()) {
          while (top_implicit() && ctx_.size() > ifs_.back()) close_implicit(t.loc);
          if (t.text == "else") ifs_.pop_back();
        }
      }
    }
    out_.push_back(t);
    if (layout_keyword(t)) {
      pending_ = true;
      pending_kind_ = t.text;
    }
  }

  void trim_ifs() {
    while (!ifs_.empty() && ifs_.back() > ctx_.size()) ifs_.pop_back();
  }

  std::vector<Token> out_;
  std::vector<Ctx> ctx_;
  std::vector<char> brackets_;
  std::vector<size_t> ifs_;
  bool pending_ = false;
  bool closed_let_brace_ = false;
  std::string pending_kind_;
};

}  // namespace

std::vector<Token> lex(std::string_view source) { return Lexer(source).run(); }

std::vector<Token> resolve_layout(std::vector<Token> raw) { return Layout().run(std::move(raw)); }

std::vector<Token> resolve_layout(std::string_view source) { return resolve_layout(lex(source)); }

std::string render_tokens(const std::vector<Token>& toks) {
  std::string out;
  for (const auto& t : toks) {
    if (t.kind == Tok::End) break;
    if (!out.empty()) out += ' ';
    switch (t.kind) {
      case Tok::String: out += '"' + t.text + '"'; break;
      case Tok::Char: out += '\'' + t.text + '\''; break;
      default: out += t.full();
    }
  }
  return out;
}

}  // namespace totalizer
