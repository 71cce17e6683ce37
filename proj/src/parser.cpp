// SPDX-License-Identifier: Apache-2.0
#include "totalizer/parser.hpp"

#include <algorithm>
#include <optional>

namespace totalizer {

Expr mk_var(QualName q, Loc loc) {
  Expr e;
  e.kind = Expr::Var;
  e.name = std::move(q);
  e.loc = loc;
  return e;
}

Expr mk_con(QualName q, Loc loc) {
  Expr e;
  e.kind = Expr::Con;
  e.name = std::move(q);
  e.loc = loc;
  return e;
}

Expr mk_lit(std::string digits, Loc loc) {
  Expr e;
  e.kind = Expr::Lit;
  e.lit = std::move(digits);
  e.loc = loc;
  return e;
}

Expr mk_app(Expr f, Expr x) {
  Expr e;
  e.kind = Expr::App;
  e.loc = f.loc;
  e.args.push_back(std::move(f));
  e.args.push_back(std::move(x));
  return e;
}

Expr mk_apps(Expr f, std::vector<Expr> xs) {
  for (auto& x : xs) f = mk_app(std::move(f), std::move(x));
  return f;
}

Expr mk_opapp(Expr l, QualName op, bool is_con, Expr r) {
  Expr e;
  e.kind = Expr::OpApp;
  e.loc = l.loc;
  e.name = std::move(op);
  e.op_con = is_con;
  e.args.push_back(std::move(l));
  e.args.push_back(std::move(r));
  return e;
}

Pattern mk_pvar(std::string name, Loc loc) {
  Pattern p;
  p.kind = Pattern::Var;
  p.name = local_name(std::move(name));
  p.loc = loc;
  return p;
}

Pattern mk_pwild() { return Pattern{}; }

Pattern mk_pcon(QualName q, std::vector<Pattern> args) {
  Pattern p;
  p.kind = Pattern::Con;
  p.name = std::move(q);
  p.args = std::move(args);
  return p;
}

QualName local_name(std::string base) { return QualName{"", std::move(base), Namespace::Value}; }

Fixity default_fixity(const std::string& op) {
  static const std::map<std::string, Fixity> table = {
      {"$", {Assoc::Right, 0}},   {"$!", {Assoc::Right, 0}},  {"seq", {Assoc::Right, 0}},
      {">>", {Assoc::Left, 1}},   {">>=", {Assoc::Left, 1}},  {"=<<", {Assoc::Right, 1}},
      {"||", {Assoc::Right, 2}},  {"&&", {Assoc::Right, 3}},  {"==", {Assoc::None, 4}},
      {"/=", {Assoc::None, 4}},   {"<", {Assoc::None, 4}},    {"<=", {Assoc::None, 4}},
      {">", {Assoc::None, 4}},    {">=", {Assoc::None, 4}},   {"elem", {Assoc::None, 4}},
      {"notElem", {Assoc::None, 4}}, {"<$>", {Assoc::Left, 4}}, {"<$", {Assoc::Left, 4}},
      {"<*>", {Assoc::Left, 4}},  {"*>", {Assoc::Left, 4}},   {"<*", {Assoc::Left, 4}},
      {":", {Assoc::Right, 5}},   {"++", {Assoc::Right, 5}},  {"<>", {Assoc::Right, 6}},
      {"+", {Assoc::Left, 6}},    {"-", {Assoc::Left, 6}},    {"*", {Assoc::Left, 7}},
      {"/", {Assoc::Left, 7}},    {"div", {Assoc::Left, 7}},  {"mod", {Assoc::Left, 7}},
      {"quot", {Assoc::Left, 7}}, {"rem", {Assoc::Left, 7}},  {"^", {Assoc::Right, 8}},
      {".", {Assoc::Right, 9}},   {"!!", {Assoc::Left, 9}},
  };
  auto it = table.find(op);
  return it == table.end() ? Fixity{} : it->second;
}

namespace {

QualName name_of(const Token& t, Namespace ns) { return QualName{t.qual, t.text, ns}; }

bool is_op_token(const Token& t) { return t.kind == Tok::VarSym || t.kind == Tok::ConSym; }

std::string tuple_con(size_t n) { return "(" + std::string(n - 1, ',') + ")"; }

class P {
 public:
  P(const std::vector<Token>& toks, size_t b, size_t e, const std::map<std::string, Fixity>& fx, int& sec)
      : t_(toks), i_(b), end_(e), fix_(fx), sec_(sec) {
    eof_.kind = Tok::End;
    if (!toks.empty()) eof_.loc = toks[std::min(e, toks.size()) - (e > 0 ? 1 : 0)].loc;
  }

  size_t pos() const { return i_; }
  bool at_end() const { return i_ >= end_ || t_[i_].kind == Tok::End; }
  const Token& peek(size_t k = 0) const {
    size_t j = i_ + k;
    return j < end_ ? t_[j] : eof_;
  }
  const Token& next() {
    const Token& tk = peek();
    if (i_ < end_) ++i_;
    return tk;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + (at_end() ? " at end of declaration" : " near '" + peek().full() + "'"), peek().loc);
  }

  void expect_special(std::string_view s) {
    if (!peek().special(s)) fail("expected '" + std::string(s) + "'");
    next();
  }
  void expect_keyword(std::string_view s) {
    if (!peek().keyword(s)) fail("expected '" + std::string(s) + "'");
    next();
  }
  bool accept_special(std::string_view s) {
    if (!peek().special(s)) return false;
    next();
    return true;
  }
  bool accept_keyword(std::string_view s) {
    if (!peek().keyword(s)) return false;
    next();
    return true;
  }

  void check_ident(const Token& tk) const {
    if (tk.text.size() > 2 && tk.text.compare(tk.text.size() - 2, 2, "__") == 0)
      throw ParseError("identifier '" + tk.text + "' ends in '__', which is reserved for generated names", tk.loc);
  }

  // Index of the token closing the bracket opened at `open`.
  size_t matching(size_t open) const {
    int depth = 0;
    for (size_t j = open; j < end_; ++j) {
      const Token& tk = t_[j];
      if (tk.kind != Tok::Special) continue;
      if (tk.text == "(" || tk.text == "[" || tk.text == "{") ++depth;
      if (tk.text == ")" || tk.text == "]" || tk.text == "}") {
        if (--depth == 0) return j;
      }
    }
    throw ParseError("unbalanced brackets", t_[open].loc);
  }

  // Scans ahead at bracket depth 0 for a keyword before any of the terminators.
  bool ahead(std::string_view want, std::initializer_list<std::string_view> stop_keywords) const {
    int depth = 0;
    for (size_t j = i_; j < end_; ++j) {
      const Token& tk = t_[j];
      if (tk.kind == Tok::End) return false;
      if (tk.kind == Tok::Special) {
        if (tk.text == "(" || tk.text == "[" || tk.text == "{") ++depth;
        else if (tk.text == ")" || tk.text == "]" || tk.text == "}") {
          if (depth == 0) return false;
          --depth;
        } else if (depth == 0 && (tk.text == ";" || tk.text == ",")) {
          return false;
        }
        continue;
      }
      if (depth != 0 || tk.kind != Tok::Keyword) continue;
      if (tk.text == want) return true;
      for (auto s : stop_keywords)
        if (tk.text == s) return false;
    }
    return false;
  }

  // ---------------------------------------------------------------- types

  bool starts_atype(const Token& tk) const {
    return tk.kind == Tok::VarId || tk.kind == Tok::ConId || tk.special("(") || tk.special("[");
  }

  Type parse_atype() {
    const Token& tk = peek();
    Type ty;
    if (tk.kind == Tok::VarId) {
      if (tk.text == "forall") throw Unsupported("explicit forall types are not supported", tk.loc);
      check_ident(tk);
      next();
      ty.kind = Type::Var;
      ty.var = tk.text;
      return ty;
    }
    if (tk.kind == Tok::ConId) {
      next();
      ty.kind = Type::Con;
      ty.con = name_of(tk, Namespace::Type);
      return ty;
    }
    if (tk.special("(")) {
      next();
      if (accept_special(")")) {
        ty.kind = Type::Unit;
        return ty;
      }
      if (peek().keyword("->") && peek(1).special(")")) {
        next(), next();
        ty.kind = Type::Con;
        ty.con = QualName{"", "->", Namespace::Type};
        return ty;
      }
      if (peek().special(",")) {
        size_t n = 1;
        while (accept_special(",")) ++n;
        expect_special(")");
        ty.kind = Type::Con;
        ty.con = QualName{"", tuple_con(n), Namespace::Type};
        return ty;
      }
      Type first = parse_type();
      if (accept_special(")")) return first;
      ty.kind = Type::Tuple;
      ty.args.push_back(std::move(first));
      while (accept_special(",")) ty.args.push_back(parse_type());
      expect_special(")");
      return ty;
    }
    if (tk.special("[")) {
      next();
      if (accept_special("]")) {
        ty.kind = Type::Con;
        ty.con = QualName{"", "[]", Namespace::Type};
        return ty;
      }
      ty.kind = Type::List;
      ty.args.push_back(parse_type());
      expect_special("]");
      return ty;
    }
    fail("expected a type");
  }

  Type parse_btype(bool strict_marks = false) {
    if (strict_marks && peek().is(Tok::VarSym, "!")) next();
    Type t = parse_atype();
    while (starts_atype(peek()) || (strict_marks && peek().is(Tok::VarSym, "!"))) {
      if (strict_marks && peek().is(Tok::VarSym, "!")) next();
      Type app;
      app.kind = Type::App;
      app.args.push_back(std::move(t));
      app.args.push_back(parse_atype());
      t = std::move(app);
    }
    return t;
  }

  Type parse_type() {
    Type b = parse_btype();
    if (!accept_keyword("->")) return b;
    Type f;
    f.kind = Type::Fun;
    f.args.push_back(std::move(b));
    f.args.push_back(parse_type());
    return f;
  }

  Constraint to_constraint(const Type& t) const {
    if (t.kind == Type::App && t.args[0].kind == Type::Con) {
      Constraint c;
      c.cls = t.args[0].con;
      c.cls.ns = Namespace::Class;
      c.type = t.args[1];
      return c;
    }
    throw Unsupported("unsupported class constraint", peek().loc);
  }

  std::vector<Constraint> to_context(const Type& t) const {
    std::vector<Constraint> out;
    if (t.kind == Type::Unit) return out;
    if (t.kind == Type::Tuple) {
      for (const auto& a : t.args) out.push_back(to_constraint(a));
      return out;
    }
    out.push_back(to_constraint(t));
    return out;
  }

  QualType parse_qualtype() {
    QualType qt;
    Type t = parse_type();
    if (accept_keyword("=>")) {
      qt.context = to_context(t);
      qt.type = parse_type();
    } else {
      qt.type = std::move(t);
    }
    return qt;
  }

  // ------------------------------------------------------------- patterns

  bool starts_apat(const Token& tk) const {
    return tk.kind == Tok::VarId || tk.kind == Tok::ConId || tk.kind == Tok::Integer || tk.keyword("_") ||
           tk.special("(") || tk.special("[") || tk.keyword("~") || tk.is(Tok::VarSym, "!") ||
           tk.kind == Tok::String || tk.kind == Tok::Char || tk.kind == Tok::Float;
  }

  Pattern parse_pattern() {
    Pattern lp = parse_lpat();
    if (peek().kind == Tok::ConSym || (peek().special("`") && peek(1).kind == Tok::ConId)) {
      Token op;
      if (peek().special("`")) {
        next();
        op = next();
        expect_special("`");
      } else {
        op = next();
      }
      Pattern rp = parse_pattern();
      Pattern p = mk_pcon(name_of(op, Namespace::Constructor), {});
      p.loc = lp.loc;
      p.args.push_back(std::move(lp));
      p.args.push_back(std::move(rp));
      return p;
    }
    return lp;
  }

  Pattern parse_lpat() {
    const Token& tk = peek();
    if (tk.is(Tok::VarSym, "-") && peek(1).kind == Tok::Integer) {
      next();
      Pattern p;
      p.kind = Pattern::Lit;
      p.loc = tk.loc;
      p.lit = "-" + next().text;
      return p;
    }
    if (tk.kind == Tok::ConId && !peek(1).special("{")) {
      next();
      Pattern p = mk_pcon(name_of(tk, Namespace::Constructor), {});
      p.loc = tk.loc;
      while (starts_apat(peek())) p.args.push_back(parse_apat());
      return p;
    }
    return parse_apat();
  }

  Pattern parse_apat() {
    const Token& tk = peek();
    Loc loc = tk.loc;
    if (tk.kind == Tok::VarId) {
      check_ident(tk);
      if (!tk.qual.empty()) fail("qualified name in pattern");
      next();
      if (accept_keyword("@")) {
        Pattern p;
        p.kind = Pattern::As;
        p.name = local_name(tk.text);
        p.loc = loc;
        p.args.push_back(parse_apat());
        return p;
      }
      return mk_pvar(tk.text, loc);
    }
    if (tk.keyword("_")) {
      next();
      Pattern p;
      p.loc = loc;
      return p;
    }
    if (tk.kind == Tok::ConId) {
      next();
      QualName con = name_of(tk, Namespace::Constructor);
      if (peek().special("{") && !peek().implicit) return parse_record_pattern(con, loc);
      Pattern p = mk_pcon(con, {});
      p.loc = loc;
      return p;
    }
    if (tk.kind == Tok::Integer) {
      next();
      Pattern p;
      p.kind = Pattern::Lit;
      p.lit = tk.text;
      p.loc = loc;
      return p;
    }
    if (tk.kind == Tok::String || tk.kind == Tok::Char || tk.kind == Tok::Float)
      throw Unsupported("only integer literals are supported", loc);
    if (tk.keyword("~")) {
      next();
      Pattern p;
      p.kind = Pattern::Lazy;
      p.loc = loc;
      p.args.push_back(parse_apat());
      return p;
    }
    if (tk.is(Tok::VarSym, "!")) {
      next();
      return parse_apat();
    }
    if (tk.special("(")) {
      next();
      if (accept_special(")")) {
        Pattern p = mk_pcon(QualName{"", "()", Namespace::Constructor}, {});
        p.loc = loc;
        return p;
      }
      Pattern first = parse_pattern();
      if (accept_special(")")) return first;
      Pattern p;
      p.kind = Pattern::Tuple;
      p.loc = loc;
      p.args.push_back(std::move(first));
      while (accept_special(",")) p.args.push_back(parse_pattern());
      expect_special(")");
      return p;
    }
    if (tk.special("[")) {
      next();
      Pattern p;
      p.loc = loc;
      if (accept_special("]")) return mk_pcon(QualName{"", "[]", Namespace::Constructor}, {});
      p.kind = Pattern::List;
      p.args.push_back(parse_pattern());
      while (accept_special(",")) p.args.push_back(parse_pattern());
      expect_special("]");
      return p;
    }
    fail("expected a pattern");
  }

  Pattern parse_record_pattern(QualName con, Loc loc) {
    Pattern p;
    p.kind = Pattern::Rec;
    p.name = std::move(con);
    p.loc = loc;
    expect_special("{");
    if (!peek().special("}")) {
      do {
        if (accept_keyword("..")) {
          p.wildcard = true;
          continue;
        }
        const Token& f = next();
        if (f.kind != Tok::VarId) fail("expected a field name");
        p.fields.push_back(QualName{f.qual, f.text, Namespace::Value});
        if (accept_keyword("=")) p.args.push_back(parse_pattern());
        else p.args.push_back(mk_pvar(f.text, f.loc));
      } while (accept_special(","));
    }
    expect_special("}");
    return p;
  }

  // ---------------------------------------------------------- expressions

  struct Item {
    bool is_op = false;
    bool neg = false;
    Expr e;
    QualName op;
    bool con = false;
    Fixity fx;
  };

  Fixity fixity_of(const std::string& op) const {
    auto it = fix_.find(op);
    return it != fix_.end() ? it->second : default_fixity(op);
  }

  // Reads an operator at the cursor (symbol or backticked name), if any.
  bool read_op(Item& it) {
    const Token& tk = peek();
    if (is_op_token(tk)) {
      next();
      it.is_op = true;
      it.con = tk.kind == Tok::ConSym;
      it.op = name_of(tk, it.con ? Namespace::Constructor : Namespace::Value);
      it.fx = fixity_of(tk.text);
      return true;
    }
    if (tk.special("`") && (peek(1).kind == Tok::VarId || peek(1).kind == Tok::ConId) && peek(2).special("`")) {
      next();
      const Token& id = next();
      next();
      it.is_op = true;
      it.con = id.kind == Tok::ConId;
      it.op = name_of(id, it.con ? Namespace::Constructor : Namespace::Value);
      it.fx = fixity_of(id.text);
      return true;
    }
    return false;
  }

  bool op_follows() const {
    const Token& tk = peek();
    return is_op_token(tk) || (tk.special("`") && peek(2).special("`"));
  }

  Expr parse_exp() {
    Expr e = parse_infix(nullptr);
    return maybe_annot(std::move(e));
  }

  Expr maybe_annot(Expr e) {
    if (!peek().keyword("::")) return e;
    next();
    Expr a;
    a.kind = Expr::TypeAnnot;
    a.loc = e.loc;
    a.type = parse_qualtype();
    a.args.push_back(std::move(e));
    return a;
  }

  // With `trailing` non-null, an operator directly before ')' ends the sequence (left section).
  Expr parse_infix(Item* trailing) {
    std::vector<Item> items;
    for (;;) {
      if (peek().is(Tok::VarSym, "-") && peek().qual.empty() && (items.empty() || items.back().is_op)) {
        next();
        Item n;
        n.neg = true;
        items.push_back(std::move(n));
        continue;
      }
      Item operand;
      operand.e = parse_lexp();
      items.push_back(std::move(operand));
      if (!op_follows()) break;
      Item op;
      size_t save = i_;
      read_op(op);
      if (trailing && peek().special(")")) {
        *trailing = std::move(op);
        break;
      }
      if (at_end() || peek().special(")") || peek().special("]") || peek().special(",")) {
        i_ = save;
        fail("operator without right operand");
      }
      items.push_back(std::move(op));
    }
    size_t k = 0;
    Item start;
    start.fx = Fixity{Assoc::None, -1};
    Expr e = parse_neg(start, items, k);
    if (k != items.size()) fail("ambiguous operator precedence");
    return e;
  }

  // Operator-precedence resolution as in the Haskell report.
  Expr parse_neg(const Item& op1, std::vector<Item>& items, size_t& k) {
    if (items[k].neg) {
      if (op1.fx.prec >= 6) fail("negation inside a higher-precedence operator");
      ++k;
      Item negop;
      negop.fx = Fixity{Assoc::Left, 6};
      Expr r = parse_neg(negop, items, k);
      Expr n;
      n.kind = Expr::Neg;
      n.loc = r.loc;
      n.args.push_back(std::move(r));
      return parse1(op1, std::move(n), items, k);
    }
    Expr e1 = std::move(items[k].e);
    ++k;
    return parse1(op1, std::move(e1), items, k);
  }

  Expr parse1(const Item& op1, Expr e1, std::vector<Item>& items, size_t& k) {
    while (k < items.size()) {
      const Item& op2 = items[k];
      int p1 = op1.fx.prec, p2 = op2.fx.prec;
      if (p1 == p2 && (op1.fx.assoc != op2.fx.assoc || op1.fx.assoc == Assoc::None))
        fail("cannot mix operators of equal precedence and differing associativity");
      if (p1 > p2 || (p1 == p2 && op1.fx.assoc == Assoc::Left)) return e1;
      ++k;
      Item opcopy;
      opcopy.op = op2.op;
      opcopy.con = op2.con;
      opcopy.fx = op2.fx;
      Expr r = parse_neg(opcopy, items, k);
      e1 = mk_opapp(std::move(e1), opcopy.op, opcopy.con, std::move(r));
    }
    return e1;
  }

  Expr parse_lexp() {
    const Token& tk = peek();
    Loc loc = tk.loc;
    if (tk.keyword("\\")) {
      next();
      Expr e;
      e.kind = Expr::Lambda;
      e.loc = loc;
      while (!peek().keyword("->")) {
        if (at_end()) fail("unterminated lambda");
        e.pats.push_back(parse_apat());
      }
      next();
      e.args.push_back(parse_exp());
      return e;
    }
    if (tk.keyword("let")) {
      next();
      Expr e;
      e.kind = Expr::Let;
      e.loc = loc;
      e.binds = parse_bindings_block();
      expect_keyword("in");
      e.args.push_back(parse_exp());
      return e;
    }
    if (tk.keyword("if")) {
      next();
      Expr e;
      e.kind = Expr::If;
      e.loc = loc;
      e.args.push_back(parse_exp());
      accept_special(";");
      expect_keyword("then");
      e.args.push_back(parse_exp());
      accept_special(";");
      expect_keyword("else");
      e.args.push_back(parse_exp());
      return e;
    }
    if (tk.keyword("case")) {
      next();
      Expr e;
      e.kind = Expr::Case;
      e.loc = loc;
      e.args.push_back(parse_exp());
      expect_keyword("of");
      expect_special("{");
      while (!peek().special("}")) {
        if (accept_special(";")) continue;
        if (at_end()) fail("unterminated case alternatives");
        Alt a;
        a.loc = peek().loc;
        a.pat = parse_pattern();
        a.rhs = parse_rhs("->");
        e.alts.push_back(std::move(a));
        if (!peek().special("}")) expect_special(";");
      }
      next();
      return e;
    }
    if (tk.keyword("do")) {
      next();
      Expr e;
      e.kind = Expr::Do;
      e.loc = loc;
      expect_special("{");
      while (!peek().special("}")) {
        if (accept_special(";")) continue;
        if (at_end()) fail("unterminated do block");
        e.stmts.push_back(parse_stmt(true));
        if (!peek().special("}")) expect_special(";");
      }
      next();
      if (e.stmts.empty() || e.stmts.back().kind != Stmt::Exp)
        throw ParseError("the last statement in a do block must be an expression", loc);
      return e;
    }
    return parse_fexp();
  }

  bool starts_aexp(const Token& tk) const {
    return tk.kind == Tok::VarId || tk.kind == Tok::ConId || tk.kind == Tok::Integer || tk.kind == Tok::String ||
           tk.kind == Tok::Char || tk.kind == Tok::Float || tk.special("(") || tk.special("[");
  }

  Expr parse_fexp() {
    Expr e = parse_aexp_rec();
    while (starts_aexp(peek())) e = mk_app(std::move(e), parse_aexp_rec());
    return e;
  }

  Expr parse_aexp_rec() {
    Expr e = parse_aexp();
    while (peek().special("{") && !peek().implicit) {
      Loc loc = peek().loc;
      next();
      Expr r;
      r.loc = loc;
      if (e.kind == Expr::Con) {
        r.kind = Expr::RecCon;
        r.name = e.name;
      } else {
        r.kind = Expr::RecUpdate;
        r.args.push_back(std::move(e));
      }
      if (!peek().special("}")) {
        do {
          if (accept_keyword("..")) {
            if (r.kind != Expr::RecCon) fail("'..' in a record update");
            r.wildcard = true;
            continue;
          }
          const Token& f = next();
          if (f.kind != Tok::VarId) fail("expected a field name");
          r.fields.push_back(QualName{f.qual, f.text, Namespace::Value});
          if (accept_keyword("=")) r.args.push_back(parse_exp());
          else r.args.push_back(mk_var(local_name(f.text), f.loc));
        } while (accept_special(","));
      }
      expect_special("}");
      e = std::move(r);
    }
    return e;
  }

  Expr section_lambda(int kind, Expr body_fn(QualName, bool, Expr, Expr), Item op, Expr operand, Loc loc) {
    std::string v = "sec_" + std::to_string(sec_++) + "__";
    Expr lam;
    lam.kind = Expr::Lambda;
    lam.loc = loc;
    lam.section = kind;
    lam.pats.push_back(mk_pvar(v, loc));
    lam.args.push_back(body_fn(op.op, op.con, std::move(operand), mk_var(local_name(v), loc)));
    return lam;
  }

  static Expr left_body(QualName op, bool con, Expr operand, Expr v) {
    return mk_opapp(std::move(operand), std::move(op), con, std::move(v));
  }
  static Expr right_body(QualName op, bool con, Expr operand, Expr v) {
    return mk_opapp(std::move(v), std::move(op), con, std::move(operand));
  }

  Expr parse_aexp() {
    const Token& tk = peek();
    Loc loc = tk.loc;
    switch (tk.kind) {
      case Tok::VarId:
        check_ident(tk);
        next();
        return mk_var(name_of(tk, Namespace::Value), loc);
      case Tok::ConId:
        check_ident(tk);
        next();
        return mk_con(name_of(tk, Namespace::Constructor), loc);
      case Tok::Integer:
        next();
        return mk_lit(tk.text, loc);
      case Tok::String:
      case Tok::Char:
      case Tok::Float:
        throw Unsupported("only integer literals are supported", loc);
      default:
        break;
    }
    if (tk.special("(")) {
      next();
      if (accept_special(")")) return mk_con(QualName{"", "()", Namespace::Constructor}, loc);
      if (peek().special(",")) {
        size_t n = 1;
        while (accept_special(",")) ++n;
        expect_special(")");
        return mk_con(QualName{"", tuple_con(n), Namespace::Constructor}, loc);
      }
      if (op_follows()) {
        Item op;
        bool minus = peek().is(Tok::VarSym, "-") && peek().qual.empty();
        read_op(op);
        if (accept_special(")")) {
          return op.con ? mk_con(op.op, loc) : mk_var(op.op, loc);
        }
        if (!minus) {
          Expr operand = parse_exp();
          expect_special(")");
          return section_lambda(2, right_body, std::move(op), std::move(operand), loc);
        }
        i_ -= 1;  // `(- e)` is negation
      }
      Item trailing;
      Expr first = parse_infix(&trailing);
      if (trailing.is_op) {
        expect_special(")");
        return section_lambda(1, left_body, std::move(trailing), std::move(first), loc);
      }
      first = maybe_annot(std::move(first));
      if (accept_special(")")) return first;
      Expr tup;
      tup.kind = Expr::Tuple;
      tup.loc = loc;
      tup.args.push_back(std::move(first));
      while (accept_special(",")) tup.args.push_back(parse_exp());
      expect_special(")");
      return tup;
    }
    if (tk.special("[")) {
      next();
      if (accept_special("]")) return mk_con(QualName{"", "[]", Namespace::Constructor}, loc);
      Expr first = parse_exp();
      if (peek().keyword("..")) {
        next();
        Expr en;
        en.kind = Expr::EnumFrom;
        en.loc = loc;
        en.args.push_back(std::move(first));
        en.enum_parts = {false, false};
        if (!peek().special("]")) {
          en.args.push_back(parse_exp());
          en.enum_parts[1] = true;
        }
        expect_special("]");
        return en;
      }
      if (accept_keyword("|")) {
        Expr lc;
        lc.kind = Expr::ListComp;
        lc.loc = loc;
        lc.args.push_back(std::move(first));
        do {
          lc.stmts.push_back(parse_stmt(false));
        } while (accept_special(","));
        expect_special("]");
        return lc;
      }
      std::vector<Expr> elems;
      elems.push_back(std::move(first));
      while (accept_special(",")) {
        elems.push_back(parse_exp());
        if (elems.size() == 2 && peek().keyword("..")) {
          next();
          Expr en;
          en.kind = Expr::EnumFrom;
          en.loc = loc;
          en.args = std::move(elems);
          en.enum_parts = {true, false};
          if (!peek().special("]")) {
            en.args.push_back(parse_exp());
            en.enum_parts[1] = true;
          }
          expect_special("]");
          return en;
        }
      }
      expect_special("]");
      Expr l;
      l.kind = Expr::List;
      l.loc = loc;
      l.args = std::move(elems);
      return l;
    }
    fail("expected an expression");
  }

  // Do statement, list-comprehension qualifier, or guard.
  Stmt parse_stmt(bool in_do) {
    Stmt s;
    if (peek().keyword("let")) {
      size_t save = i_;
      next();
      s.kind = Stmt::Let;
      s.binds = parse_bindings_block();
      if (peek().keyword("in")) {
        i_ = save;
        s = Stmt{};
        s.kind = Stmt::Exp;
        s.expr = parse_exp();
      }
      return s;
    }
    if (ahead("<-", {"=", "->", "|", "then", "else", "of"})) {
      s.kind = Stmt::Bind;
      s.pat = parse_pattern();
      expect_keyword("<-");
      s.expr = parse_exp();
      return s;
    }
    s.kind = Stmt::Exp;
    s.expr = parse_exp();
    return s;
  }

  Rhs parse_rhs(std::string_view sep) {
    Rhs rhs;
    if (peek().keyword("|")) {
      while (accept_keyword("|")) {
        GuardedRhs g;
        do {
          g.guards.push_back(parse_stmt(false));
        } while (accept_special(","));
        expect_keyword(sep);
        g.body = parse_exp();
        rhs.grhss.push_back(std::move(g));
      }
    } else {
      expect_keyword(sep);
      GuardedRhs g;
      g.body = parse_exp();
      rhs.grhss.push_back(std::move(g));
    }
    if (accept_keyword("where")) rhs.where = parse_bindings_block();
    return rhs;
  }

  // ------------------------------------------------------------- bindings

  // `{ binding ; ... }`, consecutive equations of one function merged.
  std::vector<Binding> parse_bindings_block() {
    expect_special("{");
    std::vector<Binding> out;
    while (!peek().special("}")) {
      if (accept_special(";")) continue;
      if (at_end()) fail("unterminated binding group");
      if (peek().keyword("infixl") || peek().keyword("infixr") || peek().keyword("infix")) {
        while (!at_end() && !peek().special(";") && !peek().special("}")) next();
        continue;
      }
      Binding b = parse_binding();
      if (b.kind == Binding::Fun && !out.empty() && out.back().kind == Binding::Fun && out.back().name == b.name &&
          !b.eqs.empty() && !b.eqs.front().params.empty()) {
        for (auto& eq : b.eqs) out.back().eqs.push_back(std::move(eq));
      } else {
        out.push_back(std::move(b));
      }
      if (!peek().special("}")) expect_special(";");
    }
    next();
    for (const auto& b : out) check_arity(b);
    return out;
  }

  static void check_arity(const Binding& b) {
    if (b.kind != Binding::Fun) return;
    for (const auto& eq : b.eqs)
      if (eq.params.size() != b.eqs.front().params.size())
        throw ParseError("equations for '" + b.name.base + "' have different numbers of arguments", eq.loc);
  }

  bool is_signature() const { return ahead("::", {"=", "|", "<-", "->"}); }

  Binding parse_signature() {
    Binding b;
    b.kind = Binding::Sig;
    b.loc = peek().loc;
    do {
      const Token& tk = peek();
      if (tk.kind == Tok::VarId) {
        check_ident(tk);
        next();
        b.names.push_back(local_name(tk.text));
      } else if (tk.special("(") && is_op_token(peek(1)) && peek(2).special(")")) {
        next();
        b.names.push_back(local_name(next().text));
        next();
      } else {
        fail("expected a name in a type signature");
      }
    } while (accept_special(","));
    expect_keyword("::");
    b.sig = parse_qualtype();
    return b;
  }

  // Position of a top-level varop in the left-hand side, if the binding is an infix definition.
  std::optional<size_t> infix_lhs_op() const {
    int depth = 0;
    for (size_t j = i_; j < end_; ++j) {
      const Token& tk = t_[j];
      if (tk.kind == Tok::End) break;
      if (tk.kind == Tok::Special) {
        if (tk.text == "(" || tk.text == "[" || tk.text == "{") ++depth;
        else if (tk.text == ")" || tk.text == "]" || tk.text == "}") --depth;
        else if (depth == 0 && tk.text == ";") break;
        if (depth == 0 && tk.text == "`" && j + 2 < end_ && t_[j + 1].kind == Tok::VarId) return j;
        if (depth < 0) break;
        continue;
      }
      if (depth != 0) continue;
      if (tk.keyword("=") || tk.keyword("|")) break;
      if (tk.kind == Tok::VarSym && tk.qual.empty() && !(tk.text == "!" && j == i_)) return j;
    }
    return std::nullopt;
  }

  Binding parse_binding() {
    if (is_signature()) return parse_signature();
    Binding b;
    b.loc = peek().loc;
    Equation eq;
    eq.loc = b.loc;
    if (auto opi = infix_lhs_op()) {
      size_t stop = *opi;
      P left(t_, i_, stop, fix_, sec_);
      Pattern lp = left.parse_pattern();
      if (!left.at_end()) left.fail("unexpected token in infix definition");
      i_ = stop;
      std::string name;
      if (peek().special("`")) {
        next();
        name = next().text;
        next();
      } else {
        name = next().text;
      }
      Pattern rp = parse_pattern();
      b.kind = Binding::Fun;
      b.infix = true;
      b.name = local_name(name);
      eq.params.push_back(std::move(lp));
      eq.params.push_back(std::move(rp));
      while (starts_apat(peek())) eq.params.push_back(parse_apat());
    } else if (peek().kind == Tok::VarId && peek().qual.empty()) {
      check_ident(peek());
      b.kind = Binding::Fun;
      b.name = local_name(next().text);
      while (starts_apat(peek())) eq.params.push_back(parse_apat());
    } else if (peek().special("(") && is_op_token(peek(1)) && peek(1).kind == Tok::VarSym && peek(2).special(")")) {
      next();
      b.kind = Binding::Fun;
      b.name = local_name(next().text);
      next();
      while (starts_apat(peek())) eq.params.push_back(parse_apat());
    } else {
      b.kind = Binding::Pat;
      b.pat = parse_pattern();
      b.rhs = parse_rhs("=");
      return b;
    }
    eq.rhs = parse_rhs("=");
    b.eqs.push_back(std::move(eq));
    return b;
  }

  // --------------------------------------------------------- declarations

  DataDecl parse_data() {
    DataDecl d;
    d.newtype = next().text == "newtype";
    if (ahead("=>", {"="})) {
      parse_btype();
      expect_keyword("=>");
    }
    const Token& name = next();
    if (name.kind != Tok::ConId) fail("expected a type name");
    check_ident(name);
    d.name = QualName{"", name.text, Namespace::Type};
    while (peek().kind == Tok::VarId) d.params.push_back(next().text);
    if (accept_keyword("=")) {
      do {
        d.cons.push_back(parse_condecl());
      } while (accept_keyword("|"));
    }
    if (accept_keyword("deriving")) {
      if (accept_special("(")) {
        if (!peek().special(")")) {
          do {
            const Token& c = next();
            if (c.kind != Tok::ConId) fail("expected a class name");
            d.deriving.push_back(name_of(c, Namespace::Class));
          } while (accept_special(","));
        }
        expect_special(")");
      } else {
        const Token& c = next();
        if (c.kind != Tok::ConId) fail("expected a class name");
        d.deriving.push_back(name_of(c, Namespace::Class));
      }
    }
    return d;
  }

  ConDecl parse_condecl() {
    ConDecl c;
    c.loc = peek().loc;
    if (peek().kind == Tok::VarId && peek().text == "forall")
      throw Unsupported("existential constructors are not supported", c.loc);
    if (peek().kind == Tok::ConId && !peek().qual.empty()) fail("qualified constructor name");
    if (peek().kind == Tok::ConId && peek(1).special("{") && !peek(1).implicit) {
      check_ident(peek());
      c.name = QualName{"", next().text, Namespace::Constructor};
      next();
      if (!peek().special("}")) {
        do {
          std::vector<std::string> names;
          do {
            const Token& f = next();
            if (f.kind != Tok::VarId) fail("expected a field name");
            check_ident(f);
            names.push_back(f.text);
          } while (accept_special(","));
          expect_keyword("::");
          if (peek().is(Tok::VarSym, "!")) next();
          Type ty = parse_type();
          for (auto& n : names) {
            if (std::find(c.fields.begin(), c.fields.end(), n) != c.fields.end())
              throw ParseError("duplicate field '" + n + "'", c.loc);
            c.fields.push_back(n);
            c.args.push_back(ty);
          }
        } while (accept_special(","));
      }
      expect_special("}");
      return c;
    }
    if (peek().special("(") && peek(1).kind == Tok::ConSym && peek(2).special(")")) {
      next();
      c.name = QualName{"", next().text, Namespace::Constructor};
      next();
      while (starts_atype(peek()) || peek().is(Tok::VarSym, "!")) {
        if (peek().is(Tok::VarSym, "!")) next();
        c.args.push_back(parse_atype());
      }
      return c;
    }
    if (peek().kind == Tok::ConId) {
      const Token& n = peek();
      // Either `C t1 t2` or an infix constructor whose left operand starts with a type constructor.
      size_t save = i_;
      next();
      std::vector<Type> args;
      while (starts_atype(peek()) || peek().is(Tok::VarSym, "!")) {
        if (peek().is(Tok::VarSym, "!")) next();
        args.push_back(parse_atype());
      }
      if (peek().kind != Tok::ConSym && !peek().special("`")) {
        check_ident(n);
        c.name = QualName{"", n.text, Namespace::Constructor};
        c.args = std::move(args);
        return c;
      }
      i_ = save;
    }
    Type l = parse_btype(true);
    std::string op;
    if (peek().kind == Tok::ConSym) {
      op = next().text;
    } else if (peek().special("`")) {
      next();
      op = next().text;
      expect_special("`");
    } else {
      fail("expected a constructor");
    }
    Type r = parse_btype(true);
    c.name = QualName{"", op, Namespace::Constructor};
    c.args.push_back(std::move(l));
    c.args.push_back(std::move(r));
    return c;
  }

  TypeSynonym parse_synonym() {
    next();
    TypeSynonym s;
    const Token& name = next();
    if (name.kind != Tok::ConId) {
      if (name.kind == Tok::VarId && (name.text == "family" || name.text == "instance"))
        throw Unsupported("type families are not supported", name.loc);
      fail("expected a type name");
    }
    check_ident(name);
    s.name = QualName{"", name.text, Namespace::Type};
    while (peek().kind == Tok::VarId) s.params.push_back(next().text);
    expect_keyword("=");
    s.rhs = parse_type();
    return s;
  }

  ClassDecl parse_class() {
    Loc loc = next().loc;
    ClassDecl c;
    Type head = parse_btype();
    if (accept_keyword("=>")) {
      c.supers = to_context(head);
      head = parse_btype();
    }
    if (head.kind != Type::App || head.args[0].kind != Type::Con || head.args[1].kind != Type::Var)
      throw Unsupported("only single-parameter type classes are supported", loc);
    c.name = head.args[0].con;
    c.name.ns = Namespace::Class;
    c.param = head.args[1].var;
    if (peek().keyword("|")) throw Unsupported("functional dependencies are not supported", loc);
    if (accept_keyword("where")) {
      for (auto& b : parse_bindings_block()) {
        if (b.kind == Binding::Sig) c.sigs.push_back(std::move(b));
        else if (b.kind == Binding::Fun) c.defaults.push_back(std::move(b));
        else throw Unsupported("pattern bindings in class declarations are not supported", b.loc);
      }
    }
    return c;
  }

  InstanceDecl parse_instance() {
    Loc loc = next().loc;
    InstanceDecl d;
    Type head = parse_btype();
    if (accept_keyword("=>")) {
      d.context = to_context(head);
      head = parse_btype();
    }
    if (head.kind != Type::App || head.args[0].kind != Type::Con)
      throw Unsupported("unsupported instance head", loc);
    if (head.args[0].kind == Type::App) throw Unsupported("multi-parameter instances are not supported", loc);
    d.cls = head.args[0].con;
    d.cls.ns = Namespace::Class;
    d.head = head.args[1];
    if (accept_keyword("where")) {
      for (auto& b : parse_bindings_block()) {
        if (b.kind == Binding::Fun) d.methods.push_back(std::move(b));
        else if (b.kind == Binding::Pat) throw Unsupported("pattern bindings in instances are not supported", b.loc);
      }
    }
    return d;
  }

  Import parse_import() {
    Import im;
    im.loc = next().loc;
    if (peek().is(Tok::VarId, "qualified")) next(), im.qualified = true;
    const Token& m = next();
    if (m.kind != Tok::ConId) fail("expected a module name");
    im.module = m.full();
    if (peek().is(Tok::VarId, "as")) {
      next();
      im.alias = next().full();
    }
    if (peek().is(Tok::VarId, "hiding")) next(), im.hiding = true;
    if (accept_special("(")) {
      im.has_list = true;
      while (!peek().special(")")) {
        if (accept_special(",")) continue;
        if (at_end()) fail("unterminated import list");
        ImportItem item;
        if (peek().special("(")) {
          next();
          item.name = next().text;
          expect_special(")");
        } else {
          if (peek().is(Tok::Keyword, "type")) next();
          item.name = next().text;
        }
        if (accept_special("(")) {
          while (!peek().special(")")) {
            if (accept_special(",")) continue;
            if (accept_keyword("..")) {
              item.all = true;
              continue;
            }
            if (peek().special("(")) {
              next();
              item.subs.push_back(next().text);
              expect_special(")");
            } else {
              item.subs.push_back(next().text);
            }
          }
          next();
        }
        im.items.push_back(std::move(item));
      }
      next();
    }
    if (!at_end()) fail("unexpected token after import");
    return im;
  }

  Decl parse_topdecl() {
    Decl d;
    d.loc = peek().loc;
    const Token& tk = peek();
    if (tk.keyword("data") || tk.keyword("newtype")) {
      d.v = parse_data();
    } else if (tk.keyword("type")) {
      d.v = parse_synonym();
    } else if (tk.keyword("class")) {
      d.v = parse_class();
    } else if (tk.keyword("instance")) {
      d.v = parse_instance();
    } else if (tk.keyword("default")) {
      throw Unsupported("default declarations are not supported", tk.loc);
    } else if (is_signature()) {
      Binding b = parse_signature();
      TypeSig s;
      s.names = std::move(b.names);
      s.type = std::move(b.sig);
      d.v = std::move(s);
    } else {
      Binding b = parse_binding();
      if (b.kind == Binding::Pat) throw Unsupported("top-level pattern bindings are not supported", d.loc);
      d.v = FunBind{std::move(b)};
    }
    if (!at_end()) fail("unexpected token");
    return d;
  }

 private:
  const std::vector<Token>& t_;
  size_t i_;
  size_t end_;
  const std::map<std::string, Fixity>& fix_;
  int& sec_;
  Token eof_;
};

void collect_fixities(const std::vector<Token>& toks, std::map<std::string, Fixity>& out) {
  for (size_t i = 0; i < toks.size(); ++i) {
    const Token& tk = toks[i];
    if (!(tk.keyword("infixl") || tk.keyword("infixr") || tk.keyword("infix"))) continue;
    Fixity f;
    f.assoc = tk.text == "infixl" ? Assoc::Left : tk.text == "infixr" ? Assoc::Right : Assoc::None;
    size_t j = i + 1;
    if (j < toks.size() && toks[j].kind == Tok::Integer) f.prec = std::stoi(toks[j++].text);
    for (; j < toks.size(); ++j) {
      const Token& o = toks[j];
      if (is_op_token(o)) out[o.text] = f;
      else if (o.special("`") && j + 2 < toks.size()) out[toks[++j].text] = f, ++j;
      else if (!o.special(",")) break;
    }
  }
}

std::string guess_name(const std::vector<Token>& toks, size_t b, size_t e, Namespace& ns) {
  ns = Namespace::Value;
  if (b >= e) return "unnamed";
  const Token& first = toks[b];
  if (first.keyword("data") || first.keyword("newtype") || first.keyword("type") || first.keyword("class")) {
    ns = first.keyword("class") ? Namespace::Class : Namespace::Type;
    for (size_t j = b + 1; j < e; ++j) {
      if (toks[j].keyword("=>")) {
        for (size_t k = j + 1; k < e; ++k)
          if (toks[k].kind == Tok::ConId) return toks[k].text;
      }
    }
    for (size_t j = b + 1; j < e; ++j)
      if (toks[j].kind == Tok::ConId) return toks[j].text;
    return "unnamed";
  }
  if (first.keyword("instance")) {
    std::vector<std::string> cons;
    size_t start = b + 1;
    for (size_t j = b + 1; j < e; ++j)
      if (toks[j].keyword("=>")) start = j + 1;
    std::string head;
    for (size_t j = start; j < e && cons.size() < 2; ++j) {
      if (toks[j].keyword("where")) break;
      if (toks[j].kind == Tok::ConId) cons.push_back(toks[j].text);
      else if (toks[j].special("[") && cons.size() == 1) cons.push_back("list");
    }
    if (cons.size() == 2) return "instance_" + cons[0] + "_" + cons[1];
    return cons.empty() ? "instance" : "instance_" + cons[0];
  }
  int depth = 0;
  for (size_t j = b; j < e; ++j) {
    const Token& tk = toks[j];
    if (tk.special("(") || tk.special("[")) ++depth;
    if (tk.special(")") || tk.special("]")) --depth;
    if (tk.keyword("=") || tk.keyword("|") || tk.keyword("::")) break;
    if (depth == 0 && tk.kind == Tok::VarSym && j > b) return tk.text;
    if (depth == 0 && tk.special("`") && j + 1 < e) return toks[j + 1].text;
  }
  if (first.kind == Tok::VarId) return first.text;
  if (first.special("(") && b + 1 < e && is_op_token(toks[b + 1])) return toks[b + 1].text;
  return "unnamed";
}

}  // namespace

SurfaceModule parse_module(const std::vector<Token>& toks) {
  SurfaceModule m;
  int sec = 0;
  size_t n = toks.size();
  size_t i = 0;
  std::map<std::string, Fixity> none;
  if (i < n && toks[i].keyword("module")) {
    ++i;
    if (i >= n || toks[i].kind != Tok::ConId) throw ParseError("expected a module name", toks[std::min(i, n - 1)].loc);
    m.name = toks[i].full();
    ++i;
    if (i < n && toks[i].special("(")) {
      P p(toks, i, n, none, sec);
      i = p.matching(i) + 1;
    }
    if (i >= n || !toks[i].keyword("where")) throw ParseError("expected 'where' after module header", toks[std::min(i, n - 1)].loc);
    ++i;
  } else {
    m.name = "Main";
  }
  if (i >= n || !toks[i].special("{")) throw ParseError("expected module body", toks[std::min(i, n - 1)].loc);
  size_t close;
  {
    P p(toks, i, n, none, sec);
    close = p.matching(i);
  }
  if (close + 1 < n && toks[close + 1].kind != Tok::End)
    throw ParseError("unexpected tokens after module body", toks[close + 1].loc);
  collect_fixities(toks, m.fixities);

  std::vector<std::pair<size_t, size_t>> slices;
  {
    int depth = 0;
    size_t start = i + 1;
    for (size_t j = i + 1; j < close; ++j) {
      const Token& tk = toks[j];
      if (tk.kind == Tok::Special) {
        if (tk.text == "(" || tk.text == "[" || tk.text == "{") ++depth;
        else if (tk.text == ")" || tk.text == "]" || tk.text == "}") --depth;
        else if (depth == 0 && tk.text == ";") {
          slices.emplace_back(start, j);
          start = j + 1;
        }
      }
    }
    slices.emplace_back(start, close);
  }

  for (auto [b, e] : slices) {
    if (b >= e) continue;
    const Token& first = toks[b];
    if (first.keyword("infixl") || first.keyword("infixr") || first.keyword("infix")) continue;
    if (first.keyword("import")) {
      P p(toks, b, e, m.fixities, sec);
      m.imports.push_back(p.parse_import());
      continue;
    }
    int sec_before = sec;
    try {
      P p(toks, b, e, m.fixities, sec);
      Decl d = p.parse_topdecl();
      if (auto* fb = std::get_if<FunBind>(&d.v)) {
        if (!m.decls.empty()) {
          if (auto* prev = std::get_if<UnsupportedDecl>(&m.decls.back().v);
              prev && prev->ns == Namespace::Value && prev->name == fb->bind.name.base) {
            prev->raw += "; " + print_binding(fb->bind);
            continue;
          }
          if (auto* prev = std::get_if<FunBind>(&m.decls.back().v);
              prev && prev->bind.name == fb->bind.name && !fb->bind.eqs.front().params.empty()) {
            if (prev->bind.eqs.front().params.size() != fb->bind.eqs.front().params.size()) {
              UnsupportedDecl u{fb->bind.name.base, Namespace::Value, "",
                                "equations have different numbers of arguments"};
              m.decls.back().v = std::move(u);
              continue;
            }
            for (auto& eq : fb->bind.eqs) prev->bind.eqs.push_back(std::move(eq));
            continue;
          }
        }
      }
      m.decls.push_back(std::move(d));
    } catch (const Error& err) {
      sec = sec_before;
      UnsupportedDecl u;
      u.name = guess_name(toks, b, e, u.ns);
      std::vector<Token> slice;
      for (size_t j = b; j < e; ++j)
        if (!toks[j].implicit) slice.push_back(toks[j]);
      u.raw = render_tokens(slice);
      u.reason = err.message();
      // Equations of a function whose earlier clause failed join the same unsupported declaration.
      if (!m.decls.empty()) {
        if (auto* prev = std::get_if<UnsupportedDecl>(&m.decls.back().v); prev && prev->name == u.name) {
          prev->raw += "; " + u.raw;
          continue;
        }
        if (auto* prev = std::get_if<FunBind>(&m.decls.back().v); prev && prev->bind.name.base == u.name) {
          u.raw = print_binding(prev->bind) + "; " + u.raw;
          m.decls.back().v = std::move(u);
          continue;
        }
      }
      m.decls.push_back(Decl{std::move(u), first.loc});
    }
  }
  return m;
}

SurfaceModule parse_module_source(std::string_view source) { return parse_module(resolve_layout(source)); }

std::vector<Binding> parse_bindings_source(std::string_view source) {
  auto toks = resolve_layout(source);
  SurfaceModule probe;
  collect_fixities(toks, probe.fixities);
  int sec = 0;
  P p(toks, 0, toks.size(), probe.fixities, sec);
  auto out = p.parse_bindings_block();
  if (!p.at_end()) p.fail("unexpected token");
  return out;
}

Expr parse_expr_source(std::string_view source) {
  auto toks = lex(source);
  std::map<std::string, Fixity> none;
  int sec = 0;
  // Lay out as if the expression were the body of a binding.
  std::vector<Token> wrapped;
  Token v;
  v.kind = Tok::VarId;
  v.text = "it";
  v.loc = {1, 1};
  v.bol = true;
  Token eq;
  eq.kind = Tok::Keyword;
  eq.text = "=";
  eq.loc = {1, 1};
  wrapped.push_back(v);
  wrapped.push_back(eq);
  for (auto& t : toks) {
    if (t.kind != Tok::End) t.loc.col += 2;
    t.bol = t.bol && t.loc.line != 1;
    wrapped.push_back(t);
  }
  auto laid = resolve_layout(std::move(wrapped));
  P p(laid, 3, laid.size() - 2, none, sec);
  Expr e = p.parse_exp();
  if (!p.at_end()) p.fail("unexpected token");
  return e;
}

QualType parse_type_source(std::string_view source) {
  auto toks = lex(source);
  std::map<std::string, Fixity> none;
  int sec = 0;
  P p(toks, 0, toks.size(), none, sec);
  QualType t = p.parse_qualtype();
  if (!p.at_end()) p.fail("unexpected token");
  return t;
}

}  // namespace totalizer
