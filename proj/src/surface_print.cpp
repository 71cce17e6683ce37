// SPDX-License-Identifier: Apache-2.0
#include "totalizer/parser.hpp"

#include <sstream>

namespace totalizer {

namespace {

// Built-in syntax such as `:` and `[]` is never written qualified.
std::string name_text(const QualName& q) {
  bool builtin = q.base == ":" || q.base == "[]" || q.base == "->" || (!q.base.empty() && q.base.front() == '(');
  return q.module.empty() || builtin ? q.base : q.module + "." + q.base;
}

// Name in prefix position: operators are parenthesized.
std::string prefix_name(const QualName& q) {
  if (q.base == "[]" || q.base == "()" || (q.base.size() > 1 && q.base.front() == '(')) return q.base;
  return is_symbolic(q.base) ? "(" + name_text(q) + ")" : name_text(q);
}

// Name in infix position: identifiers are backticked.
std::string infix_name(const QualName& q) { return is_symbolic(q.base) ? name_text(q) : "`" + name_text(q) + "`"; }

bool atomic_type(const Type& t) {
  return t.kind == Type::Var || t.kind == Type::Con || t.kind == Type::List || t.kind == Type::Tuple ||
         t.kind == Type::Unit;
}

std::string type_text(const Type& t);

std::string atype(const Type& t) { return atomic_type(t) ? type_text(t) : "(" + type_text(t) + ")"; }

std::string type_text(const Type& t) {
  switch (t.kind) {
    case Type::Var:
      return t.var;
    case Type::Con:
      if (t.con.base == "->") return "(->)";
      return name_text(t.con);
    case Type::Unit:
      return "()";
    case Type::List:
      return "[" + type_text(t.args[0]) + "]";
    case Type::Tuple: {
      std::string s = "(";
      for (size_t i = 0; i < t.args.size(); ++i) s += (i ? ", " : "") + type_text(t.args[i]);
      return s + ")";
    }
    case Type::App: {
      const Type& f = t.args[0];
      std::string fs = f.kind == Type::App ? type_text(f) : atype(f);
      return fs + " " + atype(t.args[1]);
    }
    case Type::Fun: {
      const Type& a = t.args[0];
      std::string as = a.kind == Type::Fun ? "(" + type_text(a) + ")" : type_text(a);
      return as + " -> " + type_text(t.args[1]);
    }
  }
  return "";
}

std::string context_text(const std::vector<Constraint>& ctx) {
  if (ctx.empty()) return "";
  std::string s = "(";
  for (size_t i = 0; i < ctx.size(); ++i) s += (i ? ", " : "") + name_text(ctx[i].cls) + " " + atype(ctx[i].type);
  return s + ") => ";
}

bool atomic_pattern(const Pattern& p) {
  switch (p.kind) {
    case Pattern::Con:
      return p.args.empty();
    case Pattern::Lit:
      return p.lit.empty() || p.lit[0] != '-';
    case Pattern::Rec:
    case Pattern::Var:
    case Pattern::Wild:
    case Pattern::As:
    case Pattern::Tuple:
    case Pattern::List:
    case Pattern::Lazy:
      return true;
  }
  return true;
}

std::string pattern_text(const Pattern& p);

std::string apat(const Pattern& p) { return atomic_pattern(p) ? pattern_text(p) : "(" + pattern_text(p) + ")"; }

std::string pattern_text(const Pattern& p) {
  switch (p.kind) {
    case Pattern::Var:
      return p.name.base;
    case Pattern::Wild:
      return "_";
    case Pattern::Lit:
      return p.lit;
    case Pattern::As:
      return p.name.base + "@" + apat(p.args[0]);
    case Pattern::Lazy:
      return "~" + apat(p.args[0]);
    case Pattern::Con: {
      if (is_symbolic(p.name.base) && p.args.size() == 2)
        return apat(p.args[0]) + " " + infix_name(p.name) + " " + apat(p.args[1]);
      std::string s = prefix_name(p.name);
      for (const auto& a : p.args) s += " " + apat(a);
      return s;
    }
    case Pattern::Rec: {
      std::string s = prefix_name(p.name) + " {";
      for (size_t i = 0; i < p.fields.size(); ++i)
        s += (i ? ", " : "") + name_text(p.fields[i]) + " = " + pattern_text(p.args[i]);
      if (p.wildcard) s += p.fields.empty() ? ".." : ", ..";
      return s + "}";
    }
    case Pattern::Tuple:
    case Pattern::List: {
      std::string s = p.kind == Pattern::Tuple ? "(" : "[";
      for (size_t i = 0; i < p.args.size(); ++i) s += (i ? ", " : "") + pattern_text(p.args[i]);
      return s + (p.kind == Pattern::Tuple ? ")" : "]");
    }
  }
  return "";
}

class Printer {
 public:
  std::string expr(const Expr& e) {
    switch (e.kind) {
      case Expr::Var:
      case Expr::Con:
        return prefix_name(e.name);
      case Expr::Lit:
        return e.lit;
      case Expr::Bottom:
        return "undefined";
      case Expr::App: {
        const Expr& f = e.args[0];
        std::string fs = f.kind == Expr::App ? expr(f) : aexp(f);
        return fs + " " + aexp(e.args[1]);
      }
      case Expr::OpApp:
        return aexp(e.args[0]) + " " + infix_name(e.name) + " " + aexp(e.args[1]);
      case Expr::Neg:
        return "(- " + aexp(e.args[0]) + ")";
      case Expr::Lambda: {
        if (e.section == 1) {
          const Expr& b = e.args[0];
          return "(" + aexp(b.args[0]) + " " + infix_name(b.name) + ")";
        }
        if (e.section == 2) {
          const Expr& b = e.args[0];
          return "(" + infix_name(b.name) + " " + aexp(b.args[1]) + ")";
        }
        std::string s = "\\";
        for (const auto& p : e.pats) s += apat(p) + " ";
        return s + "-> " + expr(e.args[0]);
      }
      case Expr::Let:
        return "let " + binds(e.binds) + " in " + expr(e.args[0]);
      case Expr::If:
        return "if " + expr(e.args[0]) + " then " + expr(e.args[1]) + " else " + expr(e.args[2]);
      case Expr::Case: {
        std::string s = "case " + expr(e.args[0]) + " of {";
        for (size_t i = 0; i < e.alts.size(); ++i)
          s += (i ? "; " : " ") + pattern_text(e.alts[i].pat) + rhs(e.alts[i].rhs, "->");
        return s + " }";
      }
      case Expr::Do: {
        std::string s = "do {";
        for (size_t i = 0; i < e.stmts.size(); ++i) s += (i ? "; " : " ") + stmt(e.stmts[i]);
        return s + " }";
      }
      case Expr::ListComp: {
        std::string s = "[" + expr(e.args[0]) + " | ";
        for (size_t i = 0; i < e.stmts.size(); ++i) s += (i ? ", " : "") + stmt(e.stmts[i]);
        return s + "]";
      }
      case Expr::RecCon:
      case Expr::RecUpdate: {
        bool con = e.kind == Expr::RecCon;
        std::string s = con ? prefix_name(e.name) : aexp(e.args[0]);
        s += " {";
        size_t off = con ? 0 : 1;
        for (size_t i = 0; i < e.fields.size(); ++i)
          s += (i ? ", " : "") + name_text(e.fields[i]) + " = " + expr(e.args[i + off]);
        if (e.wildcard) s += e.fields.empty() ? ".." : ", ..";
        return s + "}";
      }
      case Expr::Tuple:
      case Expr::List: {
        std::string s = e.kind == Expr::Tuple ? "(" : "[";
        for (size_t i = 0; i < e.args.size(); ++i) s += (i ? ", " : "") + expr(e.args[i]);
        return s + (e.kind == Expr::Tuple ? ")" : "]");
      }
      case Expr::EnumFrom: {
        bool has_then = !e.enum_parts.empty() && e.enum_parts[0];
        bool has_to = e.enum_parts.size() > 1 && e.enum_parts[1];
        size_t k = 0;
        std::string s = "[" + expr(e.args[k++]);
        if (has_then) s += ", " + expr(e.args[k++]);
        s += " ..";
        if (has_to) s += " " + expr(e.args[k++]);
        return s + "]";
      }
      case Expr::TypeAnnot:
        return aexp(e.args[0]) + " :: " + context_text(e.type.context) + type_text(e.type.type);
    }
    return "";
  }

  std::string aexp(const Expr& e) {
    switch (e.kind) {
      case Expr::Var:
      case Expr::Con:
      case Expr::Lit:
      case Expr::Tuple:
      case Expr::List:
      case Expr::EnumFrom:
      case Expr::ListComp:
      case Expr::RecCon:
      case Expr::Neg:
        return expr(e);
      case Expr::Lambda:
        if (e.section) return expr(e);
        break;
      default:
        break;
    }
    return "(" + expr(e) + ")";
  }

  std::string stmt(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Exp:
        return expr(s.expr);
      case Stmt::Bind:
        return pattern_text(s.pat) + " <- " + expr(s.expr);
      case Stmt::Let:
        return "let " + binds(s.binds);
    }
    return "";
  }

  std::string rhs(const Rhs& r, const std::string& sep) {
    std::string s;
    for (const auto& g : r.grhss) {
      if (g.guards.empty()) {
        s += " " + sep + " " + expr(g.body);
        continue;
      }
      s += " |";
      for (size_t i = 0; i < g.guards.size(); ++i) s += (i ? ", " : " ") + stmt(g.guards[i]);
      s += " " + sep + " " + expr(g.body);
    }
    if (!r.where.empty()) s += " where " + binds(r.where);
    return s;
  }

  std::string binds(const std::vector<Binding>& bs) {
    std::string s = "{";
    for (size_t i = 0; i < bs.size(); ++i) s += (i ? "; " : " ") + binding(bs[i]);
    return s + " }";
  }

  std::string binding(const Binding& b) {
    switch (b.kind) {
      case Binding::Sig: {
        std::string s;
        for (size_t i = 0; i < b.names.size(); ++i) s += (i ? ", " : "") + prefix_name(b.names[i]);
        return s + " :: " + context_text(b.sig.context) + type_text(b.sig.type);
      }
      case Binding::Pat:
        return pattern_text(b.pat) + rhs(b.rhs, "=");
      case Binding::Fun: {
        std::string s;
        for (size_t i = 0; i < b.eqs.size(); ++i) {
          const Equation& eq = b.eqs[i];
          if (i) s += "; ";
          if (b.infix && eq.params.size() >= 2) {
            s += apat(eq.params[0]) + " " + infix_name(b.name) + " " + apat(eq.params[1]);
            for (size_t k = 2; k < eq.params.size(); ++k) s += " " + apat(eq.params[k]);
          } else {
            s += prefix_name(b.name);
            for (const auto& p : eq.params) s += " " + apat(p);
          }
          s += rhs(eq.rhs, "=");
        }
        return s;
      }
    }
    return "";
  }

  std::string decl(const Decl& d) {
    return std::visit(
        [&](const auto& x) -> std::string {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, DataDecl>) {
            std::string s = (x.newtype ? "newtype " : "data ") + x.name.base;
            for (const auto& p : x.params) s += " " + p;
            for (size_t i = 0; i < x.cons.size(); ++i) {
              const ConDecl& c = x.cons[i];
              s += i ? " | " : " = ";
              s += prefix_name(c.name);
              if (!c.fields.empty()) {
                s += " {";
                for (size_t k = 0; k < c.fields.size(); ++k)
                  s += (k ? ", " : " ") + c.fields[k] + " :: " + type_text(c.args[k]);
                s += " }";
              } else {
                for (const auto& a : c.args) s += " " + atype(a);
              }
            }
            if (!x.deriving.empty()) {
              s += " deriving (";
              for (size_t i = 0; i < x.deriving.size(); ++i) s += (i ? ", " : "") + name_text(x.deriving[i]);
              s += ")";
            }
            return s;
          } else if constexpr (std::is_same_v<T, TypeSynonym>) {
            std::string s = "type " + x.name.base;
            for (const auto& p : x.params) s += " " + p;
            return s + " = " + type_text(x.rhs);
          } else if constexpr (std::is_same_v<T, ClassDecl>) {
            std::string s = "class " + context_text(x.supers) + x.name.base + " " + x.param;
            std::vector<Binding> body = x.sigs;
            body.insert(body.end(), x.defaults.begin(), x.defaults.end());
            if (!body.empty()) s += " where " + binds(body);
            return s;
          } else if constexpr (std::is_same_v<T, InstanceDecl>) {
            std::string s = "instance " + context_text(x.context) + name_text(x.cls) + " " + atype(x.head);
            if (!x.methods.empty()) s += " where " + binds(x.methods);
            return s;
          } else if constexpr (std::is_same_v<T, TypeSig>) {
            std::string s;
            for (size_t i = 0; i < x.names.size(); ++i) s += (i ? ", " : "") + prefix_name(x.names[i]);
            return s + " :: " + context_text(x.type.context) + type_text(x.type.type);
          } else if constexpr (std::is_same_v<T, FunBind>) {
            return binding(x.bind);
          } else {
            return x.raw;
          }
        },
        d.v);
  }
};

const char* assoc_keyword(Assoc a) {
  switch (a) {
    case Assoc::Left:
      return "infixl";
    case Assoc::Right:
      return "infixr";
    case Assoc::None:
      return "infix";
  }
  return "infix";
}

}  // namespace

std::string print_type(const Type& t) { return type_text(t); }
std::string print_qualtype(const QualType& t) { return context_text(t.context) + type_text(t.type); }
std::string print_pattern(const Pattern& p) { return pattern_text(p); }
std::string print_expr(const Expr& e) { return Printer{}.expr(e); }
std::string print_binding(const Binding& b) { return Printer{}.binding(b); }

std::string print_module(const SurfaceModule& m) {
  Printer pr;
  std::ostringstream os;
  os << "module " << m.name << " where {\n";
  bool first = true;
  auto sep = [&] {
    if (!first) os << ";\n";
    first = false;
  };
  for (const auto& [op, f] : m.fixities) {
    sep();
    os << assoc_keyword(f.assoc) << " " << f.prec << " " << (is_symbolic(op) ? op : "`" + op + "`");
  }
  for (const auto& im : m.imports) {
    sep();
    os << "import " << (im.qualified ? "qualified " : "") << im.module;
    if (!im.alias.empty()) os << " as " << im.alias;
    if (im.hiding) os << " hiding";
    if (im.has_list) {
      os << " (";
      for (size_t i = 0; i < im.items.size(); ++i) {
        const auto& it = im.items[i];
        os << (i ? ", " : "") << (is_symbolic(it.name) ? "(" + it.name + ")" : it.name);
        if (it.all) {
          os << "(..)";
        } else if (!it.subs.empty()) {
          os << "(";
          for (size_t k = 0; k < it.subs.size(); ++k) os << (k ? ", " : "") << it.subs[k];
          os << ")";
        }
      }
      os << ")";
    }
  }
  for (const auto& d : m.decls) {
    sep();
    os << pr.decl(d);
  }
  os << "\n}\n";
  return os.str();
}

}  // namespace totalizer
