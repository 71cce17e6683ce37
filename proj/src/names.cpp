// SPDX-License-Identifier: Apache-2.0
#include "totalizer/names.hpp"

#include <cctype>

#include "totalizer/edits.hpp"

namespace totalizer {

std::string z_encode(std::string_view op) {
  std::string out = "op_";
  for (char c : op) {
    switch (c) {
      case '&': out += "za"; break;
      case '|': out += "zb"; break;
      case '^': out += "zc"; break;
      case '$': out += "zd"; break;
      case '=': out += "ze"; break;
      case '>': out += "zg"; break;
      case '#': out += "zh"; break;
      case '.': out += "zi"; break;
      case '<': out += "zl"; break;
      case '-': out += "zm"; break;
      case '!': out += "zn"; break;
      case '+': out += "zp"; break;
      case '\'': out += "zq"; break;
      case '\\': out += "zr"; break;
      case '/': out += "zs"; break;
      case '*': out += "zt"; break;
      case '_': out += "zu"; break;
      case '%': out += "zv"; break;
      case ':': out += "ZC"; break;
      case '(': out += "ZL"; break;
      case ')': out += "ZR"; break;
      case '[': out += "ZM"; break;
      case ']': out += "ZN"; break;
      case 'z': out += "zz"; break;
      case 'Z': out += "ZZ"; break;
      default:
        throw EncodeError("character '" + std::string(1, c) + "' in operator '" + std::string(op) +
                          "' has no Z-encoding");
    }
  }
  return out + "__";
}

bool is_reserved(const std::string& name) {
  static const std::set<std::string> words = {
      "as",     "at",      "cofix",   "else",     "end",     "exists",   "exists2", "fix",      "for",
      "forall", "fun",     "if",      "IF",       "in",      "let",      "match",   "mod",      "Prop",
      "return", "Set",     "SProp",   "struct",   "then",    "Type",     "using",   "where",    "with",
      "left",   "right",   "measure", "wf",       "Definition", "Fixpoint", "Inductive", "Class", "Instance",
      "Record", "Axiom",   "Notation", "Infix",   "Require", "Import",   "Export",  "Local",    "Program",
      "Theorem", "Lemma",  "Proof",   "Qed",      "Defined", "Section",  "End",     "Module",   "Variable",
      "Hypothesis", "Parameter", "Existing", "Arguments", "Implicit", "Context", "Let", "Check", "Eval",
      "Compute", "Print", "Search", "Open", "Scope", "Unset", "Canonical", "Coercion", "Structure",
      "Variant", "Function", "CoInductive", "CoFixpoint",
  };
  return words.count(name) > 0;
}

std::string avoid_reserved(const std::string& name) { return is_reserved(name) ? name + "_" : name; }

std::string mangle(const std::string& base) {
  if (is_symbolic(base)) return z_encode(base);
  return avoid_reserved(base);
}

bool is_constructor_name(const std::string& base) {
  return is_conid(base) || base == "[]" || base == "()" || (base.size() > 1 && base.front() == '(');
}

namespace {

using Table = std::map<std::pair<std::string, std::string>, std::string>;

const Table& type_renames() {
  static const Table t = {
      {{"GHC.Types", "[]"}, "list"},      {{"GHC.Types", "Bool"}, "bool"},
      {{"GHC.Base", "Maybe"}, "option"},  {{"GHC.Types", "Ordering"}, "comparison"},
      {{"GHC.Tuple", "()"}, "unit"},      {{"GHC.Tuple", "(,)"}, "prod"},
      {{"GHC.Classes", "Eq"}, "GHC.Classes.Eq_"},
  };
  return t;
}

const Table& value_renames() {
  static const Table t = {
      {{"GHC.Types", "[]"}, "nil"},        {{"GHC.Types", ":"}, "cons"},
      {{"GHC.Types", "True"}, "true"},     {{"GHC.Types", "False"}, "false"},
      {{"GHC.Base", "Just"}, "Some"},      {{"GHC.Base", "Nothing"}, "None"},
      {{"GHC.Types", "LT"}, "Lt"},         {{"GHC.Types", "EQ"}, "Eq"},
      {{"GHC.Types", "GT"}, "Gt"},         {{"GHC.Tuple", "()"}, "tt"},
      {{"GHC.Tuple", "(,)"}, "pair"},      {{"GHC.Base", "++"}, "app"},
      {{"GHC.Classes", "&&"}, "andb"},     {{"GHC.Classes", "||"}, "orb"},
      {{"GHC.Classes", "not"}, "negb"},    {{"GHC.Base", "otherwise"}, "true"},
      {{"Data.Tuple", "fst"}, "fst"},      {{"Data.Tuple", "snd"}, "snd"},
  };
  return t;
}

}  // namespace

std::optional<std::string> prelude_rename(Namespace ns, const QualName& q) {
  const Table& t = ns == Namespace::Type || ns == Namespace::Class ? type_renames() : value_renames();
  auto it = t.find({q.module, q.base});
  if (it == t.end()) return std::nullopt;
  return it->second;
}

const std::set<std::string>& target_builtins() {
  static const std::set<std::string> b = [] {
    std::set<std::string> s = {"Type", "Set", "Prop", "nat", "bool", "true", "false", "unit", "tt",
                               "prod", "pair", "fst", "snd", "list", "nil", "cons", "option", "Some",
                               "None", "comparison", "Lt", "Eq", "Gt", "app", "andb", "orb", "negb"};
    for (const auto* t : {&type_renames(), &value_renames()})
      for (const auto& [k, v] : *t)
        if (v.find('.') == std::string::npos) s.insert(v);
    return s;
  }();
  return b;
}

std::optional<std::string> known_module(Namespace ns, const std::string& base) {
  using M = std::map<std::string, std::string>;
  static const M values = [] {
    M m;
    auto put = [&](const char* mod, std::initializer_list<const char*> names) {
      for (auto n : names) m[n] = mod;
    };
    put("GHC.Base", {"map", "++", ".", "$", "id", "const", "flip", "foldr", "pure", "<*>", "*>", "<*", "fmap",
                     "<$", "<$>", ">>=", ">>", "return", "fail", "otherwise", "<>", "mappend", "mempty", "mconcat",
                     "liftA2", "ap", "when", "sequence", "mapM", "asTypeOf", "until", "=<<"});
    put("GHC.Classes", {"==", "/=", "<", "<=", ">", ">=", "compare", "max", "min", "&&", "||", "not"});
    put("GHC.Num", {"+", "-", "*", "negate", "fromInteger", "abs", "signum", "subtract"});
    put("GHC.Real", {"div", "mod", "quot", "rem", "^", "divMod", "quotRem", "fromIntegral", "even", "odd"});
    put("GHC.List", {"filter", "length", "null", "reverse", "take", "drop", "zip", "zip3", "zipWith", "concatMap",
                     "concat", "and", "or", "any", "all", "elem", "notElem", "sum", "product", "lookup", "replicate",
                     "head", "tail", "last", "init", "iterate", "repeat", "cycle", "!!", "foldl", "foldl1", "foldr1",
                     "splitAt", "span", "break", "takeWhile", "dropWhile", "unzip", "maximum", "minimum", "scanl",
                     "scanr"});
    put("Data.OldList", {"partition", "sort", "sortBy", "group", "groupBy", "nub", "insert", "intersperse",
                         "intercalate", "transpose", "isPrefixOf", "isSuffixOf", "delete", "\\\\", "union",
                         "intersect", "lines", "words", "unlines", "unwords"});
    put("Data.Tuple", {"fst", "snd", "curry", "uncurry", "swap"});
    put("Data.Maybe", {"maybe", "fromMaybe", "isJust", "isNothing", "catMaybes", "mapMaybe", "fromJust"});
    put("Data.Either", {"either", "lefts", "rights"});
    put("GHC.Enum", {"enumFromTo", "enumFrom", "enumFromThen", "enumFromThenTo", "succ", "pred", "minBound",
                     "maxBound", "toEnum", "fromEnum"});
    put("GHC.Err", {"error", "undefined"});
    put("GHC.Show", {"show", "showsPrec", "showString", "shows"});
    put("GHC.Prim", {"seq"});
    return m;
  }();
  static const M constructors = {
      {"[]", "GHC.Types"},      {":", "GHC.Types"},      {"True", "GHC.Types"},   {"False", "GHC.Types"},
      {"LT", "GHC.Types"},      {"EQ", "GHC.Types"},     {"GT", "GHC.Types"},     {"Just", "GHC.Base"},
      {"Nothing", "GHC.Base"},  {"Left", "Data.Either"}, {"Right", "Data.Either"}, {"()", "GHC.Tuple"},
  };
  static const M types = {
      {"Int", "GHC.Types"},     {"Bool", "GHC.Types"},      {"Char", "GHC.Types"},     {"Ordering", "GHC.Types"},
      {"Integer", "GHC.Num"},   {"Word", "GHC.Types"},      {"Double", "GHC.Types"},   {"[]", "GHC.Types"},
      {"Maybe", "GHC.Base"},    {"String", "GHC.Base"},     {"Either", "Data.Either"}, {"()", "GHC.Tuple"},
      {"IO", "GHC.Types"},
  };
  static const M classes = {
      {"Eq", "GHC.Classes"},        {"Ord", "GHC.Classes"},    {"Functor", "GHC.Base"},  {"Applicative", "GHC.Base"},
      {"Monad", "GHC.Base"},        {"Semigroup", "GHC.Base"}, {"Monoid", "GHC.Base"},   {"Num", "GHC.Num"},
      {"Show", "GHC.Show"},         {"Enum", "GHC.Enum"},      {"Bounded", "GHC.Enum"},  {"Integral", "GHC.Real"},
      {"Foldable", "Data.Foldable"}, {"Traversable", "Data.Traversable"}, {"Read", "GHC.Read"},
  };
  if (base.size() > 1 && base.front() == '(' && base.back() == ')' && base[1] == ',') return std::string("GHC.Tuple");
  const M* table = &values;
  switch (ns) {
    case Namespace::Value:
      table = &values;
      break;
    case Namespace::Constructor:
      table = &constructors;
      break;
    case Namespace::Type:
      table = &types;
      break;
    case Namespace::Class:
      table = &classes;
      break;
  }
  auto it = table->find(base);
  if (it == table->end()) return std::nullopt;
  return it->second;
}

const std::vector<BuiltinType>& builtin_types() {
  static const std::vector<BuiltinType> t = {
      {{"GHC.Types", "[]", Namespace::Type},
       {{{"GHC.Types", "[]", Namespace::Constructor}, 0}, {{"GHC.Types", ":", Namespace::Constructor}, 2}}},
      {{"GHC.Types", "Bool", Namespace::Type},
       {{{"GHC.Types", "False", Namespace::Constructor}, 0}, {{"GHC.Types", "True", Namespace::Constructor}, 0}}},
      {{"GHC.Base", "Maybe", Namespace::Type},
       {{{"GHC.Base", "Nothing", Namespace::Constructor}, 0}, {{"GHC.Base", "Just", Namespace::Constructor}, 1}}},
      {{"GHC.Types", "Ordering", Namespace::Type},
       {{{"GHC.Types", "LT", Namespace::Constructor}, 0},
        {{"GHC.Types", "EQ", Namespace::Constructor}, 0},
        {{"GHC.Types", "GT", Namespace::Constructor}, 0}}},
      {{"GHC.Tuple", "()", Namespace::Type}, {{{"GHC.Tuple", "()", Namespace::Constructor}, 0}}},
      {{"GHC.Tuple", "(,)", Namespace::Type}, {{{"GHC.Tuple", "(,)", Namespace::Constructor}, 2}}},
      {{"Data.Either", "Either", Namespace::Type},
       {{{"Data.Either", "Left", Namespace::Constructor}, 1}, {{"Data.Either", "Right", Namespace::Constructor}, 1}}},
  };
  return t;
}

NameEnv::NameEnv(std::string module, const EditSet* edits, IfaceLookup iface)
    : module_(std::move(module)), edits_(edits), iface_(std::move(iface)) {}

std::string NameEnv::render_base(const QualName& q) const {
  std::string full = render(q);
  if (q.module.empty() || q.module == module_) return full;
  std::string prefix = q.module + ".";
  if (full.compare(0, prefix.size(), prefix) == 0) return full.substr(prefix.size());
  return full;
}

std::string NameEnv::render(const QualName& q) const {
  Namespace ns = q.ns;
  std::optional<std::string> target;
  if (!q.module.empty()) {
    if (auto it = local_.find(q); it != local_.end()) return it->second;
    target = edits_ ? edits_->lookup_rename(ns, q) : prelude_rename(ns, q);
  }
  if (target) {
    QualName t = split_qualified(*target, ns);
    if (t.module == module_) return t.base;
    return *target;
  }
  if (q.module.empty()) {
    if (auto it = local_.find(q); it != local_.end()) return it->second;
    return mangle(q.base);
  }
  if (q.module == module_) return mangle(q.base);
  if (iface_) {
    if (auto r = iface_(q)) return q.module + "." + *r;
  }
  return q.module + "." + mangle(q.base);
}

std::string NameEnv::fresh_arg() { return "arg_" + std::to_string(counter_++) + "__"; }
std::string NameEnv::fresh_join() { return "j_" + std::to_string(counter_++) + "__"; }

void NameEnv::add_local_rename(const QualName& q, std::string target) { local_[q] = std::move(target); }

DataDecl rename_constructor_clash(const DataDecl& decl, const std::set<std::string>& taken) {
  DataDecl out = decl;
  for (auto& c : out.cons) {
    if (c.name.base != decl.name.base) continue;
    std::string renamed = "Mk_" + c.name.base;
    bool clash = taken.count(renamed) > 0;
    for (const auto& other : decl.cons)
      if (other.name.base == renamed) clash = true;
    if (clash)
      throw ClashError("renaming constructor " + c.name.base + " to " + renamed +
                       " collides with an existing name; supply a rename edit");
    c.name.base = renamed;
  }
  return out;
}

}  // namespace totalizer
