// SPDX-License-Identifier: Apache-2.0
#include "totalizer/iface.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "totalizer/edits.hpp"
#include "totalizer/names.hpp"
#include "totalizer/parser.hpp"
#include "totalizer/resolve.hpp"

namespace totalizer {

using nlohmann::json;

std::optional<std::string> ModuleIface::rendered(const QualName& q) const {
  QualName k{q.module, q.base, q.ns};
  switch (q.ns) {
    case Namespace::Value:
      if (auto it = values.find(k); it != values.end()) return it->second;
      break;
    case Namespace::Constructor:
      if (auto it = constructors.find(k); it != constructors.end()) return it->second.rendered;
      break;
    case Namespace::Type:
      if (auto it = types.find(k); it != types.end()) return it->second.rendered;
      break;
    case Namespace::Class:
      if (auto it = classes.find(k); it != classes.end()) return it->second.rendered;
      break;
  }
  return std::nullopt;
}

// ------------------------------------------------------------- summaries

QualName instance_head(const Type& head) {
  const Type* t = &head;
  while (t->kind == Type::App) t = &t->args[0];
  switch (t->kind) {
    case Type::Con:
      return t->con;
    case Type::List:
      return QualName{"GHC.Types", "[]", Namespace::Type};
    case Type::Unit:
      return QualName{"GHC.Tuple", "()", Namespace::Type};
    case Type::Tuple:
      return QualName{"GHC.Tuple", "(" + std::string(t->args.size() - 1, ',') + ")", Namespace::Type};
    case Type::Fun:
      return QualName{"GHC.Prim", "->", Namespace::Type};
    default:
      return QualName{"", t->var, Namespace::Type};
  }
}

std::string instance_name(const QualName& cls, const Type& head) {
  QualName h = instance_head(head);
  std::string base = h.base;
  if (base == "[]") base = "list";
  else if (base == "()") base = "unit";
  else if (base == "->") base = "arrow";
  else if (!base.empty() && base.front() == '(') base = "pair";
  return "instance_" + mangle(cls.base) + "_" + mangle(base);
}

ModuleIface summarize_module(const SurfaceModule& m, const NameEnv& env, const EditSet* edits) {
  ModuleIface out;
  out.module = m.name;
  auto q = [&](const std::string& base, Namespace ns) { return QualName{m.name, base, ns}; };
  for (const auto& d : m.decls) {
    if (const auto* dd = std::get_if<DataDecl>(&d.v)) {
      QualName tn = q(dd->name.base, Namespace::Type);
      TypeInfo ti{tn, dd->params, {}, env.render_base(tn)};
      for (const auto& c : dd->cons) {
        QualName cn = q(c.name.base, Namespace::Constructor);
        ti.constructors.push_back(cn);
        out.constructors[cn] = ConInfo{cn, tn, static_cast<int>(c.args.size()), c.fields, env.render_base(cn)};
        for (const auto& f : c.fields) {
          QualName fn = q(f, Namespace::Value);
          out.values[fn] = env.render_base(fn);
        }
      }
      out.types[tn] = std::move(ti);
    } else if (const auto* ts = std::get_if<TypeSynonym>(&d.v)) {
      QualName tn = q(ts->name.base, Namespace::Type);
      out.types[tn] = TypeInfo{tn, ts->params, {}, env.render_base(tn)};
    } else if (const auto* cd = std::get_if<ClassDecl>(&d.v)) {
      ClassInfo ci;
      ci.name = q(cd->name.base, Namespace::Class);
      ci.param = cd->param;
      for (const auto& s : cd->supers) ci.supers.push_back(s.cls);
      for (const auto& sig : cd->sigs)
        for (const auto& n : sig.names) {
          QualName mn = q(n.base, Namespace::Value);
          MethodInfo mi{mn, sig.sig, env.render_base(mn)};
          out.values[mn] = mi.rendered;
          ci.methods.push_back(std::move(mi));
        }
      for (const auto& b : cd->defaults) ci.defaults[b.name.base] = b;
      ci.rendered = env.render_base(ci.name);
      ci.cps = edits && edits->cps_class(ci.name);
      out.classes[ci.name] = std::move(ci);
    } else if (const auto* id = std::get_if<InstanceDecl>(&d.v)) {
      out.instances.push_back(InstanceInfo{id->cls, instance_head(id->head), instance_name(id->cls, id->head)});
    } else if (const auto* sig = std::get_if<TypeSig>(&d.v)) {
      for (const auto& n : sig->names) {
        QualName vn = q(n.base, Namespace::Value);
        out.values[vn] = env.render_base(vn);
      }
    } else if (const auto* fb = std::get_if<FunBind>(&d.v)) {
      QualName vn = q(fb->bind.name.base, Namespace::Value);
      out.values[vn] = env.render_base(vn);
    } else if (const auto* ud = std::get_if<UnsupportedDecl>(&d.v)) {
      if (ud->name.empty()) continue;
      QualName n = q(ud->name, ud->ns);
      if (ud->ns == Namespace::Value) out.values[n] = env.render_base(n);
      if (ud->ns == Namespace::Type) out.types[n] = TypeInfo{n, {}, {}, env.render_base(n)};
    }
  }
  return out;
}

// ------------------------------------------------------------------ JSON

namespace {

std::string binding_text(Binding b) {
  b.name.module.clear();
  return print_binding(b);
}

}  // namespace

std::string write_iface(const ModuleIface& iface) {
  json j;
  j["module"] = iface.module;
  j["values"] = json::object();
  for (const auto& [n, r] : iface.values) j["values"][n.base] = r;
  j["types"] = json::array();
  for (const auto& [n, t] : iface.types) {
    json cons = json::array();
    for (const auto& c : t.constructors) cons.push_back(c.base);
    j["types"].push_back({{"name", n.base}, {"params", t.params}, {"constructors", cons}, {"rendered", t.rendered}});
  }
  j["constructors"] = json::array();
  for (const auto& [n, c] : iface.constructors)
    j["constructors"].push_back({{"name", n.base},
                                 {"type", c.type.base},
                                 {"arity", c.arity},
                                 {"fields", c.fields},
                                 {"rendered", c.rendered}});
  j["classes"] = json::array();
  for (const auto& [n, c] : iface.classes) {
    json supers = json::array();
    for (const auto& s : c.supers) supers.push_back(s.str());
    json methods = json::array();
    for (const auto& m : c.methods)
      methods.push_back({{"name", m.name.base}, {"type", print_qualtype(m.type)}, {"rendered", m.rendered}});
    json defaults = json::object();
    for (const auto& [k, b] : c.defaults) defaults[k] = binding_text(b);
    j["classes"].push_back({{"name", n.base},
                            {"param", c.param},
                            {"supers", supers},
                            {"methods", methods},
                            {"defaults", defaults},
                            {"rendered", c.rendered},
                            {"cps", c.cps}});
  }
  j["instances"] = json::array();
  for (const auto& i : iface.instances)
    j["instances"].push_back({{"class", i.cls.str()}, {"head", i.head.str()}, {"name", i.name}});
  return j.dump(2) + "\n";
}

ModuleIface read_iface(const std::string& text) {
  json j = json::parse(text);
  ModuleIface out;
  out.module = j.at("module").get<std::string>();
  const std::string& mod = out.module;
  for (const auto& [k, v] : j.at("values").items()) out.values[QualName{mod, k, Namespace::Value}] = v.get<std::string>();
  for (const auto& t : j.at("types")) {
    TypeInfo ti;
    ti.name = QualName{mod, t.at("name").get<std::string>(), Namespace::Type};
    ti.params = t.at("params").get<std::vector<std::string>>();
    for (const auto& c : t.at("constructors")) ti.constructors.push_back(QualName{mod, c.get<std::string>(), Namespace::Constructor});
    ti.rendered = t.at("rendered").get<std::string>();
    out.types[ti.name] = std::move(ti);
  }
  for (const auto& c : j.at("constructors")) {
    ConInfo ci;
    ci.name = QualName{mod, c.at("name").get<std::string>(), Namespace::Constructor};
    ci.type = QualName{mod, c.at("type").get<std::string>(), Namespace::Type};
    ci.arity = c.at("arity").get<int>();
    ci.fields = c.at("fields").get<std::vector<std::string>>();
    ci.rendered = c.at("rendered").get<std::string>();
    out.constructors[ci.name] = std::move(ci);
  }
  IfaceTable none(false);
  for (const auto& c : j.at("classes")) {
    ClassInfo ci;
    ci.name = QualName{mod, c.at("name").get<std::string>(), Namespace::Class};
    ci.param = c.at("param").get<std::string>();
    for (const auto& s : c.at("supers")) ci.supers.push_back(split_qualified(s.get<std::string>(), Namespace::Class));
    for (const auto& m : c.at("methods")) {
      MethodInfo mi;
      mi.name = QualName{mod, m.at("name").get<std::string>(), Namespace::Value};
      mi.type = parse_type_source(m.at("type").get<std::string>());
      resolve_qualified_type(mi.type);
      mi.rendered = m.at("rendered").get<std::string>();
      ci.methods.push_back(std::move(mi));
    }
    for (const auto& [k, v] : c.at("defaults").items()) {
      auto bs = parse_bindings_source(v.get<std::string>());
      if (bs.empty()) continue;
      resolve_qualified_binding(bs[0], mod, none);
      ci.defaults[k] = std::move(bs[0]);
    }
    ci.rendered = c.at("rendered").get<std::string>();
    ci.cps = c.value("cps", false);
    out.classes[ci.name] = std::move(ci);
  }
  for (const auto& i : j.at("instances"))
    out.instances.push_back(InstanceInfo{split_qualified(i.at("class").get<std::string>(), Namespace::Class),
                                         split_qualified(i.at("head").get<std::string>(), Namespace::Type),
                                         i.at("name").get<std::string>()});
  return out;
}

// ----------------------------------------------------------------- table

void IfaceTable::add(ModuleIface iface) {
  std::string m = iface.module;
  ifaces_[m] = std::move(iface);
}

const ModuleIface* IfaceTable::find(const std::string& module) const {
  if (auto it = ifaces_.find(module); it != ifaces_.end()) return &it->second;
  if (with_builtins_) {
    const auto& b = builtin_ifaces();
    if (auto it = b.find(module); it != b.end()) return &it->second;
  }
  return nullptr;
}

const ClassInfo* IfaceTable::find_class(const QualName& q) const {
  const ModuleIface* m = find(q.module);
  if (!m) return nullptr;
  auto it = m->classes.find(QualName{q.module, q.base, Namespace::Class});
  return it == m->classes.end() ? nullptr : &it->second;
}

const ConInfo* IfaceTable::find_constructor(const QualName& q) const {
  const ModuleIface* m = find(q.module);
  if (!m) return nullptr;
  auto it = m->constructors.find(QualName{q.module, q.base, Namespace::Constructor});
  return it == m->constructors.end() ? nullptr : &it->second;
}

const TypeInfo* IfaceTable::find_type(const QualName& q) const {
  const ModuleIface* m = find(q.module);
  if (!m) return nullptr;
  auto it = m->types.find(QualName{q.module, q.base, Namespace::Type});
  return it == m->types.end() ? nullptr : &it->second;
}

std::optional<std::string> IfaceTable::rendered(const QualName& q) const {
  const ModuleIface* m = find(q.module);
  if (!m) return std::nullopt;
  return m->rendered(q);
}

bool IfaceTable::load_from(const std::string& dir, const std::string& module) {
  std::filesystem::path p = std::filesystem::path(dir) / module_path(module, ".iface.json");
  std::ifstream in(p);
  if (!in) return false;
  std::stringstream ss;
  ss << in.rdbuf();
  add(read_iface(ss.str()));
  return true;
}

std::string module_path(const std::string& module, const std::string& ext) {
  std::string p = module;
  for (auto& c : p)
    if (c == '.') c = '/';
  return p + ext;
}

// -------------------------------------------------------------- builtins

namespace {

const char* const kClassesSource = R"(module GHC.Classes where
infix 4 ==, /=, <, <=, >, >=
infixr 3 &&
infixr 2 ||

class Eq a where
  (==) :: a -> a -> Bool
  (/=) :: a -> a -> Bool
  x /= y = not (x == y)
  x == y = not (x /= y)

class Eq a => Ord a where
  compare :: a -> a -> Ordering
  (<) :: a -> a -> Bool
  (<=) :: a -> a -> Bool
  (>) :: a -> a -> Bool
  (>=) :: a -> a -> Bool
  max :: a -> a -> a
  min :: a -> a -> a
  compare x y = if x == y then EQ else if x <= y then LT else GT
  x < y = case compare x y of { LT -> True; _ -> False }
  x <= y = case compare x y of { GT -> False; _ -> True }
  x > y = case compare x y of { GT -> True; _ -> False }
  x >= y = case compare x y of { LT -> False; _ -> True }
  max x y = if x <= y then y else x
  min x y = if x <= y then x else y

not :: Bool -> Bool
not True = False
not False = True

(&&) :: Bool -> Bool -> Bool
True && x = x
False && _ = False

(||) :: Bool -> Bool -> Bool
True || _ = True
False || x = x
)";

const char* const kBaseSource = R"(module GHC.Base where
infixr 9 .
infixr 0 $
infixl 4 <$, <*>, *>
infixl 1 >>, >>=

data Maybe a = Nothing | Just a

class Functor f where
  fmap :: (a -> b) -> f a -> f b
  (<$) :: a -> f b -> f a
  (<$) = fmap . const

class Functor f => Applicative f where
  pure :: a -> f a
  (<*>) :: f (a -> b) -> f a -> f b
  (*>) :: f a -> f b -> f b
  a1 *> a2 = (id <$ a1) <*> a2

class Applicative m => Monad m where
  (>>) :: m a -> m b -> m b
  (>>=) :: m a -> (a -> m b) -> m b
  return :: a -> m a
  (>>) = (*>)
  return = pure

id :: a -> a
id x = x

const :: a -> b -> a
const x _ = x

(.) :: (b -> c) -> (a -> b) -> a -> c
(.) f g = \x -> f (g x)

($) :: (a -> b) -> a -> b
f $ x = f x

flip :: (a -> b -> c) -> b -> a -> c
flip f x y = f y x

map :: (a -> b) -> [a] -> [b]
map _ [] = []
map f (x : xs) = f x : map f xs
)";

const char* const kNumSource = R"(module GHC.Num where
infixl 6 +, -
infixl 7 *

class Num a where
  (+) :: a -> a -> a
  (-) :: a -> a -> a
  (*) :: a -> a -> a
  negate :: a -> a
  abs :: a -> a
  signum :: a -> a
  fromInteger :: Integer -> a
  x - y = x + negate y
  negate x = fromInteger 0 - x
)";

}  // namespace

const std::map<std::string, ModuleIface>& builtin_ifaces() {
  static const std::map<std::string, ModuleIface> table = [] {
    std::map<std::string, ModuleIface> out;
    IfaceTable seen(false);
    for (const char* src : {kClassesSource, kBaseSource, kNumSource}) {
      SurfaceModule m = parse_module_source(src);
      resolve_module(m, seen);
      NameEnv env(m.name, nullptr, [&](const QualName& q) { return seen.rendered(q); });
      ModuleIface iface = summarize_module(m, env, nullptr);
      seen.add(iface);
      out[m.name] = std::move(iface);
    }
    return out;
  }();
  return table;
}

}  // namespace totalizer
