// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <string>

#include "doctest.h"
#include "testkit.hpp"
#include "totalizer/iface.hpp"
#include "totalizer/lint.hpp"
#include "totalizer/translate.hpp"
#include "totalizer/vernac.hpp"

using namespace totalizer;

namespace {

ModuleResult tr(const std::string& src, const std::string& edits = "") {
  return translate_source(src, "M.hs", IfaceTable(), parse_edits(edits));
}

const tztest::CanonicalSentence* sentence(const std::vector<tztest::CanonicalSentence>& v, const std::string& key) {
  for (const auto& s : v)
    if (s.key == key) return &s;
  return nullptr;
}

std::string canon(const ModuleResult& r, const std::string& key) {
  auto v = tztest::canonical_sentences(r.text);
  const auto* s = sentence(v, key);
  return s ? tztest::join(s->tokens) : "";
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("guards fall through to the next equation by a join point") {
  ModuleResult r = tr(
      "module M where\n"
      "classify :: Int -> Int\n"
      "classify n | n < 0 = 0\n"
      "           | n == 0 = 1\n"
      "classify _ = 2\n");
  std::string c = canon(r, "Definition classify");
  CHECK(contains(c, "let j_#0 := match arg_#0 with | _ => fromInteger 2 end in"));
  CHECK(contains(c, "if op_zl__ n ( fromInteger 0 ) then fromInteger 0 else j_#1"));
  CHECK(r.report.axioms.empty());
}

TEST_CASE("an incomplete match ends in patternFailure with a local axiom") {
  ModuleResult r = tr("module M where\nfirst :: [a] -> a\nfirst (x : _) = x\n");
  CHECK(contains(canon(r, "Definition first"), "| _ => patternFailure"));
  CHECK(sentence(tztest::canonical_sentences(r.text), "Axiom patternFailure") != nullptr);
  REQUIRE(r.report.axioms.size() == 1);
  CHECK(r.report.axioms[0].category == "patternFailure");
  CHECK(r.report.axioms[0].used_by == std::vector<std::string>{"first"});
}

TEST_CASE("structural recursion becomes a fixpoint") {
  ModuleResult r = tr("module M where\nlen :: [a] -> Int\nlen [] = 0\nlen (_ : xs) = 1 + len xs\n");
  CHECK(contains(canon(r, "Definition len"), "fix len arg_#0 := match arg_#0 with"));
}

TEST_CASE("a nonterminating edit replaces fix with unsafeFix") {
  ModuleResult r = tr("module M where\nloop :: Int -> Int\nloop n = loop (n + 1)\n", "nonterminating loop\n");
  CHECK(contains(canon(r, "Definition loop"), "unsafeFix ( fun loop =>"));
  REQUIRE(r.report.axioms.size() == 2);
  CHECK(r.report.axioms[0].category == "unsafeFix");
}

TEST_CASE("a termination edit emits Program Fixpoint with the measure") {
  ModuleResult r = tr("module M where\ngo :: [Int] -> Int\ngo xs = go (drop 1 xs)\n",
                      "termination go {measure (length xs)}\n");
  CHECK(contains(r.text, "Program Fixpoint go"));
  CHECK(contains(r.text, "{measure (length xs)}"));
}

TEST_CASE("let, where and lambdas keep their binders") {
  ModuleResult r = tr(
      "module M where\n"
      "f :: Int -> Int\n"
      "f x = y * z where\n"
      "  y = x + 1\n"
      "  z = let w = y in w\n"
      "g :: Int -> Int\n"
      "g = \\a -> a\n");
  std::string c = canon(r, "Definition f");
  CHECK(contains(c, "let y := op_zp__ x ( fromInteger 1 ) in"));
  CHECK(contains(c, "let w := y in w"));
  CHECK(contains(canon(r, "Definition g"), "fun a => a"));
}

TEST_CASE("constructor clashing with its type is renamed everywhere") {
  ModuleResult r = tr("module M where\ndata Box a = Box a\nunbox :: Box a -> a\nunbox (Box x) = x\n");
  CHECK(contains(canon(r, "Inductive Box"), "Mk_Box : a -> Box a"));
  CHECK(contains(canon(r, "Definition unbox"), "Mk_Box x => x"));
}

TEST_CASE("records produce projection functions") {
  ModuleResult r = tr("module M where\ndata P = P { px :: Int, py :: Int }\nsumP :: P -> Int\nsumP p = px p + py p\n");
  std::string t = r.text;
  CHECK(contains(t, "Definition px"));
  CHECK(contains(t, "Definition py"));
  CHECK(contains(canon(r, "Definition sumP"), "op_zp__ ( px p ) ( py p )"));
}

TEST_CASE("class defaults are copied into instances that omit them") {
  ModuleResult r = tr(
      "module M where\n"
      "data C = Red | Green\n"
      "class Size a where\n"
      "  size :: a -> Int\n"
      "  size _ = 1\n"
      "  big :: a -> Bool\n"
      "instance Size C where\n"
      "  big Red = True\n"
      "  big _ = False\n");
  CHECK(contains(canon(r, "Class Size"), "Class Size a := { size : a -> Int ; big : a -> bool }"));
  CHECK(contains(canon(r, "Definition instance_Size_C_size"), "fun _ => fromInteger 1"));
  CHECK(contains(canon(r, "Instance instance_Size_C"),
                 "size := instance_Size_C_size ; big := instance_Size_C_big"));
}

TEST_CASE("deriving Eq and Ord writes instances") {
  ModuleResult r = tr("module M where\ndata C = Red | Green deriving (Eq, Ord)\n");
  CHECK(contains(r.text, "Instance instance_Eq_C : GHC.Classes.Eq_ C"));
  CHECK(contains(r.text, "Instance instance_Ord_C : GHC.Classes.Ord C"));
  CHECK(contains(canon(r, "Definition instance_Ord_C_compare"), "| Red , Green => Lt"));
}

TEST_CASE("a superclass becomes an implicit instance argument") {
  ModuleResult r = tr(
      "module M where\n"
      "class Named a where\n"
      "  name :: a -> Int\n"
      "class Named a => Tagged a where\n"
      "  tag :: a -> Int\n");
  CHECK(contains(canon(r, "Class Tagged"), "Class Tagged a `{ Named a } :="));
}

TEST_CASE("skip edits remove the value and its references from the report") {
  ModuleResult r = tr("module M where\na :: Int\na = 1\nb :: Int\nb = 2\n", "skip M.a\n");
  CHECK_FALSE(contains(r.text, "Definition a"));
  CHECK(contains(r.text, "Definition b"));
  CHECK(r.report.skipped_names == std::vector<std::string>{"a"});
}

TEST_CASE("a use of a skipped value turns the user into an axiom") {
  ModuleResult r = tr("module M where\na :: Int\na = 1\nb :: Int\nb = a\n", "skip M.a\n");
  CHECK(contains(r.text, "Axiom b"));
  REQUIRE(r.report.axioms.size() == 1);
  CHECK(r.report.axioms[0].category == "unsupported");
}

TEST_CASE("source order is kept unless a dependency forces a move") {
  ModuleResult r = tr("module M where\nb :: Int\nb = a\na :: Int\na = 1\nc :: Int\nc = 3\n");
  std::vector<std::string> names;
  for (const auto& s : r.file.sentences) names.push_back(s.name);
  CHECK(names == std::vector<std::string>{"a", "b", "c"});
  CHECK(r.report.reordered == std::vector<std::string>{"a"});
}

TEST_CASE("topological sort reports cycles and honours order pairs") {
  auto def = [](const char* name, std::vector<std::string> uses) {
    VernSentence s;
    s.name = name;
    if (uses.empty()) s.body.push_back(cvar("tt"));
    else {
      std::vector<CoreTerm> rest;
      for (size_t k = 1; k < uses.size(); ++k) rest.push_back(cvar(uses[k]));
      s.body.push_back(capps(cvar(uses[0]), rest));
    }
    return s;
  };
  std::vector<VernSentence> v = {def("x", {"y"}), def("y", {"x"}), def("z", {})};
  std::vector<std::vector<size_t>> cycles;
  CHECK_THROWS_AS(topo_order(v, {}, &cycles), CycleError);
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0] == std::vector<size_t>{0, 1});
  std::vector<VernSentence> w = {def("p", {}), def("q", {})};
  CHECK(topo_order(w, {{"q", "p"}}) == std::vector<size_t>{1, 0});
}

TEST_CASE("mutual recursion becomes commented axioms") {
  ModuleResult r = translate_source(tztest::read_text(tztest::fixture("Cycle.hs")), "Cycle.hs", IfaceTable(), EditSet());
  int axioms = 0;
  for (const auto& s : r.file.sentences) {
    if (s.kind != VernSentence::Axiom) continue;
    ++axioms;
    CHECK_FALSE(s.comment.empty());
  }
  CHECK(axioms == 2);
}

TEST_CASE("the linter finds uses before definitions") {
  CHECK(lint_file("Definition a := 1.\nDefinition b := a.\n").empty());
  auto issues = lint_file("Definition b := a.\nDefinition a := 1.\n");
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].name == "a");
  CHECK(issues[0].line == 1);
  CHECK(lint_file("Definition f := fun x => match x with | cons y _ => y | _ => x end.\n").empty());
  CHECK(lint_file("Definition g := Other.h.\n").size() == 1);
  CHECK(lint_file("Require Other.\nDefinition g := Other.h.\n").empty());
  ExternalNames only_k = [](const std::string&, const std::string& n) { return n == "k"; };
  CHECK(lint_file("Require Other.\nDefinition g := Other.h.\n", only_k).size() == 1);
}

TEST_CASE("every translated fixture passes the linter") {
  std::string out = tztest::scratch_dir("unit-lint");
  RunResult r = tztest::run_corpus(tztest::full_corpus(), out);
  REQUIRE(r.exit_code == 0);
  for (const auto& m : r.modules) {
    CAPTURE(m.module);
    CHECK(m.diagnostics.empty());
  }
}

TEST_CASE("interfaces survive a write and read") {
  ModuleResult r = translate_source(tztest::read_text(tztest::fixture("GHC/Base.hs")), "Base.hs", IfaceTable(),
                                    load_edits_file(tztest::fixture("base.edits")));
  std::string once = write_iface(r.iface);
  CHECK(write_iface(read_iface(once)) == once);
  CHECK(read_iface(once).module == "GHC.Base");
  CHECK(exported_names(r.iface).count("op_zgzgze__") == 1);
  CHECK(module_path("A.B.C", ".v") == "A/B/C.v");
}

TEST_CASE("golden comparison ignores layout and fresh numbering but not content") {
  const char* golden = "Definition f : nat := fun arg_7__ => let j_9__ := arg_7__ in j_9__.";
  CHECK(tztest::golden_mismatch(golden, "Definition f : nat :=\n  fun arg_0__ =>\n  let j_1__ := arg_0__ in j_1__.\n") ==
        "");
  CHECK(tztest::golden_mismatch(golden, "Definition f : nat := fun arg_0__ => let j_1__ := arg_0__ in arg_0__.") != "");
  CHECK(tztest::golden_mismatch(golden, "Definition g : nat := 0.") != "");
  CHECK(tztest::golden_mismatch("Definition f := M.x.", "Definition f := x.") == "");
}

TEST_CASE("each golden file fails against a perturbed translation") {
  std::string out = tztest::scratch_dir("unit-golden");
  RunResult r = tztest::run_corpus(tztest::full_corpus(), out);
  REQUIRE(r.exit_code == 0);
  std::string map = tztest::read_text(out + "/Map.v");
  CHECK(tztest::golden_mismatch(tztest::read_text(tztest::fixture("golden/map.v")), map) == "");
  std::string broken = map;
  broken.replace(broken.find("map f xs"), 8, "map f f");
  CHECK(tztest::golden_mismatch(tztest::read_text(tztest::fixture("golden/map.v")), broken) != "");
}
