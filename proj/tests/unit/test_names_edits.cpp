// SPDX-License-Identifier: Apache-2.0
#include <string>

#include "doctest.h"
#include "testkit.hpp"
#include "totalizer/edits.hpp"
#include "totalizer/names.hpp"

using namespace totalizer;

TEST_CASE("z-encoding of single characters") {
  CHECK(z_encode("%") == "op_zv__");
  CHECK(z_encode(":") == "op_ZC__");
  CHECK(z_encode("<$>") == "op_zlzdzg__");
  CHECK(z_encode("\\\\") == "op_zrzr__");
  CHECK_THROWS_AS(z_encode("?"), EncodeError);
}

TEST_CASE("reserved words take one underscore") {
  CHECK(avoid_reserved("return") == "return_");
  CHECK(avoid_reserved("end") == "end_");
  CHECK(avoid_reserved("map") == "map");
  CHECK(avoid_reserved("return_") == "return_");
  for (const char* w : {"match", "fun", "fix", "forall", "in", "let", "if", "then", "else", "with", "Type"})
    CHECK(is_reserved(w));
}

TEST_CASE("fresh names share one counter per environment") {
  NameEnv env("M", nullptr);
  CHECK(env.fresh_arg() == "arg_0__");
  CHECK(env.fresh_arg() == "arg_1__");
  CHECK(env.fresh_join() == "j_2__");
  NameEnv again("M", nullptr);
  CHECK(again.fresh_arg() == "arg_0__");
}

TEST_CASE("rendering qualified names") {
  NameEnv env("M", nullptr);
  CHECK(env.render(QualName{"GHC.Classes", "==", Namespace::Value}) == "GHC.Classes.op_zeze__");
  CHECK(env.render(QualName{"M", "take", Namespace::Value}) == "take");
  CHECK(env.render(QualName{"GHC.Types", "[]", Namespace::Type}) == "list");
  CHECK(env.render(QualName{"GHC.Base", "return", Namespace::Value}) == "GHC.Base.return_");
}

TEST_CASE("constructor sharing its type's name is renamed") {
  auto data = [](const char* type, std::vector<const char*> cons) {
    DataDecl d;
    d.name = QualName{"M", type, Namespace::Type};
    for (const char* c : cons) {
      d.cons.push_back(ConDecl{});
      d.cons.back().name = QualName{"M", c, Namespace::Value};
    }
    return d;
  };
  CHECK(rename_constructor_clash(data("Succs", {"Succs"}), {}).cons[0].name.base == "Mk_Succs");
  CHECK(rename_constructor_clash(data("Expr", {"Val", "Add"}), {}).cons[0].name.base == "Val");
  DataDecl t = data("T", {"T", "Mk_T"});
  CHECK_THROWS_AS(rename_constructor_clash(t, {}), ClashError);
}

TEST_CASE("edits files parse every directive") {
  EditSet e = parse_edits(
      "# comment\n"
      "skip module Outputable\n"
      "skip Bag.pprBag\n"
      "skip class GHC.Show.Show\n"
      "skip instance Bag.instance_Show_Bag\n"
      "skip method GHC.Base.Monad fail\n"
      "rename type GHC.Types.[] = list\n"
      "rename value GHC.Base.. = GHC.Base.compose\n"
      "order first second third\n"
      "nonterminating sort\n"
      "termination go {measure (length xs)}\n"
      "cps class Monad\n"
      "redefine Definition foo : nat := 0.\n");
  CHECK(e.skip_module("Outputable"));
  CHECK_FALSE(e.skip_module("Bag"));
  CHECK(e.skip_value(QualName{"Bag", "pprBag", Namespace::Value}));
  CHECK_FALSE(e.skip_value(QualName{"Other", "pprBag", Namespace::Value}));
  CHECK(e.skip_class(QualName{"GHC.Show", "Show", Namespace::Class}));
  CHECK(e.skip_method(QualName{"GHC.Base", "Monad", Namespace::Class}, "fail"));
  CHECK(e.lookup_rename(Namespace::Type, QualName{"GHC.Types", "[]", Namespace::Type}) == "list");
  CHECK(e.user_rename(Namespace::Value, QualName{"GHC.Base", ".", Namespace::Value}) == "GHC.Base.compose");
  REQUIRE(e.orders().size() == 1);
  CHECK(e.orders()[0].size() == 3);
  CHECK(e.recursion_mode(QualName{"Any", "sort", Namespace::Value}).kind == RecursionMode::UnsafeFix);
  CHECK(e.recursion_mode(QualName{"Any", "go", Namespace::Value}).kind == RecursionMode::ProgramFixpoint);
  CHECK(e.recursion_mode(QualName{"Any", "other", Namespace::Value}).kind == RecursionMode::Structural);
  CHECK(e.redefines("Any").size() == 1);
}

TEST_CASE("edits print and parse back to the same set") {
  EditSet e = parse_edits(tztest::read_text(tztest::fixture("base.edits")) +
                          tztest::read_text(tztest::fixture("bag.edits")) + "order a b\nnonterminating sort\n");
  std::string printed = e.print();
  CHECK(parse_edits(printed).print() == printed);
  CHECK(parse_edits(printed).edits().size() == e.edits().size());
}

TEST_CASE("malformed edits report their line") {
  auto line_of = [](const char* text) {
    try {
      parse_edits(text);
    } catch (const EditParseError& e) {
      return e.loc().line;
    }
    return 0;
  };
  CHECK(line_of("skip module A\nfrobnicate x\n") == 2);
  CHECK(line_of("\n\nrename value A.b c\n") == 3);
  CHECK(line_of("order a\n") == 1);
  CHECK(line_of("rename value A.b = c\nrename value A.b = d\n") == 2);
  CHECK(line_of("nonterminating f\ntermination f {measure x}\n") == 2);
  CHECK(line_of("skip module\n") == 1);
}

TEST_CASE("later edits files shadow earlier renames") {
  EditSet a = parse_edits("rename value A.f = g\n");
  a.merge(parse_edits("rename value A.f = h\n"));
  CHECK(a.user_rename(Namespace::Value, QualName{"A", "f", Namespace::Value}) == "h");
}
