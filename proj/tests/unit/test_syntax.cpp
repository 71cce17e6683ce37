// SPDX-License-Identifier: Apache-2.0
#include <string>

#include "doctest.h"
#include "testkit.hpp"
#include "totalizer/lexer.hpp"
#include "totalizer/oracle.hpp"
#include "totalizer/parser.hpp"

using namespace totalizer;

namespace {

std::string layout(const std::string& src) { return render_tokens(resolve_layout(src)); }

}  // namespace

TEST_CASE("lexer splits qualified names and operators") {
  auto toks = lex("x = Data.Map.insert k v m >>= GHC.Base.>>= 'c' \"s\" -- note\n{- block -} 42");
  REQUIRE(toks.size() >= 10);
  CHECK(toks[2].text == "insert");
  CHECK(toks[2].qual == "Data.Map");
  CHECK(toks[6].kind == Tok::VarSym);
  CHECK(toks[6].text == ">>=");
  CHECK(toks[7].full() == "GHC.Base.>>=");
  CHECK(toks[8].kind == Tok::Char);
  CHECK(toks[9].kind == Tok::String);
  CHECK(toks[toks.size() - 2].text == "42");
}

TEST_CASE("layout inserts braces and semicolons by indentation") {
  std::string out = layout("module M where\nf x = case x of\n  1 -> 2\n  _ -> 3\ng = 4\n");
  CHECK(out.find("of {") != std::string::npos);
  CHECK(out.find("; _ ->") != std::string::npos);
  CHECK(out.find("} ; g") != std::string::npos);
}

TEST_CASE("an explicit let block inside an implicit let keeps its own in") {
  const char* src =
      "module M where\n"
      "f x = let a = let { b = x } in b\n"
      "          c = 2\n"
      "      in a + c\n";
  SurfaceModule m = parse_module_source(src);
  REQUIRE(m.decls.size() == 1);
  CHECK(print_module(m).find("let { a = let { b = x } in b; c = 2 } in a + c") != std::string::npos);
}

TEST_CASE("a comma ends an implicit let inside a guard") {
  const char* src =
      "module M where\n"
      "f x | let y = x, y > 0 = y\n"
      "    | otherwise = 0\n";
  CHECK_NOTHROW(parse_module_source(src));
}

TEST_CASE("layout errors carry a location") {
  try {
    parse_module_source("module M where\nf x = let { y = x in y\n");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.loc().line >= 2);
  }
}

TEST_CASE("operator sections and fixity") {
  CHECK(print_expr(parse_expr_source("1 + 2 * 3")) == print_expr(parse_expr_source("1 + (2 * 3)")));
  CHECK(print_expr(parse_expr_source("a - b - c")) == print_expr(parse_expr_source("(a - b) - c")));
  CHECK(print_expr(parse_expr_source("f . g $ x")) == print_expr(parse_expr_source("(f . g) $ x")));
  CHECK(default_fixity("$").prec == 0);
}

TEST_CASE("unsupported declarations become placeholders instead of aborting") {
  SurfaceModule m = parse_module_source(
      "module M where\n"
      "f :: Int -> Int\n"
      "f x = x\n"
      "g = [x | x <- xs, then reverse]\n"
      "h = 1\n");
  int unsupported = 0;
  for (const auto& d : m.decls) unsupported += std::holds_alternative<UnsupportedDecl>(d.v);
  CHECK(unsupported == 1);
}

TEST_CASE("printing a parsed module and parsing it again is stable") {
  for (const char* f : {"Map.hs", "Take.hs", "Head.hs", "Compiler.hs", "Bag.hs", "Records.hs", "GHC/Base.hs",
                        "Control/Applicative/Successors.hs"}) {
    CAPTURE(f);
    std::string once = print_module(parse_module_source(tztest::read_text(tztest::fixture(f))));
    std::string twice = print_module(parse_module_source(once));
    CHECK(once == twice);
  }
}

TEST_CASE("generated programs survive a print and parse round trip") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    CAPTURE(seed);
    std::string once = print_module(parse_module_source(oracle::generate(seed).source));
    CHECK(print_module(parse_module_source(once)) == once);
  }
}
