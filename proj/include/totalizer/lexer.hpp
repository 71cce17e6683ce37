// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "totalizer/error.hpp"

namespace totalizer {

enum class Tok { VarId, ConId, VarSym, ConSym, Integer, String, Char, Float, Special, Keyword, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;  // base text; for qualified names the part after the last module dot
  std::string qual;  // module qualifier, empty when unqualified
  Loc loc;
  bool bol = false;       // first token on its line
  bool implicit = false;  // brace or semicolon inserted by layout

  bool is(Tok k, std::string_view t) const { return kind == k && text == t; }
  bool special(std::string_view t) const { return kind == Tok::Special && text == t; }
  bool keyword(std::string_view t) const { return kind == Tok::Keyword && text == t; }
  std::string full() const { return qual.empty() ? text : qual + "." + text; }
};

// Raw tokens without layout processing. Comments and pragmas are dropped.
std::vector<Token> lex(std::string_view source);

// Tokens with offside-rule layout turned into explicit braces and semicolons.
std::vector<Token> resolve_layout(std::string_view source);
std::vector<Token> resolve_layout(std::vector<Token> raw);

std::string render_tokens(const std::vector<Token>& toks);

}  // namespace totalizer
