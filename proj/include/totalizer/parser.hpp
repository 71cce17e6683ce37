// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>
#include <vector>

#include "totalizer/lexer.hpp"
#include "totalizer/syntax.hpp"

namespace totalizer {

// Parses layout-resolved tokens. Declarations outside the supported subset come back as
// UnsupportedDecl; ParseError is thrown only when the module structure itself is broken.
SurfaceModule parse_module(const std::vector<Token>& tokens);
SurfaceModule parse_module_source(std::string_view source);

// Fragments, used for interface summaries and tests.
std::vector<Binding> parse_bindings_source(std::string_view source);
Expr parse_expr_source(std::string_view source);
QualType parse_type_source(std::string_view source);

// Fixity of an operator known to the parser when the module declares none.
Fixity default_fixity(const std::string& op);

// Surface pretty-printer. Output parses back to the same tree.
std::string print_module(const SurfaceModule& m);
std::string print_expr(const Expr& e);
std::string print_pattern(const Pattern& p);
std::string print_type(const Type& t);
std::string print_qualtype(const QualType& t);
std::string print_binding(const Binding& b);

}  // namespace totalizer
