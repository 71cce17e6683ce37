// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace totalizer {

struct CoqToken {
  enum Kind { Ident, Symbol, String, Number } kind = Ident;
  std::string text;
  int line = 0;
};

// Tokens of vernacular text with comments dropped. A `.` joins an identifier only when an
// identifier character follows it.
std::vector<CoqToken> coq_tokens(std::string_view text);

// Vernacular sentences, each as its tokens without the final period.
std::vector<std::vector<CoqToken>> coq_sentences(std::string_view text);

struct LintIssue {
  int line = 0;
  std::string name;
  std::string message;
};

// Answers whether a Required module defines a name; absent means any name is accepted.
using ExternalNames = std::function<bool(const std::string& module, const std::string& name)>;

// Every identifier must be bound locally, defined by an earlier sentence, qualified by a
// Required module, or provided by the target without a Require.
std::vector<LintIssue> lint_file(std::string_view text, const ExternalNames& external = {});

}  // namespace totalizer
