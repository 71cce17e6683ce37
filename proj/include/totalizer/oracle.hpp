// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "totalizer/syntax.hpp"
#include "totalizer/vernac.hpp"

namespace totalizer::oracle {

// Both evaluators share one strategy: arguments and constructor fields are evaluated eagerly,
// `let` and `where` value bindings lazily, pattern bindings when the right-hand side is entered.
// A failed match or partial selector gives bottom; a name the evaluator cannot interpret, an
// ill-typed operation or an exhausted step budget makes the evaluation stuck.
struct Outcome {
  enum Kind { Value, Bottom, Stuck } kind = Stuck;
  std::string text;  // printed value, or the reason for bottom or stuck

  // Printed form compared between evaluators; every bottom prints the same.
  std::string shown() const;
};

// Evaluates top-level bindings of a resolved module by their base names.
std::vector<Outcome> eval_surface(const SurfaceModule& resolved, const std::vector<std::string>& entries,
                                  std::uint64_t budget = 1000000);

// Evaluates definitions of translated sentences by their rendered names.
std::vector<Outcome> eval_core(const std::vector<VernSentence>& sentences, const std::vector<std::string>& entries,
                               std::uint64_t budget = 1000000);

struct Program {
  std::string source;                // Haskell module text
  std::vector<std::string> entries;  // closed top-level values to compare
};

// Random well-typed, terminating module exercising guards, `where`, `case`, records and
// comprehensions. The same seed gives the same program.
Program generate(std::uint64_t seed);

struct CaseResult {
  std::string entry;
  Outcome surface;
  Outcome core;
  bool agree = false;
};

struct CheckResult {
  std::vector<CaseResult> cases;
  std::vector<std::string> problems;  // translation axioms, diagnostics or parse errors
  std::string output;                 // vernacular text

  bool ok() const;
};

// Translates the program and compares both evaluations of every entry.
CheckResult check_program(const Program& p);

}  // namespace totalizer::oracle
