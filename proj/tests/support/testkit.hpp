// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "totalizer/driver.hpp"

namespace tztest {

// Absolute path of a file under tests/fixtures.
std::string fixture(const std::string& rel);
std::string read_text(const std::string& path);
// Fresh empty directory under the system temporary directory.
std::string scratch_dir(const std::string& name);

struct Corpus {
  std::vector<std::string> inputs;
  std::vector<std::string> edits;
};

// Every fixture module with the edits files that shape it.
Corpus full_corpus();
totalizer::RunResult run_corpus(const Corpus& c, const std::string& out_dir);

// Relative path to contents for every regular file below `dir`.
std::map<std::string, std::string> read_tree(const std::string& dir);

// Sentence tokens with module qualifiers dropped and `arg_N__`/`j_N__` renumbered in order of
// first occurrence, so outputs compare independently of layout and fresh-name counters.
struct CanonicalSentence {
  std::string key;  // defined name, or command and notation string
  std::vector<std::string> tokens;
};
std::vector<CanonicalSentence> canonical_sentences(std::string_view text);
std::string join(const std::vector<std::string>& tokens);

// Empty when every sentence of `expected` occurs in `actual` with an equal canonical token
// stream, else a description of the first difference.
std::string golden_mismatch(std::string_view expected, std::string_view actual);

}  // namespace tztest
