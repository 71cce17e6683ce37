// SPDX-License-Identifier: Apache-2.0
#include "testkit.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "totalizer/lint.hpp"

namespace fs = std::filesystem;

namespace tztest {

std::string fixture(const std::string& rel) { return (fs::path(TZ_FIXTURE_DIR) / rel).string(); }

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string scratch_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("totalizer-tests-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p.string();
}

Corpus full_corpus() {
  Corpus c;
  for (const char* f : {"GHC/Base.hs", "Control/Applicative/Successors.hs", "Compiler.hs", "Bag.hs", "Outputable.hs",
                        "Order.hs", "Records.hs", "Cycle.hs", "Map.hs", "Uncurry.hs", "Take.hs", "Head.hs", "Sort.hs"})
    c.inputs.push_back(fixture(f));
  for (const char* f : {"base.edits", "bag.edits", "order.edits", "sort.edits"}) c.edits.push_back(fixture(f));
  return c;
}

totalizer::RunResult run_corpus(const Corpus& c, const std::string& out_dir) {
  totalizer::RunConfig cfg;
  cfg.inputs = c.inputs;
  cfg.edit_files = c.edits;
  cfg.out_dir = out_dir;
  return totalizer::run(cfg);
}

std::map<std::string, std::string> read_tree(const std::string& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) out[fs::relative(e.path(), dir).generic_string()] = read_text(e.path().string());
  return out;
}

namespace {

std::string fresh_class(const std::string& t) {
  for (const char* prefix : {"arg_", "j_"}) {
    std::string p = prefix;
    if (t.size() > p.size() + 2 && t.compare(0, p.size(), p) == 0 && t.compare(t.size() - 2, 2, "__") == 0) {
      std::string mid = t.substr(p.size(), t.size() - p.size() - 2);
      if (!mid.empty() && mid.find_first_not_of("0123456789") == std::string::npos) return p;
    }
  }
  return "";
}

}  // namespace

std::vector<CanonicalSentence> canonical_sentences(std::string_view text) {
  std::vector<CanonicalSentence> out;
  for (const auto& toks : totalizer::coq_sentences(text)) {
    CanonicalSentence s;
    std::map<std::string, std::string> renumber;
    std::map<std::string, int> counters;
    for (const auto& t : toks) {
      std::string x = t.text;
      if (t.kind == totalizer::CoqToken::Ident) {
        auto dot = x.rfind('.');
        if (dot != std::string::npos) x = x.substr(dot + 1);
        std::string cls = fresh_class(x);
        if (!cls.empty()) {
          auto it = renumber.find(x);
          if (it == renumber.end()) it = renumber.emplace(x, cls + "#" + std::to_string(counters[cls]++)).first;
          x = it->second;
        }
      }
      s.tokens.push_back(x);
    }
    size_t k = 0;
    while (k < s.tokens.size() && (s.tokens[k] == "Local" || s.tokens[k] == "Global")) ++k;
    if (k + 1 < s.tokens.size()) s.key = s.tokens[k] + " " + s.tokens[k + 1];
    out.push_back(std::move(s));
  }
  return out;
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) out += (out.empty() ? "" : " ") + t;
  return out;
}

std::string golden_mismatch(std::string_view expected, std::string_view actual) {
  auto want = canonical_sentences(expected);
  auto have = canonical_sentences(actual);
  if (want.empty()) return "no expected sentences";
  for (const auto& w : want) {
    const CanonicalSentence* hit = nullptr;
    for (const auto& h : have)
      if (h.key == w.key) hit = &h;
    if (!hit) return "missing sentence " + w.key;
    if (hit->tokens != w.tokens) return "sentence " + w.key + " differs:\n  want: " + join(w.tokens) + "\n  have: " + join(hit->tokens);
  }
  return "";
}

}  // namespace tztest
