// SPDX-License-Identifier: Apache-2.0
// Acceptance checks; prints one PASS or FAIL line per criterion and fails when any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "testkit.hpp"
#include "totalizer/edits.hpp"
#include "totalizer/iface.hpp"
#include "totalizer/lint.hpp"
#include "totalizer/names.hpp"
#include "totalizer/oracle.hpp"
#include "totalizer/translate.hpp"
#include "totalizer/vernac.hpp"

namespace fs = std::filesystem;
using namespace totalizer;

namespace {

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;  // 0 for none
  std::function<std::string()> check;
};

std::string text_of(const RunResult& r, const std::string& out, const std::string& module) {
  (void)r;
  return tztest::read_text((fs::path(out) / output_path(module)).string());
}

std::string run_errors(const RunResult& r) {
  std::string out;
  for (const auto& e : r.errors) out += e.file + ": " + e.message + "; ";
  return out;
}

std::string goldens() {
  std::string out = tztest::scratch_dir("golden");
  RunConfig cfg;
  for (const char* f : {"GHC/Base.hs", "Control/Applicative/Successors.hs", "Map.hs", "Uncurry.hs", "Take.hs", "Head.hs"})
    cfg.inputs.push_back(tztest::fixture(f));
  cfg.edit_files.push_back(tztest::fixture("base.edits"));
  cfg.out_dir = out;
  RunResult r = run(cfg);
  if (r.exit_code != 0) return "run failed: " + run_errors(r);
  const std::pair<const char*, const char*> cases[] = {
      {"map.v", "Map"},   {"uncurry.v", "Uncurry"}, {"take.v", "Take"},
      {"head.v", "Head"}, {"succs.v", "Control.Applicative.Successors"}, {"monad.v", "GHC.Base"}};
  for (const auto& [golden, module] : cases) {
    std::string expected = tztest::read_text(tztest::fixture(std::string("golden/") + golden));
    std::string diff = tztest::golden_mismatch(expected, text_of(r, out, module));
    if (!diff.empty()) return std::string(golden) + ": " + diff;
  }
  return "";
}

std::string oracle_equivalence(std::string& stats) {
  int programs = 0, cases = 0, bottoms = 0;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    oracle::Program p = oracle::generate(seed);
    oracle::CheckResult r = oracle::check_program(p);
    ++programs;
    for (const auto& q : r.problems) return "seed " + std::to_string(seed) + ": " + q;
    for (const auto& c : r.cases) {
      ++cases;
      if (c.surface.kind == oracle::Outcome::Bottom) ++bottoms;
      if (!c.agree)
        return "seed " + std::to_string(seed) + " " + c.entry + ": surface " + c.surface.shown() + ", core " +
               c.core.shown();
    }
  }
  stats = std::to_string(programs) + " programs, " + std::to_string(cases) + " entries, " + std::to_string(bottoms) +
          " agreeing pattern failures";
  if (bottoms == 0) return "no pattern failure was exercised";
  return "";
}

std::string lint_corpus() {
  std::string out = tztest::scratch_dir("lint");
  RunResult r = tztest::run_corpus(tztest::full_corpus(), out);
  if (r.exit_code != 0) return "run failed: " + run_errors(r);
  IfaceTable table;
  std::set<std::string> inputs;
  for (const auto& m : r.modules) {
    inputs.insert(m.module);
    if (!m.skipped) table.load_from(out, m.module);
  }
  ExternalNames external = [&](const std::string& module, const std::string& name) {
    if (!inputs.count(module)) return true;
    const ModuleIface* iface = table.find(module);
    return iface && exported_names(*iface).count(name) > 0;
  };
  int files = 0;
  for (const auto& m : r.modules) {
    if (m.skipped) continue;
    ++files;
    for (const auto& issue : lint_file(tztest::read_text(m.output), external))
      return m.output + ":" + std::to_string(issue.line) + ": " + issue.name + ": " + issue.message;
  }
  for (const char* required : {"Control.Applicative.Successors", "Compiler", "Bag"})
    if (!fs::exists(fs::path(out) / output_path(required))) return std::string("no output for ") + required;
  if (files == 0) return "no files linted";
  return "";
}

std::string z_encoding() {
  const std::pair<const char*, const char*> named[] = {{">>=", "op_zgzgze__"}, {">>", "op_zgzg__"},
                                                      {"*>", "op_ztzg__"},    {"<=", "op_zlze__"},
                                                      {"-", "op_zm__"},       {"==", "op_zeze__"}};
  for (const auto& [op, want] : named)
    if (z_encode(op) != want) return std::string(op) + " encodes as " + z_encode(op);
  for (const char* outside : {"?", "@", "~", "<?>"}) {
    try {
      z_encode(outside);
      return std::string(outside) + " encoded without error";
    } catch (const EncodeError&) {
    }
  }
  const std::string alphabet = "!#$%&*+./<=>\\^|-:";
  std::map<std::string, std::string> seen;
  std::vector<std::string> ops;
  for (char a : alphabet) {
    ops.push_back(std::string(1, a));
    for (char b : alphabet) {
      ops.push_back(std::string{a, b});
      for (char c : alphabet) ops.push_back(std::string{a, b, c});
    }
  }
  for (const auto& op : ops) {
    std::string z = z_encode(op);
    auto [it, fresh] = seen.emplace(z, op);
    if (!fresh) return "collision: " + it->second + " and " + op + " both encode as " + z;
  }
  return "";
}

std::string edits_behaviour() {
  {
    std::string out = tztest::scratch_dir("skip-module");
    RunConfig cfg;
    for (const char* f : {"GHC/Base.hs", "Outputable.hs", "Bag.hs"}) cfg.inputs.push_back(tztest::fixture(f));
    cfg.edit_files = {tztest::fixture("base.edits"), tztest::fixture("bag.edits")};
    cfg.out_dir = out;
    RunResult r = run(cfg);
    if (r.exit_code != 0) return "skip module run failed: " + run_errors(r);
    for (const auto& [path, text] : tztest::read_tree(out)) {
      if (path.find("Outputable") != std::string::npos) return "skipped module written to " + path;
      std::istringstream lines(text);
      for (std::string line; std::getline(lines, line);)
        if (line.rfind("Require", 0) == 0 && line.find("Outputable") != std::string::npos)
          return path + " requires Outputable";
    }
  }
  {
    const char* src = "module Lists where\n\nlen :: [a] -> Int\nlen [] = 0\nlen (_ : xs) = 1 + len xs\n";
    ModuleResult r = translate_source(src, "Lists.hs", IfaceTable(), parse_edits("rename type GHC.Types.[] = list\n"));
    bool found = false;
    for (const auto& s : tztest::canonical_sentences(r.text)) {
      if (s.key != "Definition len") continue;
      found = std::find(s.tokens.begin(), s.tokens.end(), "list") != s.tokens.end();
    }
    if (!found) return "list type not rendered as list:\n" + r.text;
  }
  {
    ModuleResult r = translate_source(tztest::read_text(tztest::fixture("Sort.hs")), "Sort.hs", IfaceTable(),
                                      load_edits_file(tztest::fixture("sort.edits")));
    int axioms = 0;
    for (const auto& s : tztest::canonical_sentences(r.text))
      if (s.key == "Axiom unsafeFix") ++axioms;
    if (axioms != 1) return "expected one unsafeFix axiom, found " + std::to_string(axioms);
    bool uses = false;
    for (const auto& s : tztest::canonical_sentences(r.text)) {
      if (s.key != "Definition sort") continue;
      std::vector<std::string> want = {"unsafeFix", "(", "fun", "sort", "=>"};
      uses = std::search(s.tokens.begin(), s.tokens.end(), want.begin(), want.end()) != s.tokens.end();
    }
    if (!uses) return "sort is not defined through unsafeFix:\n" + r.text;
  }
  {
    std::string src = tztest::read_text(tztest::fixture("Order.hs"));
    auto position = [](const ModuleResult& r, const std::string& name) {
      for (size_t k = 0; k < r.file.sentences.size(); ++k)
        if (r.file.sentences[k].name == name) return static_cast<long>(k);
      return -1L;
    };
    ModuleResult plain = translate_source(src, "Order.hs", IfaceTable(), EditSet());
    ModuleResult ordered =
        translate_source(src, "Order.hs", IfaceTable(), load_edits_file(tztest::fixture("order.edits")));
    if (position(plain, "second") > position(plain, "first")) return "fixture already has first before second";
    if (position(ordered, "first") < 0 || position(ordered, "second") < position(ordered, "first"))
      return "order edit did not place second after first";
  }
  return "";
}

CoreTerm uses(const std::vector<std::string>& names) {
  if (names.empty()) return cvar("tt");
  std::vector<CoreTerm> args;
  for (size_t k = 1; k < names.size(); ++k) args.push_back(cvar(names[k]));
  return capps(cvar(names[0]), std::move(args));
}

std::string topological_order() {
  std::mt19937_64 rng(20240607);
  const size_t n = 30;
  for (int round = 0; round < 100; ++round) {
    std::vector<size_t> rank(n);
    for (size_t k = 0; k < n; ++k) rank[k] = k;
    std::shuffle(rank.begin(), rank.end(), rng);
    std::bernoulli_distribution edge(0.08);
    std::vector<std::set<size_t>> deps(n);
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b)
        if (rank[b] < rank[a] && edge(rng)) deps[a].insert(b);
    std::vector<VernSentence> v(n);
    for (size_t k = 0; k < n; ++k) {
      v[k].name = "s" + std::to_string(k);
      std::vector<std::string> names;
      for (size_t d : deps[k]) names.push_back("s" + std::to_string(d));
      v[k].body.push_back(uses(names));
    }
    std::vector<size_t> got = topo_order(v, {});
    // Reference: repeatedly take the earliest sentence whose dependencies are all placed.
    std::vector<size_t> want;
    std::vector<bool> placed(n, false);
    while (want.size() < n) {
      for (size_t k = 0; k < n; ++k) {
        if (placed[k]) continue;
        bool ready = true;
        for (size_t d : deps[k]) ready = ready && placed[d];
        if (ready) {
          placed[k] = true;
          want.push_back(k);
          break;
        }
      }
    }
    if (got != want) return "round " + std::to_string(round) + ": order is not the stable topological order";
    std::vector<size_t> pos(n);
    for (size_t k = 0; k < n; ++k) pos[got[k]] = k;
    for (size_t a = 0; a < n; ++a)
      for (size_t d : deps[a])
        if (pos[d] > pos[a]) return "round " + std::to_string(round) + ": edge violated";
    std::vector<VernSentence> sorted;
    for (size_t k : got) sorted.push_back(v[k]);
    std::vector<size_t> again = topo_order(sorted, {});
    for (size_t k = 0; k < n; ++k)
      if (again[k] != k) return "round " + std::to_string(round) + ": sorted input was reordered";
  }
  ModuleResult r = translate_source(tztest::read_text(tztest::fixture("Cycle.hs")), "Cycle.hs", IfaceTable(), EditSet());
  std::set<std::string> axioms;
  for (const auto& s : r.file.sentences) {
    if (s.kind != VernSentence::Axiom) continue;
    if (s.comment.empty()) return "axiom " + s.name + " has no comment";
    axioms.insert(s.name);
  }
  if (axioms != std::set<std::string>{"f", "g"}) return "the two-sentence cycle did not yield exactly f and g axioms";
  return "";
}

std::string determinism() {
  std::string a = tztest::scratch_dir("run-a"), b = tztest::scratch_dir("run-b");
  RunResult ra = tztest::run_corpus(tztest::full_corpus(), a);
  RunResult rb = tztest::run_corpus(tztest::full_corpus(), b);
  if (ra.exit_code != 0 || rb.exit_code != 0) return "run failed: " + run_errors(ra) + run_errors(rb);
  auto ta = tztest::read_tree(a), tb = tztest::read_tree(b);
  if (ta.size() < 10) return "too few output files";
  if (ta.size() != tb.size()) return "different file sets";
  for (const auto& [path, text] : ta) {
    auto it = tb.find(path);
    if (it == tb.end()) return path + " missing from the second run";
    if (it->second != text) return path + " differs between runs";
  }
  return "";
}

}  // namespace

int main() {
  std::string oracle_stats;
  const Criterion criteria[] = {
      {1, "golden translations", 5, goldens},
      {2, "generated programs evaluate alike before and after translation", 60,
       [&] { return oracle_equivalence(oracle_stats); }},
      {3, "define-before-use lint over the fixture corpus", 0, lint_corpus},
      {4, "operator Z-encoding and injectivity", 1, z_encoding},
      {5, "edits: skip module, list rename, nonterminating, order", 5, edits_behaviour},
      {6, "dependency order on random graphs and a two-cycle", 5, topological_order},
      {7, "two runs give identical output trees", 0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string problem;
    try {
      problem = c.check();
    } catch (const std::exception& e) {
      problem = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (problem.empty() && c.limit_seconds > 0 && secs > c.limit_seconds)
      problem = "took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit_seconds) + " s";
    std::printf("%s criterion %d: %s (%.2f s)", problem.empty() ? "PASS" : "FAIL", c.id, c.title, secs);
    if (c.id == 2 && !oracle_stats.empty()) std::printf(" [%s]", oracle_stats.c_str());
    std::printf("\n");
    if (!problem.empty()) {
      std::printf("  %s\n", problem.c_str());
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}
