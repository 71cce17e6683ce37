// SPDX-License-Identifier: Apache-2.0
#include "totalizer/driver.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>

#include "json.hpp"
#include "totalizer/lint.hpp"
#include "totalizer/parser.hpp"

namespace totalizer {

namespace fs = std::filesystem;

namespace {

struct Input {
  std::string path;
  SurfaceModule module;
};

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::stringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

bool write_file(const fs::path& path, const std::string& text, RunResult& r) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) {
    r.errors.push_back(Diagnostic{"error", path.string(), {}, "cannot write file"});
    return false;
  }
  r.written.push_back(path.generic_string());
  return true;
}

// Inputs ordered so that every module follows the input modules it imports. Non-`GHC.` modules
// also follow every `GHC.` input, which stands in for the implicit prelude import.
std::vector<size_t> module_order(const std::vector<Input>& inputs, RunResult& r) {
  std::map<std::string, size_t> by_name;
  for (size_t i = 0; i < inputs.size(); ++i) by_name[inputs[i].module.name] = i;
  size_t n = inputs.size();
  std::vector<std::set<size_t>> succ(n);
  std::vector<size_t> indeg(n, 0);
  auto edge = [&](size_t from, size_t to) {
    if (from != to && succ[from].insert(to).second) ++indeg[to];
  };
  auto ghc = [](const std::string& m) { return m.rfind("GHC.", 0) == 0; };
  for (size_t i = 0; i < n; ++i) {
    for (const auto& imp : inputs[i].module.imports)
      if (auto it = by_name.find(imp.module); it != by_name.end()) edge(it->second, i);
    if (!ghc(inputs[i].module.name))
      for (size_t j = 0; j < n; ++j)
        if (ghc(inputs[j].module.name)) edge(j, i);
  }
  auto by_module = [&](size_t a, size_t b) { return inputs[a].module.name > inputs[b].module.name; };
  std::priority_queue<size_t, std::vector<size_t>, decltype(by_module)> ready(by_module);
  for (size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) ready.push(i);
  std::vector<size_t> order;
  while (!ready.empty()) {
    size_t i = ready.top();
    ready.pop();
    order.push_back(i);
    for (size_t j : succ[i])
      if (--indeg[j] == 0) ready.push(j);
  }
  if (order.size() < n) {
    std::string names;
    for (size_t i = 0; i < n; ++i)
      if (indeg[i] > 0) names += (names.empty() ? "" : ", ") + inputs[i].module.name;
    r.errors.push_back(Diagnostic{"error", "", {}, "import cycle among input modules: " + names});
    return {};
  }
  return order;
}

bool diag_less(const Diagnostic& a, const Diagnostic& b) {
  return std::tie(a.file, a.loc.line, a.loc.col) < std::tie(b.file, b.loc.line, b.loc.col);
}

}  // namespace

std::string output_path(const std::string& module) { return module_path(module, ".v"); }

RunResult run(const RunConfig& config) {
  RunResult r;
  EditSet edits;
  try {
    for (const auto& f : config.edit_files) edits.merge(load_edits_file(f));
    for (const auto& t : config.edit_texts) edits.merge(parse_edits(t));
  } catch (const Error& e) {
    r.errors.push_back(Diagnostic{"error", "", e.loc(), e.what()});
    r.exit_code = 1;
    return r;
  }
  if (config.inputs.empty()) {
    r.errors.push_back(Diagnostic{"error", "", {}, "no input files"});
    r.exit_code = 1;
    return r;
  }

  std::vector<Input> inputs;
  std::set<std::string> names;
  for (const auto& path : config.inputs) {
    std::string text;
    if (!read_file(path, text)) {
      r.errors.push_back(Diagnostic{"error", path, {}, "cannot read file"});
      continue;
    }
    try {
      Input in{path, parse_module_source(text)};
      if (!names.insert(in.module.name).second) {
        r.errors.push_back(Diagnostic{"error", path, {}, "module " + in.module.name + " is given twice"});
        continue;
      }
      inputs.push_back(std::move(in));
    } catch (const Error& e) {
      r.errors.push_back(Diagnostic{"error", path, e.loc(), e.what()});
    }
  }

  IfaceTable table;
  if (!config.iface_dir.empty())
    for (const auto& in : inputs)
      for (const auto& imp : in.module.imports)
        if (!names.count(imp.module) && !table.all().count(imp.module)) table.load_from(config.iface_dir, imp.module);

  fs::path out(config.out_dir);
  for (size_t i : module_order(inputs, r)) {
    const Input& in = inputs[i];
    try {
      if (edits.skip_module(in.module.name)) {
        ModuleReport rep;
        rep.module = in.module.name;
        rep.source = in.path;
        rep.skipped = true;
        r.modules.push_back(std::move(rep));
        table.add(module_interface(in.module, table, edits));
        continue;
      }
      ModuleResult mr = translate_module(in.module, in.path, table, edits);
      fs::path vfile = out / output_path(in.module.name);
      mr.report.output = vfile.generic_string();
      ExternalNames external = [&](const std::string& module, const std::string& name) {
        if (!names.count(module)) return true;
        const ModuleIface* iface = table.find(module);
        return iface && exported_names(*iface).count(name) > 0;
      };
      for (const auto& issue : lint_file(mr.text, external))
        mr.report.diagnostics.push_back(Diagnostic{"warning", vfile.generic_string(), Loc{issue.line, 0},
                                                   "define-before-use: " + issue.name + ": " + issue.message});
      write_file(vfile, mr.text, r);
      if (config.emit_iface) write_file(out / module_path(in.module.name, ".iface.json"), write_iface(mr.iface), r);
      table.add(std::move(mr.iface));
      r.modules.push_back(std::move(mr.report));
    } catch (const Error& e) {
      r.errors.push_back(Diagnostic{"error", in.path, e.loc(), e.what()});
    }
  }
  write_file(out / "support" / "HsToCoqSupport.v", support_file_text(), r);

  bool axioms = false;
  for (const auto& m : r.modules) axioms = axioms || !m.axioms.empty();
  r.exit_code = !r.errors.empty() ? 1 : (config.strict && axioms ? 2 : 0);
  if (config.report) write_file(out / "totalizer-report.json", report_json(r), r);
  return r;
}

std::string report_text(const RunResult& r) {
  std::ostringstream os;
  std::vector<Diagnostic> diags = r.errors;
  for (const auto& m : r.modules) diags.insert(diags.end(), m.diagnostics.begin(), m.diagnostics.end());
  std::stable_sort(diags.begin(), diags.end(), diag_less);
  for (const auto& d : diags) {
    if (!d.file.empty()) os << d.file << ":";
    if (d.loc.line > 0) os << d.loc.line << ":" << d.loc.col << ":";
    os << (d.file.empty() && d.loc.line == 0 ? "" : " ") << d.severity << ": " << d.message << "\n";
  }
  int sentences = 0, axioms = 0;
  for (const auto& m : r.modules) {
    if (m.skipped) {
      os << m.module << ": skipped\n";
      continue;
    }
    sentences += m.sentences;
    axioms += static_cast<int>(m.axioms.size());
    os << m.module << " -> " << m.output << "\n";
    os << "  sentences: " << m.sentences << ", axioms: " << m.axioms.size() << "\n";
    for (const auto& a : m.axioms) {
      os << "  axiom " << a.name << " (" << a.category << ")";
      if (!a.used_by.empty()) {
        os << " used by";
        for (const auto& u : a.used_by) os << " " << u;
      }
      if (!a.reason.empty()) os << ": " << a.reason;
      os << "\n";
    }
    if (!m.skipped_names.empty()) {
      os << "  skipped:";
      for (const auto& s : m.skipped_names) os << " " << s;
      os << "\n";
    }
    if (!m.reordered.empty()) {
      os << "  reordered:";
      for (const auto& s : m.reordered) os << " " << s;
      os << "\n";
    }
  }
  os << r.modules.size() << " module(s), " << sentences << " sentence(s), " << axioms << " axiom(s), exit "
     << r.exit_code << "\n";
  return os.str();
}

std::string report_json(const RunResult& r) {
  using nlohmann::json;
  auto diag = [](const Diagnostic& d) {
    return json{{"severity", d.severity}, {"file", d.file}, {"line", d.loc.line}, {"column", d.loc.col},
                {"message", d.message}};
  };
  json mods = json::array();
  int sentences = 0, axioms = 0;
  for (const auto& m : r.modules) {
    json axs = json::array();
    for (const auto& a : m.axioms)
      axs.push_back({{"name", a.name}, {"category", a.category}, {"reason", a.reason}, {"used_by", a.used_by}});
    json ds = json::array();
    std::vector<Diagnostic> sorted = m.diagnostics;
    std::stable_sort(sorted.begin(), sorted.end(), diag_less);
    for (const auto& d : sorted) ds.push_back(diag(d));
    mods.push_back({{"module", m.module},
                    {"source", m.source},
                    {"output", m.output},
                    {"skipped", m.skipped},
                    {"sentences", m.sentences},
                    {"definitions", m.definitions},
                    {"axioms", axs},
                    {"skipped_names", m.skipped_names},
                    {"reordered", m.reordered},
                    {"diagnostics", ds}});
    sentences += m.sentences;
    axioms += static_cast<int>(m.axioms.size());
  }
  json errs = json::array();
  for (const auto& e : r.errors) errs.push_back(diag(e));
  json doc = {{"version", 1},
              {"exit_code", r.exit_code},
              {"modules", mods},
              {"errors", errs},
              {"totals", {{"modules", r.modules.size()}, {"sentences", sentences}, {"axioms", axioms}}}};
  return doc.dump(2) + "\n";
}

}  // namespace totalizer
