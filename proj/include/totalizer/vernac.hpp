// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <set>
#include <string>
#include <vector>

#include "totalizer/core.hpp"

namespace totalizer {

struct VernField {
  std::string name;
  CoreType type;
};

struct VernSentence {
  enum Kind {
    Definition, LocalDefinition, ProgramFixpoint, Inductive, Class, Record, Instance, Axiom, LocalAxiom, Raw
  } kind = Definition;
  std::string name;
  std::vector<CoreBinder> binders;
  std::vector<CoreType> type;          // optional
  std::vector<CoreTerm> body;          // optional
  std::vector<CoreType> type_body;     // type synonym right-hand side
  std::vector<VernField> constructors; // Inductive
  std::vector<VernField> fields;       // Class, Record
  std::vector<std::pair<std::string, CoreTerm>> values;  // Instance fields
  std::string measure;                 // ProgramFixpoint payload
  std::string raw;                     // Raw text, printed verbatim
  std::set<std::string> raw_defines;   // names a Raw sentence defines
  std::set<std::string> raw_refs;      // names a Raw sentence references
  std::string comment;                 // printed after the sentence
  std::vector<CoreType> fallback;      // type used when the sentence must become an axiom
  std::string origin;                  // Haskell name, for reports
  bool injected = false;               // support axioms, not counted as failures

  // Names this sentence brings into scope.
  std::set<std::string> defines() const;
  // Names it references and does not bind itself.
  std::set<std::string> references() const;
};

std::string print_sentence(const VernSentence& s);

// Dependency order: a sentence follows every sentence defining a name it uses. Among ready
// sentences the earliest in `v` goes first. `before` lists extra (first, second) name pairs.
// Throws CycleError naming the sentences of a dependency cycle; `cycle` receives their indices.
std::vector<VernSentence> topo_sort(std::vector<VernSentence> v,
                                    const std::vector<std::pair<std::string, std::string>>& before,
                                    std::vector<std::vector<size_t>>* cycles = nullptr);

// The same order as indices into `v`.
std::vector<size_t> topo_order(const std::vector<VernSentence>& v,
                               const std::vector<std::pair<std::string, std::string>>& before,
                               std::vector<std::vector<size_t>>* cycles = nullptr);

// Axiom replacing a sentence that cannot be translated.
VernSentence axiomatize(const VernSentence& s, const std::string& reason);
VernSentence failure_axiom(const std::string& name, const std::vector<CoreType>& type, const std::string& reason,
                           const std::string& origin);

// `patternFailure` and `unsafeFix` declarations for the names the sentences use.
std::vector<VernSentence> support_axioms(const std::vector<VernSentence>& v);

// Modules of qualified references, sorted, without `self`.
std::vector<std::string> required_modules(const std::vector<VernSentence>& v, const std::string& self);

struct VernFile {
  std::string module;
  std::string source;  // Haskell file name, for the header comment
  std::vector<std::string> imports;
  std::vector<VernSentence> sentences;
};

std::string print_file(const VernFile& f);

// Fixed text of `support/HsToCoqSupport.v`.
const std::string& support_file_text();
// Names the support file defines.
const std::set<std::string>& support_names();

// Module part of a qualified target identifier, or empty.
std::string qualifier_of(const std::string& name);

}  // namespace totalizer
