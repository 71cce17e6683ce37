// SPDX-License-Identifier: Apache-2.0
#include "totalizer/qualname.hpp"

#include <cctype>

namespace totalizer {

const char* namespace_name(Namespace ns) {
  switch (ns) {
    case Namespace::Type:
      return "type";
    case Namespace::Value:
      return "value";
    case Namespace::Constructor:
      return "constructor";
    case Namespace::Class:
      return "class";
  }
  return "value";
}

QualName qn(std::string module, std::string base, Namespace ns) {
  return QualName{std::move(module), std::move(base), ns};
}

QualName split_qualified(const std::string& text, Namespace ns) {
  // Consume `ConId.` prefixes; what remains is the base, which may itself contain dots (`.`, `..`).
  size_t pos = 0;
  size_t module_end = 0;
  while (pos < text.size() && std::isupper(static_cast<unsigned char>(text[pos]))) {
    size_t j = pos;
    while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' || text[j] == '\''))
      ++j;
    if (j < text.size() && text[j] == '.' && j + 1 < text.size()) {
      module_end = j;
      pos = j + 1;
    } else {
      break;
    }
  }
  if (module_end == 0) return QualName{"", text, ns};
  return QualName{text.substr(0, module_end), text.substr(pos), ns};
}

bool is_symbolic(const std::string& name) {
  if (name.empty()) return false;
  if (name == "[]" || name == "()" || name.front() == '(') return false;
  unsigned char c = static_cast<unsigned char>(name.front());
  return !(std::isalnum(c) || c == '_' || c == '\'');
}

bool is_conid(const std::string& name) {
  return !name.empty() && (std::isupper(static_cast<unsigned char>(name.front())) || name.front() == ':');
}

}  // namespace totalizer
