// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace totalizer {

struct Loc {
  int line = 0;
  int col = 0;
};

class Error : public std::runtime_error {
 public:
  Error(std::string kind, std::string msg, Loc loc = {})
      : std::runtime_error(format(kind, msg, loc)), kind_(std::move(kind)), msg_(std::move(msg)), loc_(loc) {}

  const std::string& kind() const { return kind_; }
  const std::string& message() const { return msg_; }
  Loc loc() const { return loc_; }

 private:
  static std::string format(const std::string& kind, const std::string& msg, Loc loc) {
    std::string s = kind;
    if (loc.line > 0) s += " at " + std::to_string(loc.line) + ":" + std::to_string(loc.col);
    return s + ": " + msg;
  }
  std::string kind_;
  std::string msg_;
  Loc loc_;
};

struct LayoutError : Error {
  LayoutError(std::string msg, Loc loc) : Error("LayoutError", std::move(msg), loc) {}
};
struct ParseError : Error {
  ParseError(std::string msg, Loc loc) : Error("ParseError", std::move(msg), loc) {}
};
struct EditParseError : Error {
  EditParseError(int line, std::string reason) : Error("EditParseError", std::move(reason), Loc{line, 1}) {}
};
struct EncodeError : Error {
  explicit EncodeError(std::string msg) : Error("EncodeError", std::move(msg)) {}
};
struct ClashError : Error {
  explicit ClashError(std::string msg) : Error("ClashError", std::move(msg)) {}
};
// A construct outside the supported subset; the enclosing declaration becomes an axiom.
struct Unsupported : Error {
  explicit Unsupported(std::string msg, Loc loc = {}) : Error("Unsupported", std::move(msg), loc) {}
};
struct UnknownField : Error {
  UnknownField(const std::string& con, const std::string& field)
      : Error("UnknownField", "constructor " + con + " has no field " + field) {}
};
struct MissingMethod : Error {
  MissingMethod(const std::string& cls, const std::string& method)
      : Error("MissingMethod", "instance of " + cls + " lacks method " + method) {}
};
struct CycleError : Error {
  explicit CycleError(std::string msg) : Error("CycleError", std::move(msg)) {}
};

}  // namespace totalizer
