#pragma once

#include <stdexcept>
#include <string>

namespace syncrel {

// Every failure the library reports deliberately goes through this one type.
// `kind` drives coarse handling (e.g. CLI exit codes); `name` is a stable
// machine-readable identifier for the precise condition (e.g. "NotFiniteShiftlag").
enum class ErrorKind {
  Parse,             // malformed textual input (regex, model files)
  AlphabetMismatch,  // operands built over incompatible alphabets
  Precondition,      // documented requirement on the inputs was violated
  Unsupported,       // request is outside the decidable/implemented fragment
  Defect,            // internal invariant broke; indicates a bug, not bad input
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string name, const std::string& message)
      : std::runtime_error(name + ": " + message), kind_(kind), name_(std::move(name)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

 private:
  ErrorKind kind_;
  std::string name_;
};

[[noreturn]] inline void throwParse(const std::string& message) {
  throw Error(ErrorKind::Parse, "ParseError", message);
}

[[noreturn]] inline void throwAlphabetMismatch(const std::string& message) {
  throw Error(ErrorKind::AlphabetMismatch, "AlphabetMismatch", message);
}

[[noreturn]] inline void throwPrecondition(const std::string& name, const std::string& message) {
  throw Error(ErrorKind::Precondition, name, message);
}

[[noreturn]] inline void throwUnsupported(const std::string& name, const std::string& message) {
  throw Error(ErrorKind::Unsupported, name, message);
}

[[noreturn]] inline void throwDefect(const std::string& message) {
  throw Error(ErrorKind::Defect, "InternalDefect", message);
}

// Internal invariant check; failures are library bugs by definition.
inline void require(bool condition, const char* message) {
  if (!condition) throwDefect(message);
}

}  // namespace syncrel
