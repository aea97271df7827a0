#pragma once

#include <stdexcept>
#include <string>

namespace fqpat {

// Error categories. Validation errors map to CLI exit code 2, resource caps
// to exit code 3, internal invariant breaches to exit code 4.
enum class Errc {
  NotAPrimePower,
  DimensionMismatch,
  CharTwo,
  DuplicatePoints,
  WrongCardinality,
  EmptySet,
  TooLarge,
  BadParams,
  Internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const { return code_; }
  bool is_cap() const { return code_ == Errc::TooLarge; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace fqpat
