#pragma once
#include <stdexcept>
#include <string>

namespace terp {

// Malformed or inconsistent input (CLI exit code 2).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A well-posed computation whose mathematical answer is a failure
// (non-constant hermitian form, degenerate limit, ...). CLI exit code 1.
struct MathError : std::runtime_error {
  std::string kind;
  MathError(std::string k, const std::string& what) : std::runtime_error(what), kind(std::move(k)) {}
};

}  // namespace terp
