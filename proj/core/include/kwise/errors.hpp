#pragma once

#include <stdexcept>
#include <string>

namespace kwise {

// Bad caller input: wrong sizes, out-of-range symbols, violated preconditions.
// The CLI maps these to exit code 2.
class domain_error : public std::runtime_error {
 public:
  domain_error(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// An internal identity failed beyond numerical tolerance. Exit code 1.
class consistency_error : public std::runtime_error {
 public:
  consistency_error(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

}  // namespace kwise
