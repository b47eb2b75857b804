#pragma once

#include <stdexcept>
#include <string>

namespace homlab {

enum class ErrorCode {
  invalid_parameter,
  invalid_input,
  size_limit,
  no_coloring,
  unsupported_representation,
  corrupt_polymorphism,
  no_generator,
  out_of_range,
  internal_consistency,
  degenerate_step,
  certificate_violation,
  pipeline_error,
  parse_error,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace homlab
