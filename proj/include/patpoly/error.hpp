#pragma once

#include <stdexcept>
#include <string>

namespace patpoly {

enum class ErrorCode {
  parse_error,
  not_in_lattice,
  not_in_span,
  degenerate_input,
  dependent_columns,
  budget_exceeded,
  negative_entry,
  empty_class,
  unknown_id,
  not_lattice,
  not_distributive,
  verification_failure,
  mismatch_against_ehrhart,
  invalid_argument,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace patpoly
