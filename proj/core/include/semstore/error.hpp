#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace semstore {

enum class Errc {
  malformed_iri,
  unknown_prefix,
  invalid_lexical,
  unsupported_datatype,
  duplicate_prefix,
  malformed_prefix_line,
  malformed_line,
  membership_violation,
  syntax_error,
  unbound_select_variable,
  malformed_restriction,
  iteration_limit_exceeded,
  instance_too_large,
  io_error,
};

std::string_view to_string(Errc code);

/// Library-wide exception. `line()` is 1-based and 0 when the error is not
/// tied to a document position.
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message, int line = 0)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        line_(line) {}

  Errc code() const noexcept { return code_; }
  int line() const noexcept { return line_; }

 private:
  Errc code_;
  int line_;
};

}  // namespace semstore
