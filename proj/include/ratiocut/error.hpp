#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ratiocut {

enum class ErrorCode {
  invalid_parameter,
  degenerate_scale,
  parse_error,
  negative_weight,
  self_loop,
  conflicting_edge,
  length_mismatch,
  undefined_energy,
  invalid_partition,
  disconnected_graph,
  numerical_failure,
  too_large,
  io_error,
};

const char* to_string(ErrorCode code);

// Every failure raised by the library carries a code so that front ends can
// map it to an exit status without string matching.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorCode::parse_error,
              "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

}  // namespace ratiocut
