#pragma once

// Line-oriented pulse-program text format:
//
//   # free comment
//   # @label <text>          metadata (label, kappa and arbitrary key/value pairs)
//   # @kappa <number>
//   # @<key> <value>
//   pulse  targets=<list> angle=<deg> phase=<x|y|-x|-y|deg>
//   wpulse targets=<list> amp=<Hz> dur=<time> phase=<...>
//   delay  <time>
//   zrot   target=<k> angle=<deg>
//
// Time literals are <float><us|ms|s>; amplitudes accept an optional Hz/kHz suffix.

#include <stdexcept>
#include <string>
#include <string_view>

#include "trispin/pulse/program.hpp"

namespace trispin::pulse {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

PulseProgram parse_program(std::string_view text);

/// Deterministic; parse_program(serialize_program(p)) reserializes byte-identically.
std::string serialize_program(const PulseProgram& program);

}  // namespace trispin::pulse
