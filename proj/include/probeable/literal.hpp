#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "probeable/value.hpp"

namespace probeable {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, std::string message);

  /// Byte offset into the parsed text, at most its length.
  std::size_t position() const { return position_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t position_;
  std::string message_;
};

/// Parses one literal:
///
///   value  := "None" | "True" | "False" | "nan" | "-nan" | int | float
///           | string | list | tuple
///   int    := ["-"] digits
///   float  := ["-"] digits "." digits
///   string := quoted with ' or ", escapes \' \" \\ \n \t
///   list   := "[" [value {"," value}] "]"
///   tuple  := "(" ")" | "(" value "," [value {"," value}] ")"
///
/// Whitespace is allowed between tokens. Throws ParseError.
Value parse_literal(std::string_view text);

/// Parses one literal per argument. On failure the ParseError carries the
/// position within the offending argument; `argument_index` receives its
/// zero-based index.
Args parse_arguments(const std::vector<std::string>& texts, std::size_t* argument_index = nullptr);

/// Canonical form: ", " separators, single-quoted strings, shortest
/// round-trip floats in positional notation, one-element tuples as "(x,)".
std::string render_literal(const Value& v);

std::vector<std::string> render_arguments(const Args& args);

/// "(a, b)" style rendering of an argument tuple, for reports.
std::string render_call(const Args& args);

}  // namespace probeable
