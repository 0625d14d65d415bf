#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "probeable/problem.hpp"
#include "probeable/runner.hpp"

namespace probeable {

struct OracleAnswer {
  std::vector<std::string> input_echo;  // canonical literal per argument
  std::string output;                   // canonical literal
};

/// Why an oracle query was refused. Never mentions the expected output.
struct OracleRefusal {
  enum class Kind { Parse, Domain };
  Kind kind = Kind::Parse;
  std::size_t argument = 0;               // one-based; 0 for the argument count
  std::optional<std::size_t> position;    // parse errors only
  std::string message;
};

std::string_view refusal_kind_name(OracleRefusal::Kind k);  // parse | domain

using OracleResult = std::variant<OracleAnswer, OracleRefusal>;

OracleResult oracle_query(const ProblemDef& p, const std::vector<std::string>& raw_args);

/// The answer for the problem's seed input.
OracleAnswer seed_answer(const ProblemDef& p);

struct VerifierResult {
  std::size_t passed = 0;
  std::size_t total = 0;
};

/// Runs every verifier suite input; a case passes when the call returns a
/// value grading-equal to the reference output.
VerifierResult verify(const ProblemDef& p, Callable& submission);

}  // namespace probeable
