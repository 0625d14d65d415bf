#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "probeable/problem.hpp"

namespace probeable {

/// Raised when a bank document is malformed or breaks an invariant. The
/// message names the problem id (when known) and the violated rule.
class BankError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Bank {
  std::string name;
  std::string digest;  // sha256 of the source document
  std::vector<ProblemDef> problems;

  const ProblemDef* find(std::string_view id) const;
  std::size_t total_omissions() const;
};

/// Parses and validates a bank document. Either every problem loads or a
/// BankError is thrown.
Bank load_bank_text(std::string_view text);
Bank load_bank(const std::filesystem::path& path);

/// Semantic validation of already-built problems (used by load_bank).
void validate_problems(const std::vector<ProblemDef>& problems);

}  // namespace probeable
