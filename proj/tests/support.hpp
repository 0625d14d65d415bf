#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "probeable/bank.hpp"
#include "probeable/config.hpp"
#include "probeable/literal.hpp"
#include "probeable/runner.hpp"
#include "probeable/solutions.hpp"

namespace probeable::testing {

inline const Bank& bundled_bank() {
  static const Bank bank = load_bank(PROBEABLE_BUNDLED_BANK);
  return bank;
}

inline const ProblemDef& problem(const std::string& id) { return *bundled_bank().find(id); }

inline Args args(std::initializer_list<const char*> literals) {
  Args out;
  for (const char* l : literals) out.push_back(parse_literal(l));
  return out;
}

/// In-process callable for a registered solution.
inline FunctionCallable solution_callable(const std::string& name) {
  const Solution* s = find_solution(name);
  if (s == nullptr) throw std::runtime_error("unknown solution " + name);
  return FunctionCallable(s->fn);
}

inline std::string adapter_cmd(const std::string& problem, const std::string& impl, const std::string& fault = "") {
  std::string cmd = shell_quote(PROBEABLE_ADAPTER_PATH) + " --problem " + problem + " --impl " + impl;
  if (!fault.empty()) cmd += " --fault " + fault;
  return cmd;
}

/// Fresh directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("probeable-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace probeable::testing
