#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "probeable/bank.hpp"
#include "probeable/runner.hpp"

namespace probeable {

enum class Verdict { Pass, Fail, Error };

std::string_view verdict_name(Verdict v);  // pass | fail | error

/// One mismatching or faulting input.
struct Evidence {
  Args input;
  std::string expected;  // canonical literal
  std::string actual;    // canonical literal or "<fault kind>: <detail>"
};

inline constexpr std::size_t kMaxEvidence = 3;

/// Verdict of one differential test over a list of inputs.
struct TestResult {
  Verdict verdict = Verdict::Pass;
  std::size_t inputs_run = 0;
  std::vector<Evidence> evidence;
};

struct OmissionVerdict {
  std::string omission_id;
  Category category = Category::D;
  Verdict simple = Verdict::Pass;
  /// Covers the simple cases, the class boundary inputs and the samples.
  Verdict class_result = Verdict::Pass;
  std::vector<Evidence> evidence;
};

struct GradeOptions {
  std::uint64_t seed = 1;
  std::size_t samples = 300;
  std::size_t catch_all_samples = 1000;
};

struct EvalReport {
  std::string bank_digest;
  std::string team;
  std::string problem;
  int attempt = 1;
  std::uint64_t seed = 0;
  TestResult base;
  std::vector<OmissionVerdict> omissions;
  TestResult catch_all;
  std::string start_error;  // adapter could not be started

  /// base pass and every omission class pass.
  bool all_targeted_pass() const;
};

/// Runs `inputs` comparing reference and submission outputs; stops at the
/// first fault or once kMaxEvidence mismatches are collected.
TestResult run_differential(const ProblemDef& p, Comparison mode, const std::vector<Args>& inputs, Callable& submission);

OmissionVerdict grade_omission(const ProblemDef& p, const Omission& o, Callable& submission, std::uint64_t seed,
                               std::size_t n_samples);

/// Grades an already-running submission against one problem.
EvalReport grade_callable(const Bank& bank, const ProblemDef& p, Callable& submission, const GradeOptions& options);

/// Starts the submission's adapter and grades it. A start failure yields an
/// all-error report.
EvalReport grade_submission(const Bank& bank, const ProblemDef& p, const Submission& s, const GradeOptions& options,
                            const RunnerOptions& runner = {});

struct HeatmapCell {
  std::string problem;
  Category category = Category::D;
  double fraction = 0.0;
};

/// One cell per (problem, category) present in the bank and covered by at
/// least one report, in bank order. Throws std::invalid_argument on reports
/// from a different bank or for unknown problems.
std::vector<HeatmapCell> aggregate_heatmap(const Bank& bank, const std::vector<EvalReport>& reports);

struct DiffResult {
  bool equivalent = true;
  std::size_t inputs_run = 0;
  std::optional<Args> input;  // first divergence
  std::string output1;
  std::string output2;
};

/// Compares two submissions on the catch-all class. Faults count as
/// divergence unless both sides fault with the same kind.
DiffResult diff_equivalent(const ProblemDef& p, Callable& s1, Callable& s2, std::uint64_t seed, std::size_t n_samples);

}  // namespace probeable
