#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>

#include <json.hpp>

#include "probeable/bank.hpp"
#include "probeable/event_log.hpp"
#include "probeable/grader.hpp"
#include "probeable/runner.hpp"

namespace probeable {

enum class Phase { Setup, Phase1, Phase2, Closed };

std::string_view phase_name(Phase p);
std::optional<Phase> parse_phase(std::string_view name);

struct TeamRecord {
  std::string id;
  std::string name;
  std::string token_sha256;
};

struct StoredSubmission {
  std::string digest;
  std::size_t size = 0;
  std::int64_t received_at = 0;
  std::uint64_t seq = 0;
};

/// Everything derivable from the event log.
struct ContestState {
  Phase phase = Phase::Setup;
  std::string bank_digest;
  std::map<std::string, TeamRecord> teams;
  std::map<std::string, std::int64_t> phase_started;
  std::map<std::tuple<std::string, std::string, int>, StoredSubmission> submissions;
  std::map<std::string, std::uint64_t> oracle_queries;
  std::map<std::string, std::uint64_t> verifier_runs;
  std::uint64_t last_seq = 0;

  nlohmann::json to_json() const;
};

/// Folds one event into the state. Events are trusted (validated when they
/// were accepted).
void apply_event(ContestState& state, const Event& e);

ContestState replay(const std::string& bank_digest, const std::vector<Event>& events);

/// A refused request: HTTP-style status plus a machine-readable code.
class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, std::string code, const std::string& message)
      : std::runtime_error(message), status_(status), code_(std::move(code)) {
    body_ = {{"error", {{"kind", code_}, {"message", message}}}};
  }
  ServiceError(int status, nlohmann::json body)
      : std::runtime_error(body.dump()), status_(status), body_(std::move(body)) {
    code_ = body_.at("error").at("kind").get<std::string>();
  }
  int status() const { return status_; }
  const std::string& code() const { return code_; }
  /// {"error": {"kind": ..., "message": ..., ...}}
  const nlohmann::json& body() const { return body_; }

 private:
  int status_;
  std::string code_;
  nlohmann::json body_;
};

using Clock = std::function<std::int64_t()>;

std::int64_t system_clock_ms();

struct ContestOptions {
  std::string admin_token;
  std::filesystem::path blob_dir;
  std::string adapter_command;  // see expand_command
  RunnerOptions runner;
  GradeOptions grade;
  std::size_t max_source_bytes = 256 * 1024;
};

class Contest {
 public:
  /// Rebuilds state from the log's existing events.
  Contest(const Bank& bank, EventLog& log, ContestOptions options, Clock clock = system_clock_ms);

  /// Registers a team; returns its record and the plaintext token (shown once).
  std::pair<TeamRecord, std::string> register_team(const std::string& name);

  nlohmann::json session(const std::string& token) const;
  nlohmann::json problems() const;
  nlohmann::json oracle(const std::string& token, const std::string& problem, const nlohmann::json& body);
  nlohmann::json submit(const std::string& token, const std::string& problem, const nlohmann::json& body);
  nlohmann::json verify(const std::string& token, const std::string& problem);

  nlohmann::json set_phase(const std::string& admin_token, const std::string& phase);
  std::string export_log(const std::string& admin_token) const;
  /// Grades every stored submission (Closed only) and returns heatmap CSV.
  std::string heatmap(const std::string& admin_token);

  std::string state_json() const;
  Phase phase() const;
  std::filesystem::path blob_path(const std::string& digest) const;

 private:
  const TeamRecord& authenticate(const std::string& token) const;
  void require_admin(const std::string& token) const;
  const ProblemDef& problem_or_404(const std::string& id) const;
  Submission make_submission(const std::string& team, const std::string& problem, int attempt,
                             const StoredSubmission& stored) const;
  // Appends and applies under the state lock.
  Event commit(const std::string& team, const std::string& kind, nlohmann::json payload);

  const Bank& bank_;
  EventLog& log_;
  ContestOptions options_;
  Clock clock_;
  mutable std::mutex mutex_;
  ContestState state_;
  std::map<std::string, std::string> token_index_;  // token sha256 -> team id
  std::optional<std::pair<std::uint64_t, std::string>> heatmap_cache_;
};

}  // namespace probeable
