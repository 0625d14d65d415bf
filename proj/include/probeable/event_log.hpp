#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

namespace probeable {

struct Event {
  std::uint64_t seq = 0;
  std::int64_t timestamp_ms = 0;
  std::string team;  // empty for organizer actions
  std::string kind;  // team_registered | phase_change | oracle_query | submission | verifier_run
  nlohmann::json payload = nlohmann::json::object();

  nlohmann::json to_json() const;
  static Event from_json(const nlohmann::json& j);
};

/// Append-only sequence of events, optionally mirrored to a JSON-lines file.
/// Appends are serialized; the file is locked against a second writer.
class EventLog {
 public:
  /// Opens (creating if needed) and loads a log file. A torn final line left
  /// by an interrupted write is discarded. Throws std::runtime_error on a
  /// corrupt log or when another process holds the file.
  static std::unique_ptr<EventLog> open(const std::filesystem::path& path);
  static std::unique_ptr<EventLog> in_memory();

  ~EventLog();
  EventLog(const EventLog&) = delete;
  EventLog& operator=(const EventLog&) = delete;

  /// Assigns the next sequence number, persists, and returns the event.
  Event append(std::int64_t timestamp_ms, std::string team, std::string kind, nlohmann::json payload);

  std::vector<Event> events() const;
  std::string export_lines() const;
  std::uint64_t last_seq() const;

 private:
  EventLog() = default;
  mutable std::mutex mutex_;
  std::vector<Event> events_;
  int fd_ = -1;
};

}  // namespace probeable
