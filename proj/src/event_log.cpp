#include "probeable/event_log.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace probeable {

nlohmann::json Event::to_json() const {
  return {{"seq", seq}, {"ts", timestamp_ms}, {"team", team}, {"kind", kind}, {"payload", payload}};
}

Event Event::from_json(const nlohmann::json& j) {
  Event e;
  e.seq = j.at("seq").get<std::uint64_t>();
  e.timestamp_ms = j.at("ts").get<std::int64_t>();
  e.team = j.at("team").get<std::string>();
  e.kind = j.at("kind").get<std::string>();
  e.payload = j.at("payload");
  return e;
}

std::unique_ptr<EventLog> EventLog::in_memory() { return std::unique_ptr<EventLog>(new EventLog()); }

std::unique_ptr<EventLog> EventLog::open(const std::filesystem::path& path) {
  std::unique_ptr<EventLog> log(new EventLog());
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  log->fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (log->fd_ < 0) throw std::runtime_error("cannot open event log " + path.string() + ": " + std::strerror(errno));
  if (::flock(log->fd_, LOCK_EX | LOCK_NB) != 0) {
    throw std::runtime_error("event log " + path.string() + " is in use by another process");
  }

  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  std::size_t pos = 0;
  std::size_t line_no = 0;
  std::size_t kept = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    ++line_no;
    if (nl == std::string::npos) break;  // torn tail
    const std::string line = text.substr(pos, nl - pos);
    pos = nl + 1;
    kept = pos;
    if (line.empty()) continue;
    Event e;
    try {
      e = Event::from_json(nlohmann::json::parse(line));
    } catch (const std::exception& ex) {
      throw std::runtime_error("event log " + path.string() + " line " + std::to_string(line_no) + ": " + ex.what());
    }
    const std::uint64_t expected = log->events_.empty() ? 1 : log->events_.back().seq + 1;
    if (e.seq != expected) {
      throw std::runtime_error("event log " + path.string() + " line " + std::to_string(line_no) +
                               ": sequence number " + std::to_string(e.seq) + ", expected " + std::to_string(expected));
    }
    log->events_.push_back(std::move(e));
  }
  if (kept < text.size() && ::ftruncate(log->fd_, static_cast<off_t>(kept)) != 0) {
    throw std::runtime_error("cannot truncate torn event log tail: " + std::string(std::strerror(errno)));
  }
  ::lseek(log->fd_, 0, SEEK_END);
  return log;
}

EventLog::~EventLog() {
  if (fd_ >= 0) ::close(fd_);
}

Event EventLog::append(std::int64_t timestamp_ms, std::string team, std::string kind, nlohmann::json payload) {
  std::lock_guard lock(mutex_);
  Event e;
  e.seq = events_.empty() ? 1 : events_.back().seq + 1;
  e.timestamp_ms = timestamp_ms;
  e.team = std::move(team);
  e.kind = std::move(kind);
  e.payload = std::move(payload);
  if (fd_ >= 0) {
    const std::string line = e.to_json().dump() + "\n";
    std::size_t off = 0;
    while (off < line.size()) {
      const ssize_t n = ::write(fd_, line.data() + off, line.size() - off);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw std::runtime_error(std::string("event log write failed: ") + std::strerror(errno));
      }
      off += static_cast<std::size_t>(n);
    }
    ::fdatasync(fd_);
  }
  events_.push_back(e);
  return e;
}

std::vector<Event> EventLog::events() const {
  std::lock_guard lock(mutex_);
  return events_;
}

std::string EventLog::export_lines() const {
  std::lock_guard lock(mutex_);
  std::string out;
  for (const auto& e : events_) out += e.to_json().dump() + "\n";
  return out;
}

std::uint64_t EventLog::last_seq() const {
  std::lock_guard lock(mutex_);
  return events_.empty() ? 0 : events_.back().seq;
}

}  // namespace probeable
