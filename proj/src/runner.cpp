#include "probeable/runner.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/syscall.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <cstring>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "probeable/literal.hpp"

extern char** environ;

namespace probeable {

std::string_view fault_name(FaultKind k) {
  switch (k) {
    case FaultKind::Crash: return "crash";
    case FaultKind::Timeout: return "timeout";
    case FaultKind::MalformedOutput: return "malformed_output";
    case FaultKind::AdapterError: return "adapter_error";
  }
  return "?";
}

CallOutcome CallOutcome::faulted(FaultKind kind, std::string detail) {
  if (detail.empty()) detail = std::string(fault_name(kind));
  return CallOutcome(Fault{kind, std::move(detail)});
}

std::string CallOutcome::describe() const {
  if (ok()) return render_literal(value());
  return std::string(fault_name(fault().kind)) + ": " + fault().detail;
}

CallOutcome FunctionCallable::call(const Args& args) {
  try {
    return CallOutcome::returned(fn_(args));
  } catch (const std::exception& e) {
    return CallOutcome::faulted(FaultKind::Crash, e.what());
  } catch (...) {
    return CallOutcome::faulted(FaultKind::Crash, "unknown exception");
  }
}

namespace {

using SteadyClock = std::chrono::steady_clock;

enum class ReadStatus { Line, Eof, Timeout, Overflow, Woken };

std::string describe_status(int status) {
  if (WIFEXITED(status)) return "exit status " + std::to_string(WEXITSTATUS(status));
  if (WIFSIGNALED(status)) return "killed by signal " + std::to_string(WTERMSIG(status));
  return "status " + std::to_string(status);
}

int poll_timeout(SteadyClock::duration remaining) {
  const auto ms = std::chrono::ceil<std::chrono::milliseconds>(remaining).count();
  return static_cast<int>(std::clamp<long long>(ms, 0, 60000));
}

}  // namespace

struct RunnerHandle::Impl {
  Submission submission;
  RunnerOptions options;

  std::mutex call_mutex;  // one call at a time
  std::mutex proc_mutex;  // guards pid for cross-thread shutdown
  std::atomic<bool> closed{false};
  int wake_read = -1;
  int wake_write = -1;

  pid_t pid = -1;
  int sock = -1;
  std::string buffer;
  std::uint64_t next_id = 1;
  int version = 0;
  std::atomic<int> launches{0};

  ~Impl() {
    if (wake_read >= 0) ::close(wake_read);
    if (wake_write >= 0) ::close(wake_write);
  }

  ReadStatus read_line(SteadyClock::time_point deadline, std::string& line) {
    for (;;) {
      const auto nl = buffer.find('\n');
      if (nl != std::string::npos) {
        if (nl > options.max_response_bytes) return ReadStatus::Overflow;
        line = buffer.substr(0, nl);
        buffer.erase(0, nl + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return ReadStatus::Line;
      }
      if (buffer.size() > options.max_response_bytes) return ReadStatus::Overflow;
      const auto now = SteadyClock::now();
      if (now >= deadline) return ReadStatus::Timeout;
      pollfd fds[2] = {{sock, POLLIN, 0}, {wake_read, POLLIN, 0}};
      const int r = ::poll(fds, 2, poll_timeout(deadline - now));
      if (r < 0) {
        if (errno == EINTR) continue;
        return ReadStatus::Eof;
      }
      if (fds[1].revents != 0) return ReadStatus::Woken;
      if (r == 0) continue;
      if ((fds[0].revents & (POLLIN | POLLHUP | POLLERR)) != 0) {
        char chunk[16384];
        const ssize_t n = ::recv(sock, chunk, sizeof chunk, 0);
        if (n == 0) return ReadStatus::Eof;
        if (n < 0) {
          if (errno == EINTR || errno == EAGAIN) continue;
          return ReadStatus::Eof;
        }
        buffer.append(chunk, static_cast<std::size_t>(n));
      }
    }
  }

  // Reaps the child, giving it a moment to exit by itself first. Returns a
  // description of how it ended.
  std::string stop_child(bool graceful) {
    std::string how = "killed";
    std::lock_guard lock(proc_mutex);
    if (pid > 0) {
      int status = 0;
      bool reaped = false;
      if (graceful) {
        for (int i = 0; i < 50 && !reaped; ++i) {
          const pid_t r = ::waitpid(pid, &status, WNOHANG);
          if (r == pid) {
            reaped = true;
          } else {
            std::this_thread::sleep_for(std::chrono::milliseconds(2));
          }
        }
      }
      ::kill(-pid, SIGKILL);
      if (!reaped) {
        ::kill(pid, SIGKILL);
        while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
        }
        if (graceful) how = describe_status(status);
      } else {
        how = describe_status(status);
      }
      pid = -1;
    }
    if (sock >= 0) {
      ::close(sock);
      sock = -1;
    }
    buffer.clear();
    return how;
  }

  // Launches the child and consumes the handshake; returns an error text on
  // failure.
  std::string launch() {
    int sv[2];
    if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, sv) != 0) {
      return std::string("socketpair failed: ") + std::strerror(errno);
    }
    const int devnull = options.inherit_stderr ? -1 : ::open("/dev/null", O_WRONLY | O_CLOEXEC);
    std::string cmd = submission.entry_command;
    std::string dir = submission.working_dir;
    char sh[] = "/bin/sh";
    char dash_c[] = "-c";
    char* argv[] = {sh, dash_c, cmd.data(), nullptr};
    const long max_fd = ::sysconf(_SC_OPEN_MAX);

    const pid_t child = ::fork();
    if (child < 0) {
      ::close(sv[0]);
      ::close(sv[1]);
      if (devnull >= 0) ::close(devnull);
      return std::string("fork failed: ") + std::strerror(errno);
    }
    if (child == 0) {
      ::setpgid(0, 0);
      ::signal(SIGPIPE, SIG_DFL);
      sigset_t none;
      sigemptyset(&none);
      ::sigprocmask(SIG_SETMASK, &none, nullptr);
      if (!dir.empty() && ::chdir(dir.c_str()) != 0) ::_exit(126);
      ::dup2(sv[1], 0);
      ::dup2(sv[1], 1);
      if (devnull >= 0) ::dup2(devnull, 2);
      if (::syscall(SYS_close_range, 3U, ~0U, 0U) != 0) {
        for (long fd = 3; fd < max_fd; ++fd) ::close(static_cast<int>(fd));
      }
      ::execve(sh, argv, environ);
      ::_exit(127);
    }
    ::setpgid(child, child);
    ::close(sv[1]);
    if (devnull >= 0) ::close(devnull);
    {
      std::lock_guard lock(proc_mutex);
      pid = child;
      sock = sv[0];
    }
    buffer.clear();
    launches.fetch_add(1);

    std::string line;
    const auto status = read_line(SteadyClock::now() + options.startup_timeout, line);
    switch (status) {
      case ReadStatus::Line: break;
      case ReadStatus::Eof: return "adapter exited before its handshake (" + stop_child(true) + ")";
      case ReadStatus::Timeout:
        stop_child(false);
        return "no handshake within " + std::to_string(options.startup_timeout.count()) + " ms";
      case ReadStatus::Overflow: stop_child(false); return "malformed handshake: line too long";
      case ReadStatus::Woken: stop_child(false); return "runner shut down during startup";
    }
    nlohmann::json hs;
    try {
      hs = nlohmann::json::parse(line);
    } catch (const std::exception&) {
      stop_child(false);
      return "malformed handshake: not a JSON object";
    }
    if (hs.is_object() && hs.contains("error") && hs["error"].is_string()) {
      stop_child(false);
      return "adapter failed to load: " + hs["error"].get<std::string>();
    }
    if (!hs.is_object() || !hs.contains("probeable_adapter") || !hs["probeable_adapter"].is_number_integer()) {
      stop_child(false);
      return "malformed handshake: missing probeable_adapter version";
    }
    const int v = hs["probeable_adapter"].get<int>();
    if (v != 1) {
      stop_child(false);
      return "unsupported protocol version " + std::to_string(v);
    }
    if (hs.contains("problem") && hs["problem"].is_string() && !submission.problem.empty() &&
        hs["problem"].get<std::string>() != submission.problem) {
      stop_child(false);
      return "adapter serves problem " + hs["problem"].get<std::string>() + ", expected " + submission.problem;
    }
    version = v;
    return {};
  }

  bool send_all(const std::string& data) {
    std::size_t off = 0;
    while (off < data.size()) {
      const ssize_t n = ::send(sock, data.data() + off, data.size() - off, MSG_NOSIGNAL);
      if (n < 0) {
        if (errno == EINTR) continue;
        return false;
      }
      off += static_cast<std::size_t>(n);
    }
    return true;
  }

  CallOutcome malformed(std::string detail) {
    stop_child(false);
    return CallOutcome::faulted(FaultKind::MalformedOutput, std::move(detail));
  }

  CallOutcome call(const Args& args, std::chrono::milliseconds timeout) {
    std::lock_guard lock(call_mutex);
    if (closed.load()) return CallOutcome::faulted(FaultKind::Crash, "runner handle is shut down");
    if (pid < 0) {
      std::string err = launch();
      if (!err.empty()) return CallOutcome::faulted(FaultKind::AdapterError, err);
    }
    const std::uint64_t id = next_id++;
    nlohmann::json req;
    req["id"] = id;
    req["args"] = nlohmann::json::array();
    for (const auto& a : args) req["args"].push_back(render_literal(a));
    if (!send_all(req.dump() + "\n")) {
      return CallOutcome::faulted(FaultKind::Crash, "adapter stopped reading (" + stop_child(true) + ")");
    }

    std::string line;
    switch (read_line(SteadyClock::now() + timeout, line)) {
      case ReadStatus::Line: break;
      case ReadStatus::Eof:
        return CallOutcome::faulted(FaultKind::Crash, "adapter exited during call (" + stop_child(true) + ")");
      case ReadStatus::Timeout:
        stop_child(false);
        return CallOutcome::faulted(FaultKind::Timeout, "no response within " + std::to_string(timeout.count()) + " ms");
      case ReadStatus::Overflow:
        return malformed("response exceeds " + std::to_string(options.max_response_bytes) + " bytes");
      case ReadStatus::Woken:
        stop_child(false);
        return CallOutcome::faulted(FaultKind::Crash, "runner shut down during call");
    }

    nlohmann::json resp;
    try {
      resp = nlohmann::json::parse(line);
    } catch (const std::exception&) {
      return malformed("response is not JSON");
    }
    if (!resp.is_object()) return malformed("response is not a JSON object");
    if (!resp.contains("id") || !resp["id"].is_number_unsigned() || resp["id"].get<std::uint64_t>() != id) {
      return malformed("response id does not match request " + std::to_string(id));
    }
    if (resp.contains("result")) {
      if (!resp["result"].is_string()) return malformed("result is not a literal string");
      try {
        return CallOutcome::returned(parse_literal(resp["result"].get<std::string>()));
      } catch (const ParseError& e) {
        return malformed("result is not a valid literal: " + std::string(e.what()));
      }
    }
    if (resp.contains("error")) {
      const auto& e = resp["error"];
      return CallOutcome::faulted(FaultKind::Crash, "submission raised: " + (e.is_string() ? e.get<std::string>() : e.dump()));
    }
    return malformed("response has neither result nor error");
  }

  void shutdown() {
    if (!closed.exchange(true) && wake_write >= 0) {
      const char byte = 1;
      [[maybe_unused]] auto n = ::write(wake_write, &byte, 1);
    }
    {
      std::lock_guard lock(proc_mutex);
      if (pid > 0) ::kill(-pid, SIGKILL);
    }
    std::lock_guard lock(call_mutex);
    stop_child(false);
  }
};

RunnerHandle::RunnerHandle(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}

RunnerHandle::~RunnerHandle() {
  if (impl_) impl_->shutdown();
}

std::unique_ptr<RunnerHandle> RunnerHandle::start(const Submission& s, RunnerOptions options) {
  auto impl = std::make_unique<Impl>();
  impl->submission = s;
  impl->options = options;
  int fds[2];
  if (::pipe2(fds, O_CLOEXEC) != 0) throw AdapterStartError(std::string("pipe failed: ") + std::strerror(errno));
  impl->wake_read = fds[0];
  impl->wake_write = fds[1];
  if (s.entry_command.empty()) throw AdapterStartError("empty entry command");
  std::string err = impl->launch();
  if (!err.empty()) throw AdapterStartError(err);
  return std::unique_ptr<RunnerHandle>(new RunnerHandle(std::move(impl)));
}

CallOutcome RunnerHandle::call(const Args& args) { return impl_->call(args, impl_->options.timeout); }

CallOutcome RunnerHandle::call(const Args& args, std::chrono::milliseconds timeout) { return impl_->call(args, timeout); }

void RunnerHandle::shutdown() { impl_->shutdown(); }

int RunnerHandle::protocol_version() const { return impl_->version; }

int RunnerHandle::launches() const { return impl_->launches.load(); }

}  // namespace probeable
