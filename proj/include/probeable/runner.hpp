#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "probeable/value.hpp"

namespace probeable {

enum class FaultKind { Crash, Timeout, MalformedOutput, AdapterError };

std::string_view fault_name(FaultKind k);  // crash | timeout | malformed_output | adapter_error

struct Fault {
  FaultKind kind = FaultKind::Crash;
  std::string detail;
};

/// Result of one call: Returned(value) or Faulted(kind, detail).
class CallOutcome {
 public:
  static CallOutcome returned(Value v) { return CallOutcome(std::move(v)); }
  static CallOutcome faulted(FaultKind kind, std::string detail);

  bool ok() const { return std::holds_alternative<Value>(state_); }
  const Value& value() const { return std::get<Value>(state_); }
  const Fault& fault() const { return std::get<Fault>(state_); }

  /// Canonical literal for Returned, "<fault kind>: <detail>" otherwise.
  std::string describe() const;

 private:
  explicit CallOutcome(Value v) : state_(std::move(v)) {}
  explicit CallOutcome(Fault f) : state_(std::move(f)) {}
  std::variant<Value, Fault> state_;
};

/// Anything that can be asked to evaluate one argument tuple.
class Callable {
 public:
  virtual ~Callable() = default;
  virtual CallOutcome call(const Args& args) = 0;
};

/// Runs a native function in-process; exceptions become Faulted(crash).
class FunctionCallable final : public Callable {
 public:
  explicit FunctionCallable(std::function<Value(const Args&)> fn) : fn_(std::move(fn)) {}
  CallOutcome call(const Args& args) override;

 private:
  std::function<Value(const Args&)> fn_;
};

struct Submission {
  std::string team;
  std::string problem;
  int attempt = 1;
  std::string entry_command;  // run through /bin/sh -c
  std::string working_dir;    // empty: inherit
  std::string source_ref;     // blob digest, when stored by the service
  std::int64_t received_at = 0;
};

struct RunnerOptions {
  std::chrono::milliseconds timeout{2000};
  std::chrono::milliseconds startup_timeout{5000};
  std::size_t max_response_bytes = 64 * 1024;
  bool inherit_stderr = false;
};

/// Raised by RunnerHandle::start when the adapter cannot be launched or its
/// handshake is missing or malformed.
class AdapterStartError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One child process speaking the line protocol. Calls are sequential; a
/// faulted child is killed and relaunched before the next call.
class RunnerHandle final : public Callable {
 public:
  static std::unique_ptr<RunnerHandle> start(const Submission& s, RunnerOptions options = {});

  ~RunnerHandle() override;
  RunnerHandle(const RunnerHandle&) = delete;
  RunnerHandle& operator=(const RunnerHandle&) = delete;

  CallOutcome call(const Args& args) override;
  CallOutcome call(const Args& args, std::chrono::milliseconds timeout);

  /// Terminates the child. Idempotent; an in-flight call returns
  /// Faulted(crash). Safe to call from another thread.
  void shutdown();

  int protocol_version() const;
  /// Number of child processes launched so far, including the first.
  int launches() const;

  struct Impl;

 private:
  explicit RunnerHandle(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

}  // namespace probeable
