#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

namespace probeable {

struct ServiceConfig {
  std::filesystem::path bank_path;
  std::filesystem::path log_path;
  std::filesystem::path blob_dir;
  std::string bind_host = "127.0.0.1";
  int port = 8080;
  std::string admin_token;
  int timeout_ms = 2000;
  /// Shell template; {file}, {function} and {problem} are substituted with
  /// shell-quoted values.
  std::string adapter_command;
  std::uint64_t grade_seed = 1;
  std::size_t grade_samples = 300;
  std::filesystem::path static_dir;
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

std::optional<std::string> process_env(const std::string& name);

/// Reads a JSON config file, then applies PROBEABLE_* environment overrides.
/// Relative paths in the file resolve against the file's directory. Throws
/// std::runtime_error on unknown keys or bad values.
ServiceConfig load_config(const std::filesystem::path& path, const EnvLookup& env = process_env);

/// Replaces {file}, {function} and {problem} with single-quoted shell words.
std::string expand_command(const std::string& tmpl, const std::string& file, const std::string& function,
                           const std::string& problem);

std::string shell_quote(const std::string& s);

}  // namespace probeable
