#include "probeable/config.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace probeable {

std::optional<std::string> process_env(const std::string& name) {
  const char* v = std::getenv(name.c_str());
  if (v == nullptr) return std::nullopt;
  return std::string(v);
}

namespace {

void parse_bind(ServiceConfig& c, const std::string& bind) {
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) throw std::runtime_error("bind must be host:port, got '" + bind + "'");
  c.bind_host = bind.substr(0, colon);
  try {
    c.port = std::stoi(bind.substr(colon + 1));
  } catch (const std::exception&) {
    throw std::runtime_error("bad port in bind '" + bind + "'");
  }
  if (c.port < 0 || c.port > 65535) throw std::runtime_error("port out of range in bind '" + bind + "'");
}

int parse_positive(const std::string& what, const std::string& text) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used == text.size() && v > 0) return v;
  } catch (const std::exception&) {
  }
  throw std::runtime_error(what + " must be a positive integer, got '" + text + "'");
}

}  // namespace

ServiceConfig load_config(const std::filesystem::path& path, const EnvLookup& env) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("config " + path.string() + " is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw std::runtime_error("config must be a JSON object");
  const auto base = path.parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() || p.empty() ? fp : base / fp;
  };

  ServiceConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "bank") c.bank_path = resolve(value.get<std::string>());
      else if (key == "log") c.log_path = resolve(value.get<std::string>());
      else if (key == "blob_dir") c.blob_dir = resolve(value.get<std::string>());
      else if (key == "bind") parse_bind(c, value.get<std::string>());
      else if (key == "admin_token") c.admin_token = value.get<std::string>();
      else if (key == "timeout_ms") c.timeout_ms = value.get<int>();
      else if (key == "adapter_command") c.adapter_command = value.get<std::string>();
      else if (key == "grade_seed") c.grade_seed = value.get<std::uint64_t>();
      else if (key == "grade_samples") c.grade_samples = value.get<std::size_t>();
      else if (key == "static_dir") c.static_dir = resolve(value.get<std::string>());
      else throw std::runtime_error("unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("bad config value: ") + e.what());
  }

  if (auto v = env("PROBEABLE_BANK")) c.bank_path = *v;
  if (auto v = env("PROBEABLE_LOG")) c.log_path = *v;
  if (auto v = env("PROBEABLE_BLOB_DIR")) c.blob_dir = *v;
  if (auto v = env("PROBEABLE_BIND")) parse_bind(c, *v);
  if (auto v = env("PROBEABLE_ADMIN_TOKEN")) c.admin_token = *v;
  if (auto v = env("PROBEABLE_TIMEOUT_MS")) c.timeout_ms = parse_positive("PROBEABLE_TIMEOUT_MS", *v);
  if (auto v = env("PROBEABLE_ADAPTER_COMMAND")) c.adapter_command = *v;
  if (auto v = env("PROBEABLE_STATIC_DIR")) c.static_dir = *v;

  if (c.bank_path.empty()) throw std::runtime_error("config: bank is required");
  if (c.log_path.empty()) throw std::runtime_error("config: log is required");
  if (c.blob_dir.empty()) throw std::runtime_error("config: blob_dir is required");
  if (c.timeout_ms <= 0) throw std::runtime_error("config: timeout_ms must be positive");
  return c;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char ch : s) {
    if (ch == '\'') {
      out += "'\\''";
    } else {
      out += ch;
    }
  }
  return out + "'";
}

std::string expand_command(const std::string& tmpl, const std::string& file, const std::string& function,
                           const std::string& problem) {
  std::string out;
  for (std::size_t i = 0; i < tmpl.size();) {
    if (tmpl.compare(i, 6, "{file}") == 0) {
      out += shell_quote(file);
      i += 6;
    } else if (tmpl.compare(i, 10, "{function}") == 0) {
      out += shell_quote(function);
      i += 10;
    } else if (tmpl.compare(i, 9, "{problem}") == 0) {
      out += shell_quote(problem);
      i += 9;
    } else {
      out += tmpl[i++];
    }
  }
  return out;
}

}  // namespace probeable
