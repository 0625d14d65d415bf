// Runner-protocol adapter serving a bundled native solution.
//
//   probeable-adapter --problem p1 --impl p1.c3
//   probeable-adapter --problem p1 --impl-file submission.txt
//   probeable-adapter --problem p1 --impl p1.reference --fault hang
//
// An impl file names the solution on its first non-blank line that does not
// start with '#'.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "probeable/literal.hpp"
#include "probeable/solutions.hpp"

namespace {

using nlohmann::json;

void emit(const json& j) {
  std::cout << j.dump() << '\n' << std::flush;
}

std::string impl_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return {};
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    return line.substr(b, e - b + 1);
  }
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serve a native solution over the runner line protocol"};
  std::string problem;
  std::string impl;
  std::string impl_file;
  std::string fault;
  app.add_option("--problem", problem, "Problem id announced in the handshake")->required();
  auto* impl_opt = app.add_option("--impl", impl, "Solution name, e.g. p1.reference");
  app.add_option("--impl-file", impl_file, "File naming the solution")->excludes(impl_opt);
  app.add_option("--fault", fault, "Injected misbehavior")
      ->check(CLI::IsMember({"hang", "crash", "garbage", "huge", "bad-handshake", "raise"}));
  CLI11_PARSE(app, argc, argv);

  std::ios::sync_with_stdio(false);
  if (!impl_file.empty()) impl = impl_from_file(impl_file);
  const probeable::Solution* solution = probeable::find_solution(impl);
  if (solution == nullptr) {
    emit({{"probeable_adapter", 1}, {"problem", problem}, {"error", "unknown solution '" + impl + "'"}});
    return 1;
  }
  if (fault == "bad-handshake") {
    std::cout << "hello from a confused adapter\n" << std::flush;
  } else {
    emit({{"probeable_adapter", 1}, {"problem", problem}});
  }

  std::string line;
  while (std::getline(std::cin, line)) {
    json req;
    try {
      req = json::parse(line);
    } catch (const std::exception&) {
      continue;
    }
    if (!req.is_object() || !req.contains("id")) continue;
    const json id = req["id"];
    if (fault == "hang") {
      for (;;) std::this_thread::sleep_for(std::chrono::hours(1));
    }
    if (fault == "crash") std::abort();
    if (fault == "garbage") {
      std::cout << "banana\n" << std::flush;
      continue;
    }
    if (fault == "huge") {
      emit({{"id", id}, {"result", "'" + std::string(100000, 'x') + "'"}});
      continue;
    }
    if (fault == "raise") {
      emit({{"id", id}, {"error", "ValueError: injected"}});
      continue;
    }
    try {
      std::vector<std::string> texts;
      for (const auto& a : req.at("args")) texts.push_back(a.get<std::string>());
      const probeable::Value out = solution->fn(probeable::parse_arguments(texts));
      emit({{"id", id}, {"result", probeable::render_literal(out)}});
    } catch (const std::exception& e) {
      emit({{"id", id}, {"error", e.what()}});
    }
  }
  return 0;
}
