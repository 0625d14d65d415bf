#include <gtest/gtest.h>

#include <fstream>

#include "contest_script.hpp"
#include "probeable/config.hpp"
#include "probeable/contest.hpp"
#include "probeable/digest.hpp"
#include "support.hpp"

using namespace probeable;
using nlohmann::json;
using probeable::testing::bundled_bank;
using probeable::testing::TempDir;

namespace {

struct Fixture {
  TempDir dir;
  std::unique_ptr<EventLog> log = EventLog::in_memory();
  std::int64_t now = 1000;
  ContestOptions options() {
    ContestOptions o;
    o.admin_token = "root";
    o.blob_dir = dir.path() / "blobs";
    o.adapter_command = shell_quote(PROBEABLE_ADAPTER_PATH) + " --problem {problem} --impl-file {file}";
    o.max_source_bytes = 64;
    return o;
  }
  std::unique_ptr<Contest> contest() {
    return std::make_unique<Contest>(bundled_bank(), *log, options(), [this] { return now++; });
  }
};

int status_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ServiceError& e) {
    return e.status();
  }
  return 200;
}

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ServiceError& e) {
    return e.code();
  }
  return "ok";
}

}  // namespace

TEST(Phases, NamesRoundTrip) {
  for (Phase p : {Phase::Setup, Phase::Phase1, Phase::Phase2, Phase::Closed}) EXPECT_EQ(parse_phase(phase_name(p)), p);
  EXPECT_FALSE(parse_phase("phase1"));
}

TEST(Phases, ForwardOnly) {
  Fixture f;
  auto c = f.contest();
  EXPECT_EQ(code_of([&] { c->set_phase("root", "Phase2"); }), "invalid_transition");
  EXPECT_EQ(code_of([&] { c->set_phase("bad", "Phase1"); }), "bad_token");
  EXPECT_EQ(code_of([&] { c->set_phase("root", "Later"); }), "bad_request");
  c->set_phase("root", "Phase1");
  EXPECT_EQ(code_of([&] { c->set_phase("root", "Phase1"); }), "invalid_transition");
  c->set_phase("root", "Phase2");
  c->set_phase("root", "Closed");
  EXPECT_EQ(c->phase(), Phase::Closed);
  EXPECT_EQ(code_of([&] { c->set_phase("root", "Setup"); }), "invalid_transition");
}

TEST(Teams, RegistrationAndAuth) {
  Fixture f;
  auto c = f.contest();
  const auto [t, token] = c->register_team("Team Rocket!");
  EXPECT_EQ(t.id, "team-rocket");
  EXPECT_EQ(t.token_sha256, sha256_hex(token));
  EXPECT_EQ(c->session(token)["team"], "team-rocket");
  EXPECT_EQ(status_of([&] { c->session("x"); }), 401);
  EXPECT_EQ(status_of([&] { c->session(""); }), 401);
  EXPECT_EQ(code_of([&] { c->register_team("Team Rocket!"); }), "duplicate_team");
  EXPECT_EQ(c->register_team("team rocket").first.id, "team-rocket-2");
  EXPECT_EQ(f.log->export_lines().find(token), std::string::npos);
}

TEST(Oracle, PhaseGatingAndLogging) {
  Fixture f;
  auto c = f.contest();
  const std::string token = c->register_team("a").second;
  EXPECT_EQ(status_of([&] { c->oracle(token, "p1", {{"args", {"[1]"}}}); }), 409);
  c->set_phase("root", "Phase1");
  EXPECT_EQ(c->oracle(token, "p1", {{"args", {"[0,-1]"}}}), (json{{"output", "-3"}}));
  try {
    c->oracle(token, "p1", {{"args", {"[1, @]"}}});
    ADD_FAILURE();
  } catch (const ServiceError& e) {
    EXPECT_EQ(e.status(), 422);
    EXPECT_EQ(e.body()["error"]["kind"], "parse");
    EXPECT_EQ(e.body()["error"]["position"], 4);
  }
  EXPECT_EQ(status_of([&] { c->oracle(token, "p1", {{"args", {"'s'"}}}); }), 422);
  EXPECT_EQ(status_of([&] { c->oracle(token, "nope", {{"args", {"1"}}}); }), 404);
  EXPECT_EQ(status_of([&] { c->oracle("bad", "p1", {{"args", {"1"}}}); }), 401);
  EXPECT_EQ(status_of([&] { c->oracle(token, "p1", {{"args", "[1]"}}); }), 400);
  std::size_t queries = 0;
  for (const auto& e : f.log->events()) queries += e.kind == "oracle_query" ? 1 : 0;
  EXPECT_EQ(queries, 3u);
  EXPECT_EQ(json::parse(c->state_json())["oracle_queries"]["a"], 3);
}

TEST(Submissions, LastWriteWinsAndBlobs) {
  Fixture f;
  auto c = f.contest();
  const std::string token = c->register_team("a").second;
  c->set_phase("root", "Phase1");
  const auto first = c->submit(token, "p1", {{"attempt", 1}, {"source", "p1.c1\n"}});
  const auto second = c->submit(token, "p1", {{"attempt", 1}, {"source", "p1.reference\n"}});
  EXPECT_EQ(second["digest"], sha256_hex("p1.reference\n"));
  EXPECT_TRUE(std::filesystem::exists(c->blob_path(first["digest"])));
  std::ifstream in(c->blob_path(second["digest"]));
  std::string text((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(text, "p1.reference\n");
  const json state = json::parse(c->state_json());
  ASSERT_EQ(state["submissions"].size(), 1u);
  EXPECT_EQ(state["submissions"][0]["digest"], second["digest"]);
  EXPECT_EQ(status_of([&] { c->submit(token, "p1", {{"attempt", 2}, {"source", "x"}}); }), 409);
  EXPECT_EQ(status_of([&] { c->submit(token, "p1", {{"attempt", 3}, {"source", "x"}}); }), 400);
  EXPECT_EQ(status_of([&] { c->submit(token, "p1", {{"attempt", 1}, {"source", std::string(65, 'x')}}); }), 413);
  EXPECT_EQ(status_of([&] { c->verify(token, "p1"); }), 409);
  c->set_phase("root", "Phase2");
  EXPECT_EQ(status_of([&] { c->submit(token, "p1", {{"attempt", 1}, {"source", "x"}}); }), 409);
  const json v = c->verify(token, "p1");
  EXPECT_EQ(v, (json{{"passed", 14}, {"total", 14}}));
  c->submit(token, "p1", {{"attempt", 2}, {"source", "p1.c1\n"}});
  EXPECT_EQ(c->verify(token, "p1")["passed"], 5);
  EXPECT_EQ(code_of([&] { c->verify(token, "p2"); }), "no_submission");
}

TEST(Submissions, BrokenSourceVerifiesAsZero) {
  Fixture f;
  auto c = f.contest();
  const std::string token = c->register_team("a").second;
  c->set_phase("root", "Phase1");
  c->submit(token, "p3", {{"attempt", 1}, {"source", "not.a.solution\n"}});
  c->set_phase("root", "Phase2");
  EXPECT_EQ(c->verify(token, "p3"), (json{{"passed", 0}, {"total", 12}}));
}

TEST(Heatmap, OnlyWhenClosedAndAdmin) {
  Fixture f;
  auto c = f.contest();
  const std::string token = c->register_team("a").second;
  c->set_phase("root", "Phase1");
  c->submit(token, "p1", {{"attempt", 1}, {"source", "p1.c3\n"}});
  EXPECT_EQ(status_of([&] { c->heatmap("root"); }), 409);
  c->set_phase("root", "Phase2");
  c->set_phase("root", "Closed");
  EXPECT_EQ(status_of([&] { c->heatmap(token); }), 401);
  const std::string csv = c->heatmap("root");
  EXPECT_EQ(csv, "problem,category,fraction\np1,B,1.0000\np1,T,0.0000\n");
}

TEST(Replay, RebuildsStateFromEvents) {
  Fixture f;
  auto c = f.contest();
  const std::string token = c->register_team("a").second;
  c->set_phase("root", "Phase1");
  c->oracle(token, "p2", {{"args", {"'a1'"}}});
  c->submit(token, "p2", {{"attempt", 1}, {"source", "p2.reference\n"}});
  const std::string live = c->state_json();
  EXPECT_EQ(replay(bundled_bank().digest, f.log->events()).to_json().dump(), live);
  auto again = f.contest();
  EXPECT_EQ(again->state_json(), live);
  EXPECT_EQ(again->session(token)["team"], "a");
}

TEST(Replay, RejectsInconsistentEvents) {
  std::vector<Event> events = {Event{1, 0, "", "phase_change", {{"from", "Setup"}, {"to", "Closed"}}}};
  EXPECT_THROW(replay("d", events), std::exception);
  std::vector<Event> unknown = {Event{1, 0, "", "mystery", json::object()}};
  EXPECT_THROW(replay("d", unknown), std::exception);
}

TEST(EventLogFile, AppendReopenAndTornTail) {
  TempDir dir;
  const auto path = dir.path() / "log.jsonl";
  {
    auto log = EventLog::open(path);
    log->append(5, "", "phase_change", {{"from", "Setup"}, {"to", "Phase1"}});
    log->append(6, "t", "oracle_query", {{"problem", "p1"}, {"args", {"[1]"}}, {"output", "0"}});
    EXPECT_THROW(EventLog::open(path), std::runtime_error);
  }
  {
    std::ofstream out(path, std::ios::app);
    out << R"({"seq":3,"ts":7,"te)";
  }
  auto log = EventLog::open(path);
  ASSERT_EQ(log->events().size(), 2u);
  EXPECT_EQ(log->last_seq(), 2u);
  const Event e = log->append(8, "", "phase_change", {{"from", "Phase1"}, {"to", "Phase2"}});
  EXPECT_EQ(e.seq, 3u);
  std::ifstream in(path);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) {
    EXPECT_NO_THROW(Event::from_json(json::parse(line)));
    ++lines;
  }
  EXPECT_EQ(lines, 3u);
}

TEST(EventLogFile, RejectsCorruptMiddle) {
  TempDir dir;
  const auto path = dir.path() / "log.jsonl";
  {
    std::ofstream out(path);
    out << "garbage\n" << R"({"seq":1,"ts":1,"team":"","kind":"phase_change","payload":{}})" << "\n";
  }
  EXPECT_THROW(EventLog::open(path), std::runtime_error);
}

TEST(Config, FileAndEnvironment) {
  TempDir dir;
  const auto path = dir.path() / "service.json";
  {
    std::ofstream out(path);
    out << R"({"bank": "bank.json", "log": "/abs/events.jsonl", "blob_dir": "blobs", "bind": "0.0.0.0:9000",
               "admin_token": "file-token", "timeout_ms": 1500})";
  }
  const auto none = [](const std::string&) -> std::optional<std::string> { return std::nullopt; };
  const ServiceConfig c = load_config(path, none);
  EXPECT_EQ(c.bank_path, dir.path() / "bank.json");
  EXPECT_EQ(c.log_path, std::filesystem::path("/abs/events.jsonl"));
  EXPECT_EQ(c.bind_host, "0.0.0.0");
  EXPECT_EQ(c.port, 9000);
  EXPECT_EQ(c.timeout_ms, 1500);
  const auto env = [](const std::string& k) -> std::optional<std::string> {
    if (k == "PROBEABLE_BIND") return "127.0.0.1:9100";
    if (k == "PROBEABLE_ADMIN_TOKEN") return "env-token";
    if (k == "PROBEABLE_TIMEOUT_MS") return "250";
    return std::nullopt;
  };
  const ServiceConfig o = load_config(path, env);
  EXPECT_EQ(o.port, 9100);
  EXPECT_EQ(o.admin_token, "env-token");
  EXPECT_EQ(o.timeout_ms, 250);
  const auto bad = [](const std::string& k) -> std::optional<std::string> {
    if (k == "PROBEABLE_TIMEOUT_MS") return "soon";
    return std::nullopt;
  };
  EXPECT_THROW(load_config(path, bad), std::runtime_error);
  {
    std::ofstream out(path);
    out << R"({"bank": "b", "log": "l", "blob_dir": "d", "colour": "blue"})";
  }
  EXPECT_THROW(load_config(path, none), std::runtime_error);
  EXPECT_THROW(load_config(dir.path() / "missing.json", none), std::runtime_error);
}

TEST(Config, ExpandCommandQuotes) {
  EXPECT_EQ(shell_quote("a b"), "'a b'");
  EXPECT_EQ(shell_quote("it's"), "'it'\\''s'");
  EXPECT_EQ(expand_command("run {file} {function} {problem} {other}", "/x y/z", "f", "p1"), "run '/x y/z' 'f' 'p1' {other}");
}

TEST(EndToEnd, ScriptedContestOverHttp) {
  const auto result = probeable::testing::run_contest_script(bundled_bank());
  for (const auto& p : result.problems) ADD_FAILURE() << p;
  for (const auto& leak : probeable::testing::leaks(bundled_bank(), result.team_responses)) ADD_FAILURE() << leak;
  EXPECT_GT(result.team_responses.size(), 90u);
  for (const auto& v : result.verify_bodies) {
    ASSERT_TRUE(v.is_object());
    EXPECT_EQ(v.size(), 2u);
    EXPECT_TRUE(v.contains("passed") && v.contains("total"));
  }
  EXPECT_EQ(result.state_live, result.state_replayed);
  EXPECT_NE(result.heatmap.find("p1,B,"), std::string::npos);
}
