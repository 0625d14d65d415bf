#pragma once

// Scripted end-to-end contest over HTTP: two teams, all phases, recorded
// team-scope responses, then an independent replay of the event log.

#include <httplib.h>

#include <json.hpp>
#include <thread>

#include "probeable/contest.hpp"
#include "probeable/http_api.hpp"
#include "support.hpp"

namespace probeable::testing {

struct Recorded {
  std::string label;
  int status = 0;
  std::string body;
};

struct ScriptResult {
  std::vector<Recorded> team_responses;
  std::vector<nlohmann::json> verify_bodies;
  std::vector<std::string> problems;  // script failures
  std::string heatmap;
  std::string state_live;
  std::string state_replayed;
  std::size_t events = 0;
};

/// Substrings a team must never see: hidden specs, hidden details and
/// omission descriptions.
inline std::vector<std::string> secret_texts(const Bank& bank) {
  std::vector<std::string> out;
  for (const auto& p : bank.problems) {
    out.push_back(p.hidden_spec);
    for (const auto& d : p.hidden_details) out.push_back(d.text);
    for (const auto& o : p.omissions) out.push_back(o.description);
  }
  return out;
}

inline std::vector<std::string> leaks(const Bank& bank, const std::vector<Recorded>& responses) {
  std::vector<std::string> found;
  for (const auto& secret : secret_texts(bank)) {
    if (secret.empty()) continue;
    for (const auto& r : responses) {
      if (r.body.find(secret) != std::string::npos) found.push_back(r.label + " leaks \"" + secret + "\"");
    }
  }
  return found;
}

inline ScriptResult run_contest_script(const Bank& bank) {
  using nlohmann::json;
  ScriptResult out;
  TempDir dir;
  const auto log_path = dir.path() / "events.jsonl";
  const std::string admin = "admin-secret";

  ContestOptions opts;
  opts.admin_token = admin;
  opts.blob_dir = dir.path() / "blobs";
  opts.adapter_command = shell_quote(PROBEABLE_ADAPTER_PATH) + " --problem {problem} --impl-file {file}";
  opts.runner.timeout = std::chrono::milliseconds(1000);
  opts.grade.samples = 60;
  opts.grade.catch_all_samples = 100;

  {
    auto log = EventLog::open(log_path);
    Contest contest(bank, *log, opts);
    const auto [alpha, alpha_token] = contest.register_team("Alpha Team");
    const auto [beta, beta_token] = contest.register_team("Beta");

    httplib::Server server;
    install_routes(server, contest);
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread th([&] { server.listen_after_bind(); });
    server.wait_until_ready();
    httplib::Client cli("127.0.0.1", port);
    cli.set_read_timeout(30, 0);

    auto expect = [&](const std::string& label, const httplib::Result& r, int status) -> json {
      if (!r) {
        out.problems.push_back(label + ": no response");
        return json();
      }
      if (r->status != status) {
        out.problems.push_back(label + ": status " + std::to_string(r->status) + ", wanted " + std::to_string(status) +
                               ": " + r->body);
      }
      try {
        return json::parse(r->body);
      } catch (const std::exception&) {
        return json(r->body);
      }
    };
    auto team_call = [&](const std::string& label, const std::string& token, const std::string& path,
                         const json& body, int status) -> json {
      httplib::Headers h = {{"Authorization", "Bearer " + token}};
      auto r = cli.Post(path, h, body.dump(), "application/json");
      if (r) out.team_responses.push_back({label, r->status, r->body});
      return expect(label, r, status);
    };
    auto admin_phase = [&](const std::string& phase) {
      auto r = cli.Post("/api/admin/phase", {{"X-Admin-Token", admin}}, json{{"phase", phase}}.dump(),
                        "application/json");
      expect("phase " + phase, r, 200);
    };

    {
      auto r = cli.Get("/api/problems");
      if (r) out.team_responses.push_back({"problems", r->status, r->body});
      const json listing = expect("problems", r, 200);
      if (!listing.is_array() || listing.size() != bank.problems.size()) out.problems.push_back("problem listing size");
    }
    team_call("session", alpha_token, "/api/session", json::object(), 200);
    team_call("session bad token", "nope", "/api/session", json::object(), 401);
    team_call("oracle in setup", alpha_token, "/api/problems/p1/oracle", {{"args", {"[1]"}}}, 409);
    {
      auto r = cli.Post("/api/admin/phase", {{"X-Admin-Token", "wrong"}}, R"({"phase":"Phase1"})", "application/json");
      expect("phase with bad admin token", r, 401);
    }
    admin_phase("Phase1");

    for (const auto& p : bank.problems) {
      const std::string base = "/api/problems/" + p.id;
      for (const auto& in : p.verifier_suite) {
        const json got = team_call("oracle " + p.id, alpha_token, base + "/oracle", {{"args", render_arguments(in)}}, 200);
        if (!got.is_object() || got.value("output", "") != render_literal(reference_eval(p, in))) {
          out.problems.push_back("oracle " + p.id + " answered " + got.dump());
        }
      }
      std::vector<std::string> bad(p.arity(), "[1, @]");
      team_call("oracle parse " + p.id, beta_token, base + "/oracle", {{"args", bad}}, 422);
      std::vector<std::string> wrong(p.arity(), "True");
      team_call("oracle domain " + p.id, beta_token, base + "/oracle", {{"args", wrong}}, 422);
    }
    team_call("oracle unknown problem", alpha_token, "/api/problems/p9/oracle", {{"args", {"1"}}}, 404);
    team_call("oracle malformed", alpha_token, "/api/problems/p1/oracle", {{"argz", 1}}, 400);

    team_call("submit alpha p1", alpha_token, "/api/problems/p1/submission", {{"attempt", 1}, {"source", "p1.c3\n"}}, 200);
    team_call("submit alpha p4", alpha_token, "/api/problems/p4/submission",
              {{"attempt", 1}, {"source", "p4.strict_positive\n"}}, 200);
    team_call("submit beta p1", beta_token, "/api/problems/p1/submission",
              {{"attempt", 1}, {"source", "# ours\np1.reference\n"}}, 200);
    team_call("submit beta p1 again", beta_token, "/api/problems/p1/submission",
              {{"attempt", 1}, {"source", "p1.c2\n"}}, 200);
    team_call("submit attempt 2 early", alpha_token, "/api/problems/p1/submission",
              {{"attempt", 2}, {"source", "p1.reference\n"}}, 409);
    team_call("verify in phase 1", alpha_token, "/api/problems/p1/verify", json::object(), 409);

    admin_phase("Phase2");
    team_call("submit attempt 1 late", alpha_token, "/api/problems/p3/submission",
              {{"attempt", 1}, {"source", "p3.reference\n"}}, 409);
    out.verify_bodies.push_back(team_call("verify alpha p1", alpha_token, "/api/problems/p1/verify", json::object(), 200));
    out.verify_bodies.push_back(team_call("verify beta p1", beta_token, "/api/problems/p1/verify", json::object(), 200));
    team_call("submit alpha p1 attempt 2", alpha_token, "/api/problems/p1/submission",
              {{"attempt", 2}, {"source", "p1.reference\n"}}, 200);
    out.verify_bodies.push_back(
        team_call("verify alpha p1 attempt 2", alpha_token, "/api/problems/p1/verify", json::object(), 200));
    out.verify_bodies.push_back(team_call("verify alpha p4", alpha_token, "/api/problems/p4/verify", json::object(), 200));
    team_call("verify without submission", beta_token, "/api/problems/p5/verify", json::object(), 409);
    team_call("oracle in phase 2", beta_token, "/api/problems/p2/oracle", {{"args", {"'x9'"}}}, 200);

    const std::size_t p1_total = bank.find("p1")->verifier_suite.size();
    if (out.verify_bodies.size() == 4) {
      auto passed = [&](std::size_t i) { return out.verify_bodies[i].value("passed", std::size_t{999}); };
      if (passed(0) >= p1_total) out.problems.push_back("alpha c3 should not pass the whole verifier suite");
      if (passed(1) >= p1_total) out.problems.push_back("beta's latest attempt 1 (c2) should not pass everything");
      if (passed(2) != p1_total) out.problems.push_back("alpha attempt 2 reference should pass everything");
    }

    admin_phase("Closed");
    team_call("oracle when closed", alpha_token, "/api/problems/p1/oracle", {{"args", {"[1]"}}}, 409);
    {
      auto r = cli.Get("/api/admin/heatmap", {{"X-Admin-Token", admin}});
      expect("heatmap", r, 200);
      if (r) out.heatmap = r->body;
      auto again = cli.Get("/api/admin/heatmap", {{"X-Admin-Token", admin}});
      if (!again || again->body != out.heatmap) out.problems.push_back("heatmap is not stable");
      auto denied = cli.Get("/api/admin/heatmap", {{"Authorization", "Bearer " + alpha_token}});
      expect("heatmap with team token", denied, 401);
      auto logr = cli.Get("/api/admin/log", {{"X-Admin-Token", admin}});
      expect("log export", logr, 200);
      if (logr && logr->body != log->export_lines()) out.problems.push_back("log export differs from the log");
    }
    {
      auto r = cli.Post("/api/admin/phase", {{"X-Admin-Token", admin}}, R"({"phase":"Phase1"})", "application/json");
      expect("phase backwards", r, 409);
    }

    server.stop();
    th.join();
    out.state_live = contest.state_json();
    out.events = log->events().size();
  }

  auto reopened = EventLog::open(log_path);
  out.state_replayed = replay(bank.digest, reopened->events()).to_json().dump();
  return out;
}

}  // namespace probeable::testing
