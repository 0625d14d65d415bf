#include "probeable/contest.hpp"

#include <chrono>
#include <fstream>

#include "probeable/config.hpp"
#include "probeable/digest.hpp"
#include "probeable/engine.hpp"
#include "probeable/report_csv.hpp"

namespace probeable {

using nlohmann::json;

std::string_view phase_name(Phase p) {
  switch (p) {
    case Phase::Setup: return "Setup";
    case Phase::Phase1: return "Phase1";
    case Phase::Phase2: return "Phase2";
    case Phase::Closed: return "Closed";
  }
  return "?";
}

std::optional<Phase> parse_phase(std::string_view name) {
  for (Phase p : {Phase::Setup, Phase::Phase1, Phase::Phase2, Phase::Closed}) {
    if (phase_name(p) == name) return p;
  }
  return std::nullopt;
}

std::int64_t system_clock_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::system_clock::now().time_since_epoch())
      .count();
}

json ContestState::to_json() const {
  json j;
  j["phase"] = phase_name(phase);
  j["bank_digest"] = bank_digest;
  j["teams"] = json::array();
  for (const auto& [id, t] : teams) j["teams"].push_back({{"id", t.id}, {"name", t.name}, {"token_sha256", t.token_sha256}});
  j["phase_started"] = phase_started;
  j["submissions"] = json::array();
  for (const auto& [key, s] : submissions) {
    const auto& [team, problem, attempt] = key;
    j["submissions"].push_back({{"team", team},
                                {"problem", problem},
                                {"attempt", attempt},
                                {"digest", s.digest},
                                {"size", s.size},
                                {"received_at", s.received_at},
                                {"seq", s.seq}});
  }
  j["oracle_queries"] = oracle_queries;
  j["verifier_runs"] = verifier_runs;
  j["last_seq"] = last_seq;
  return j;
}

namespace {

bool legal_transition(Phase from, Phase to) {
  return (from == Phase::Setup && to == Phase::Phase1) || (from == Phase::Phase1 && to == Phase::Phase2) ||
         (from == Phase::Phase2 && to == Phase::Closed);
}

}  // namespace

void apply_event(ContestState& state, const Event& e) {
  const json& p = e.payload;
  if (e.kind == "team_registered") {
    TeamRecord t{p.at("id").get<std::string>(), p.at("name").get<std::string>(), p.at("token_sha256").get<std::string>()};
    state.teams[t.id] = t;
  } else if (e.kind == "phase_change") {
    const auto from = parse_phase(p.at("from").get<std::string>());
    const auto to = parse_phase(p.at("to").get<std::string>());
    if (!from || !to) throw std::runtime_error("event " + std::to_string(e.seq) + ": unknown phase");
    if (*from != state.phase || !legal_transition(*from, *to)) {
      throw std::runtime_error("event " + std::to_string(e.seq) + ": illegal phase change");
    }
    state.phase = *to;
    state.phase_started[std::string(phase_name(*to))] = e.timestamp_ms;
  } else if (e.kind == "oracle_query") {
    ++state.oracle_queries[e.team];
  } else if (e.kind == "submission") {
    StoredSubmission s{p.at("digest").get<std::string>(), p.at("size").get<std::size_t>(), e.timestamp_ms, e.seq};
    state.submissions[{e.team, p.at("problem").get<std::string>(), p.at("attempt").get<int>()}] = s;
  } else if (e.kind == "verifier_run") {
    ++state.verifier_runs[e.team];
  } else {
    throw std::runtime_error("event " + std::to_string(e.seq) + ": unknown kind '" + e.kind + "'");
  }
  state.last_seq = e.seq;
}

ContestState replay(const std::string& bank_digest, const std::vector<Event>& events) {
  ContestState s;
  s.bank_digest = bank_digest;
  for (const auto& e : events) apply_event(s, e);
  return s;
}

namespace {

std::string slug(const std::string& name) {
  std::string out;
  for (char c : name) {
    if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
      out += c;
    } else if (c >= 'A' && c <= 'Z') {
      out += static_cast<char>(c - 'A' + 'a');
    } else if (!out.empty() && out.back() != '-') {
      out += '-';
    }
  }
  while (!out.empty() && out.back() == '-') out.pop_back();
  return out.empty() ? "team" : out;
}

ServiceError wrong_phase(Phase current, const std::string& what) {
  return ServiceError(409, "wrong_phase", what + " is not allowed in phase " + std::string(phase_name(current)));
}

}  // namespace

Contest::Contest(const Bank& bank, EventLog& log, ContestOptions options, Clock clock)
    : bank_(bank), log_(log), options_(std::move(options)), clock_(std::move(clock)) {
  state_ = replay(bank_.digest, log_.events());
  for (const auto& [id, t] : state_.teams) token_index_[t.token_sha256] = id;
}

Event Contest::commit(const std::string& team, const std::string& kind, json payload) {
  Event e = log_.append(clock_(), team, kind, std::move(payload));
  apply_event(state_, e);
  if (kind == "team_registered") token_index_[e.payload.at("token_sha256").get<std::string>()] = e.payload.at("id");
  return e;
}

const TeamRecord& Contest::authenticate(const std::string& token) const {
  auto it = token.empty() ? token_index_.end() : token_index_.find(sha256_hex(token));
  if (it == token_index_.end()) throw ServiceError(401, "bad_token", "unknown or missing team token");
  return state_.teams.at(it->second);
}

void Contest::require_admin(const std::string& token) const {
  if (options_.admin_token.empty() || token.empty() || sha256_hex(token) != sha256_hex(options_.admin_token)) {
    throw ServiceError(401, "bad_token", "admin token required");
  }
}

const ProblemDef& Contest::problem_or_404(const std::string& id) const {
  const ProblemDef* p = bank_.find(id);
  if (p == nullptr) throw ServiceError(404, "unknown_problem", "no problem named '" + id + "'");
  return *p;
}

std::pair<TeamRecord, std::string> Contest::register_team(const std::string& name) {
  if (name.empty()) throw ServiceError(400, "bad_request", "team name must be non-empty");
  std::lock_guard lock(mutex_);
  for (const auto& [id, t] : state_.teams) {
    if (t.name == name) throw ServiceError(409, "duplicate_team", "team '" + name + "' is already registered");
  }
  std::string id = slug(name);
  for (int k = 2; state_.teams.count(id) != 0; ++k) id = slug(name) + "-" + std::to_string(k);
  const std::string token = random_token();
  TeamRecord t{id, name, sha256_hex(token)};
  commit("", "team_registered", {{"id", t.id}, {"name", t.name}, {"token_sha256", t.token_sha256}});
  return {t, token};
}

json Contest::session(const std::string& token) const {
  std::lock_guard lock(mutex_);
  const TeamRecord& t = authenticate(token);
  return {{"team", t.id}, {"phase", phase_name(state_.phase)}};
}

json Contest::problems() const {
  json out = json::array();
  for (const auto& p : bank_.problems) {
    const OracleAnswer seed = seed_answer(p);
    out.push_back({{"id", p.id},
                   {"title", p.title},
                   {"function_name", p.function_name},
                   {"public_spec", p.public_spec},
                   {"seed_query", seed.input_echo},
                   {"seed_answer", seed.output}});
  }
  return out;
}

json Contest::oracle(const std::string& token, const std::string& problem, const json& body) {
  std::vector<std::string> args;
  if (!body.is_object() || !body.contains("args") || !body["args"].is_array()) {
    throw ServiceError(400, "bad_request", "body must be {\"args\": [\"<literal>\", ...]}");
  }
  for (const auto& a : body["args"]) {
    if (!a.is_string()) throw ServiceError(400, "bad_request", "every argument must be a literal string");
    args.push_back(a.get<std::string>());
  }
  std::lock_guard lock(mutex_);
  const TeamRecord& team = authenticate(token);
  const ProblemDef& p = problem_or_404(problem);
  if (state_.phase != Phase::Phase1 && state_.phase != Phase::Phase2) throw wrong_phase(state_.phase, "the oracle");

  const OracleResult result = oracle_query(p, args);
  json payload = {{"problem", p.id}, {"args", args}};
  json response;
  if (const auto* a = std::get_if<OracleAnswer>(&result)) {
    payload["output"] = a->output;
    response = {{"output", a->output}};
  } else {
    const auto& r = std::get<OracleRefusal>(result);
    json err = {{"kind", refusal_kind_name(r.kind)}, {"message", r.message}};
    if (r.position) err["position"] = *r.position;
    payload["error"] = err;
    response = {{"error", err}};
  }
  commit(team.id, "oracle_query", payload);
  if (response.contains("error")) throw ServiceError(422, response);
  return response;
}

std::filesystem::path Contest::blob_path(const std::string& digest) const { return options_.blob_dir / digest; }

json Contest::submit(const std::string& token, const std::string& problem, const json& body) {
  if (!body.is_object() || !body.contains("attempt") || !body["attempt"].is_number_integer() ||
      !body.contains("source") || !body["source"].is_string()) {
    throw ServiceError(400, "bad_request", "body must be {\"attempt\": 1|2, \"source\": \"...\"}");
  }
  const int attempt = body["attempt"].get<int>();
  if (attempt != 1 && attempt != 2) throw ServiceError(400, "bad_request", "attempt must be 1 or 2");
  const std::string source = body["source"].get<std::string>();

  std::lock_guard lock(mutex_);
  const TeamRecord& team = authenticate(token);
  const ProblemDef& p = problem_or_404(problem);
  const Phase needed = attempt == 1 ? Phase::Phase1 : Phase::Phase2;
  if (state_.phase != needed) throw wrong_phase(state_.phase, "attempt " + std::to_string(attempt) + " submission");
  if (source.size() > options_.max_source_bytes) {
    throw ServiceError(413, "too_large", "source exceeds " + std::to_string(options_.max_source_bytes) + " bytes");
  }
  const std::string digest = sha256_hex(source);
  const auto path = blob_path(digest);
  if (!std::filesystem::exists(path)) {
    std::filesystem::create_directories(options_.blob_dir);
    const auto tmp = options_.blob_dir / (digest + ".tmp");
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << source;
      if (!out) throw ServiceError(500, "storage", "cannot write submission blob");
    }
    std::filesystem::rename(tmp, path);
  }
  commit(team.id, "submission", {{"problem", p.id}, {"attempt", attempt}, {"digest", digest}, {"size", source.size()}});
  return {{"digest", digest}};
}

Submission Contest::make_submission(const std::string& team, const std::string& problem, int attempt,
                                    const StoredSubmission& stored) const {
  const ProblemDef& p = problem_or_404(problem);
  Submission s;
  s.team = team;
  s.problem = problem;
  s.attempt = attempt;
  s.source_ref = stored.digest;
  s.received_at = stored.received_at;
  s.entry_command = expand_command(options_.adapter_command, blob_path(stored.digest).string(), p.function_name, p.id);
  return s;
}

json Contest::verify(const std::string& token, const std::string& problem) {
  Submission sub;
  std::string team_id;
  const ProblemDef* p = nullptr;
  {
    std::lock_guard lock(mutex_);
    const TeamRecord& team = authenticate(token);
    team_id = team.id;
    p = &problem_or_404(problem);
    if (state_.phase != Phase::Phase2) throw wrong_phase(state_.phase, "the verifier");
    const StoredSubmission* stored = nullptr;
    int attempt = 0;
    for (int a : {2, 1}) {
      auto it = state_.submissions.find({team.id, p->id, a});
      if (it != state_.submissions.end()) {
        stored = &it->second;
        attempt = a;
        break;
      }
    }
    if (stored == nullptr) throw ServiceError(409, "no_submission", "no stored submission for " + p->id);
    if (options_.adapter_command.empty()) throw ServiceError(503, "no_runner", "no adapter command configured");
    sub = make_submission(team.id, p->id, attempt, *stored);
  }

  VerifierResult r;
  try {
    auto handle = RunnerHandle::start(sub, options_.runner);
    r = probeable::verify(*p, *handle);
  } catch (const AdapterStartError&) {
    r = VerifierResult{0, p->verifier_suite.size()};
  }

  std::lock_guard lock(mutex_);
  if (state_.phase != Phase::Phase2) throw wrong_phase(state_.phase, "the verifier");
  commit(team_id, "verifier_run",
         {{"problem", p->id}, {"attempt", sub.attempt}, {"digest", sub.source_ref}, {"passed", r.passed}, {"total", r.total}});
  return {{"passed", r.passed}, {"total", r.total}};
}

json Contest::set_phase(const std::string& admin_token, const std::string& phase) {
  require_admin(admin_token);
  const auto to = parse_phase(phase);
  if (!to) throw ServiceError(400, "bad_request", "unknown phase '" + phase + "'");
  std::lock_guard lock(mutex_);
  if (!legal_transition(state_.phase, *to)) {
    throw ServiceError(409, "invalid_transition",
                       "cannot move from " + std::string(phase_name(state_.phase)) + " to " + std::string(phase_name(*to)));
  }
  commit("", "phase_change", {{"from", phase_name(state_.phase)}, {"to", phase_name(*to)}});
  return {{"phase", phase_name(state_.phase)}};
}

std::string Contest::export_log(const std::string& admin_token) const {
  require_admin(admin_token);
  return log_.export_lines();
}

std::string Contest::heatmap(const std::string& admin_token) {
  require_admin(admin_token);
  std::vector<Submission> subs;
  std::uint64_t seq = 0;
  {
    std::lock_guard lock(mutex_);
    if (state_.phase != Phase::Closed) throw wrong_phase(state_.phase, "the heatmap");
    if (heatmap_cache_ && heatmap_cache_->first == state_.last_seq) return heatmap_cache_->second;
    if (options_.adapter_command.empty() && !state_.submissions.empty()) {
      throw ServiceError(503, "no_runner", "no adapter command configured");
    }
    seq = state_.last_seq;
    for (const auto& [key, stored] : state_.submissions) {
      const auto& [team, problem, attempt] = key;
      subs.push_back(make_submission(team, problem, attempt, stored));
    }
  }
  std::vector<EvalReport> reports;
  for (const auto& s : subs) {
    reports.push_back(grade_submission(bank_, *bank_.find(s.problem), s, options_.grade, options_.runner));
  }
  std::string csv = heatmap_csv(aggregate_heatmap(bank_, reports));
  std::lock_guard lock(mutex_);
  heatmap_cache_ = {seq, csv};
  return csv;
}

std::string Contest::state_json() const {
  std::lock_guard lock(mutex_);
  return state_.to_json().dump();
}

Phase Contest::phase() const {
  std::lock_guard lock(mutex_);
  return state_.phase;
}

}  // namespace probeable
