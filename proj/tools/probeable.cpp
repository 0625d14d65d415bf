// Organizer command line: bank validation, local oracle, offline verify,
// grading, attempt diffing, serving and team registration.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <httplib.h>

#include "probeable/bank.hpp"
#include "probeable/config.hpp"
#include "probeable/contest.hpp"
#include "probeable/engine.hpp"
#include "probeable/grader.hpp"
#include "probeable/http_api.hpp"
#include "probeable/literal.hpp"
#include "probeable/report_csv.hpp"

namespace fs = std::filesystem;
using namespace probeable;

namespace {

constexpr const char* kDefaultWrap = "{adapter} --problem {problem} --impl-file {file}";

/// Raised for failures that should exit with status 1.
struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string adapter_path() {
  std::error_code ec;
  const fs::path self = fs::read_symlink("/proc/self/exe", ec);
  if (!ec) {
    const fs::path sibling = self.parent_path() / "probeable-adapter";
    if (fs::exists(sibling)) return sibling.string();
  }
  return "probeable-adapter";
}

std::string with_adapter(std::string tmpl) {
  const std::string needle = "{adapter}";
  for (auto pos = tmpl.find(needle); pos != std::string::npos; pos = tmpl.find(needle, pos)) {
    const std::string q = shell_quote(adapter_path());
    tmpl.replace(pos, needle.size(), q);
    pos += q.size();
  }
  return tmpl;
}

Bank open_bank(const std::string& path) {
  try {
    return load_bank(path);
  } catch (const BankError& e) {
    throw Failure(std::string("invalid bank: ") + e.what());
  }
}

const ProblemDef& problem_of(const Bank& bank, const std::string& id) {
  const ProblemDef* p = bank.find(id);
  if (p == nullptr) throw Failure("unknown problem '" + id + "'");
  return *p;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw Failure("cannot write " + path);
}

std::string read_trimmed(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string s = ss.str();
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

RunnerOptions runner_options(int timeout_ms) {
  RunnerOptions o;
  o.timeout = std::chrono::milliseconds(timeout_ms);
  return o;
}

std::vector<fs::path> sorted_dirs(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_directory()) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// <team>/<problem>/attempt<k>/ holding `cmd` or a single source file.
std::vector<Submission> scan_submissions(const Bank& bank, const fs::path& root, const std::string& wrap) {
  if (!fs::is_directory(root)) throw Failure("submissions directory " + root.string() + " does not exist");
  std::vector<Submission> subs;
  for (const auto& team_dir : sorted_dirs(root)) {
    for (const auto& problem_dir : sorted_dirs(team_dir)) {
      const std::string problem = problem_dir.filename().string();
      const ProblemDef* p = bank.find(problem);
      if (p == nullptr) throw Failure(problem_dir.string() + ": unknown problem '" + problem + "'");
      for (const auto& attempt_dir : sorted_dirs(problem_dir)) {
        const std::string name = attempt_dir.filename().string();
        if (name != "attempt1" && name != "attempt2") throw Failure(attempt_dir.string() + ": expected attempt1 or attempt2");
        Submission s;
        s.team = team_dir.filename().string();
        s.problem = problem;
        s.attempt = name.back() - '0';
        s.working_dir = fs::absolute(attempt_dir).string();
        if (fs::exists(attempt_dir / "cmd")) {
          s.entry_command = read_trimmed(attempt_dir / "cmd");
        } else {
          std::vector<fs::path> files;
          for (const auto& e : fs::directory_iterator(attempt_dir)) {
            if (e.is_regular_file()) files.push_back(e.path());
          }
          if (files.size() != 1) throw Failure(attempt_dir.string() + ": expected a cmd file or exactly one source file");
          s.entry_command = expand_command(wrap, fs::absolute(files.front()).string(), p->function_name, p->id);
        }
        if (s.entry_command.empty()) throw Failure(attempt_dir.string() + ": empty command");
        subs.push_back(std::move(s));
      }
    }
  }
  return subs;
}

nlohmann::json evidence_json(const std::vector<Evidence>& ev) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : ev) out.push_back({{"input", render_call(e.input)}, {"expected", e.expected}, {"actual", e.actual}});
  return out;
}

nlohmann::json report_json(const EvalReport& r) {
  nlohmann::json j = {{"team", r.team},       {"problem", r.problem},
                      {"attempt", r.attempt}, {"seed", r.seed},
                      {"bank", r.bank_digest}, {"base", verdict_name(r.base.verdict)},
                      {"base_evidence", evidence_json(r.base.evidence)},
                      {"catch_all", verdict_name(r.catch_all.verdict)},
                      {"catch_all_evidence", evidence_json(r.catch_all.evidence)}};
  if (!r.start_error.empty()) j["start_error"] = r.start_error;
  j["omissions"] = nlohmann::json::array();
  for (const auto& o : r.omissions) {
    j["omissions"].push_back({{"id", o.omission_id},
                              {"simple", verdict_name(o.simple)},
                              {"class", verdict_name(o.class_result)},
                              {"evidence", evidence_json(o.evidence)}});
  }
  return j;
}

int cmd_validate(const std::string& bank_path) {
  const Bank bank = open_bank(bank_path);
  std::cout << bank.problems.size() << " problems, " << bank.total_omissions() << " omissions\n";
  for (const auto& p : bank.problems) {
    std::cout << p.id << ":";
    for (const auto& o : p.omissions) std::cout << ' ' << category_code(o.category);
    std::cout << '\n';
  }
  return 0;
}

int cmd_oracle(const std::string& bank_path, const std::string& problem, const std::vector<std::string>& args) {
  const Bank bank = open_bank(bank_path);
  const OracleResult r = oracle_query(problem_of(bank, problem), args);
  if (const auto* a = std::get_if<OracleAnswer>(&r)) {
    std::cout << a->output << '\n';
    return 0;
  }
  const auto& refusal = std::get<OracleRefusal>(r);
  std::cerr << refusal_kind_name(refusal.kind) << " error: " << refusal.message << '\n';
  return 1;
}

int cmd_verify(const std::string& bank_path, const std::string& problem, const std::string& cmd, int timeout_ms) {
  const Bank bank = open_bank(bank_path);
  const ProblemDef& p = problem_of(bank, problem);
  Submission s;
  s.problem = p.id;
  s.entry_command = cmd;
  try {
    auto h = RunnerHandle::start(s, runner_options(timeout_ms));
    const VerifierResult r = verify(p, *h);
    std::cout << r.passed << "/" << r.total << '\n';
  } catch (const AdapterStartError& e) {
    throw Failure(std::string("adapter failed to start: ") + e.what());
  }
  return 0;
}

struct GradeArgs {
  std::string bank;
  std::string subs;
  std::uint64_t seed = 1;
  std::string out;
  std::string heatmap;
  std::string report;
  std::size_t samples = 300;
  std::size_t catch_all_samples = 1000;
  unsigned jobs = 1;
  std::string wrap = kDefaultWrap;
  int timeout_ms = 2000;
};

int cmd_grade(const GradeArgs& a) {
  const Bank bank = open_bank(a.bank);
  const auto subs = scan_submissions(bank, a.subs, with_adapter(a.wrap));
  GradeOptions opts;
  opts.seed = a.seed;
  opts.samples = a.samples;
  opts.catch_all_samples = a.catch_all_samples;
  const RunnerOptions ropts = runner_options(a.timeout_ms);

  std::vector<EvalReport> reports(subs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < subs.size(); i = next++) {
      reports[i] = grade_submission(bank, *bank.find(subs[i].problem), subs[i], opts, ropts);
    }
  };
  std::vector<std::thread> pool;
  const unsigned jobs = std::max(1u, std::min<unsigned>(a.jobs, static_cast<unsigned>(std::max<std::size_t>(subs.size(), 1))));
  for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  write_file(a.out, matrix_csv(bank, reports));
  if (!a.heatmap.empty()) write_file(a.heatmap, heatmap_csv(reports.empty() ? std::vector<HeatmapCell>{} : aggregate_heatmap(bank, reports)));
  if (!a.report.empty()) {
    nlohmann::json all = nlohmann::json::array();
    for (const auto& r : reports) all.push_back(report_json(r));
    write_file(a.report, all.dump(2) + "\n");
  }
  std::cerr << "graded " << reports.size() << " submission(s)\n";
  return 0;
}

int cmd_diff(const std::string& bank_path, const std::string& problem, const std::string& cmd1, const std::string& cmd2,
             std::uint64_t seed, std::size_t samples, int timeout_ms) {
  const Bank bank = open_bank(bank_path);
  const ProblemDef& p = problem_of(bank, problem);
  Submission s1;
  s1.problem = p.id;
  s1.entry_command = cmd1;
  Submission s2 = s1;
  s2.entry_command = cmd2;
  std::unique_ptr<RunnerHandle> h1;
  std::unique_ptr<RunnerHandle> h2;
  try {
    h1 = RunnerHandle::start(s1, runner_options(timeout_ms));
    h2 = RunnerHandle::start(s2, runner_options(timeout_ms));
  } catch (const AdapterStartError& e) {
    throw Failure(std::string("adapter failed to start: ") + e.what());
  }
  const DiffResult d = diff_equivalent(p, *h1, *h2, seed, samples);
  if (d.equivalent) {
    std::cout << "equivalent (" << d.inputs_run << " inputs)\n";
  } else {
    std::cout << "diverging on " << render_call(*d.input) << ": " << d.output1 << " vs " << d.output2 << '\n';
  }
  return 0;
}

ContestOptions contest_options(const ServiceConfig& cfg) {
  ContestOptions o;
  o.admin_token = cfg.admin_token;
  o.blob_dir = cfg.blob_dir;
  o.adapter_command = with_adapter(cfg.adapter_command.empty() ? kDefaultWrap : cfg.adapter_command);
  o.runner = runner_options(cfg.timeout_ms);
  o.grade.seed = cfg.grade_seed;
  o.grade.samples = cfg.grade_samples;
  return o;
}

int cmd_serve(const std::string& config_path) {
  const ServiceConfig cfg = load_config(config_path);
  const Bank bank = open_bank(cfg.bank_path.string());
  auto log = EventLog::open(cfg.log_path);
  Contest contest(bank, *log, contest_options(cfg));
  httplib::Server server;
  install_routes(server, contest, cfg.static_dir);
  std::cerr << "serving " << bank.problems.size() << " problems on " << cfg.bind_host << ":" << cfg.port << '\n';
  if (!server.listen(cfg.bind_host, cfg.port)) throw Failure("cannot listen on " + cfg.bind_host + ":" + std::to_string(cfg.port));
  return 0;
}

int cmd_teams_add(const std::string& config_path, const std::string& name) {
  const ServiceConfig cfg = load_config(config_path);
  const Bank bank = open_bank(cfg.bank_path.string());
  auto log = EventLog::open(cfg.log_path);
  Contest contest(bank, *log, contest_options(cfg));
  try {
    const auto [team, token] = contest.register_team(name);
    std::cout << team.id << ' ' << token << '\n';
  } catch (const ServiceError& e) {
    throw Failure(e.what());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probeable Problems contest tooling"};
  app.require_subcommand(1);

  std::string bank;
  std::string problem;
  std::vector<std::string> literals;
  auto* validate = app.add_subcommand("validate", "Check a bank and print problem and omission counts");
  validate->add_option("bank", bank, "Bank file")->required();

  auto* oracle = app.add_subcommand("oracle", "Ask the oracle about one input");
  oracle->add_option("bank", bank, "Bank file")->required();
  oracle->add_option("problem", problem, "Problem id")->required();
  oracle->allow_extras();
  oracle->footer("Remaining arguments are literals, one per function argument.");

  std::string cmd;
  int timeout_ms = 2000;
  auto* verify_cmd = app.add_subcommand("verify", "Run the count-only verifier against an adapter command");
  verify_cmd->add_option("bank", bank, "Bank file")->required();
  verify_cmd->add_option("problem", problem, "Problem id")->required();
  verify_cmd->add_option("--cmd", cmd, "Adapter command line")->required();
  verify_cmd->add_option("--timeout-ms", timeout_ms, "Per-call timeout")->check(CLI::PositiveNumber);

  GradeArgs ga;
  auto* grade = app.add_subcommand("grade", "Grade a submissions directory");
  grade->add_option("bank", ga.bank, "Bank file")->required();
  grade->add_option("--subs", ga.subs, "Directory laid out as <team>/<problem>/attempt<k>/")->required();
  grade->add_option("--seed", ga.seed, "PRNG seed")->required();
  grade->add_option("--out", ga.out, "Matrix CSV output")->required();
  grade->add_option("--heatmap", ga.heatmap, "Heatmap CSV output");
  grade->add_option("--report", ga.report, "Detailed JSON report with evidence");
  grade->add_option("--samples", ga.samples, "Samples per omission class and base")->check(CLI::PositiveNumber);
  grade->add_option("--catch-all-samples", ga.catch_all_samples, "Samples for the catch-all test")->check(CLI::PositiveNumber);
  grade->add_option("--jobs", ga.jobs, "Submissions graded in parallel")->check(CLI::PositiveNumber);
  grade->add_option("--wrap", ga.wrap, "Command template for single-file submissions ({adapter} {file} {function} {problem})");
  grade->add_option("--timeout-ms", ga.timeout_ms, "Per-call timeout")->check(CLI::PositiveNumber);

  std::string cmd1;
  std::string cmd2;
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  auto* diff = app.add_subcommand("diff", "Check two submissions for functional equivalence");
  diff->add_option("bank", bank, "Bank file")->required();
  diff->add_option("problem", problem, "Problem id")->required();
  diff->add_option("--cmd1", cmd1, "First adapter command")->required();
  diff->add_option("--cmd2", cmd2, "Second adapter command")->required();
  diff->add_option("--seed", seed, "PRNG seed");
  diff->add_option("--samples", samples, "Number of sampled inputs")->check(CLI::PositiveNumber);
  diff->add_option("--timeout-ms", timeout_ms, "Per-call timeout")->check(CLI::PositiveNumber);

  std::string config;
  auto* serve = app.add_subcommand("serve", "Run the contest server");
  serve->add_option("--config", config, "Config file")->required();

  std::string team_name;
  auto* teams = app.add_subcommand("teams", "Manage teams");
  teams->require_subcommand(1);
  auto* teams_add = teams->add_subcommand("add", "Register a team and print its id and token");
  teams_add->add_option("name", team_name, "Display name")->required();
  teams_add->add_option("--config", config, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_validate(bank);
    if (*oracle) {
      literals = oracle->remaining();
      if (literals.empty()) {
        std::cerr << "oracle: at least one argument literal is required\n";
        return 2;
      }
      return cmd_oracle(bank, problem, literals);
    }
    if (*verify_cmd) return cmd_verify(bank, problem, cmd, timeout_ms);
    if (*grade) return cmd_grade(ga);
    if (*diff) return cmd_diff(bank, problem, cmd1, cmd2, seed, samples, timeout_ms);
    if (*serve) return cmd_serve(config);
    if (*teams_add) return cmd_teams_add(config, team_name);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
