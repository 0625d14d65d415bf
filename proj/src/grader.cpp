#include "probeable/grader.hpp"

#include <map>
#include <stdexcept>

#include "probeable/digest.hpp"
#include "probeable/generators.hpp"
#include "probeable/literal.hpp"

namespace probeable {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Error: return "error";
  }
  return "?";
}

bool EvalReport::all_targeted_pass() const {
  if (!start_error.empty() || base.verdict != Verdict::Pass) return false;
  for (const auto& o : omissions) {
    if (o.class_result != Verdict::Pass) return false;
  }
  return true;
}

TestResult run_differential(const ProblemDef& p, Comparison mode, const std::vector<Args>& inputs, Callable& submission) {
  TestResult r;
  for (const auto& input : inputs) {
    ++r.inputs_run;
    const Value expected = reference_eval(p, input);
    const CallOutcome out = submission.call(input);
    if (!out.ok()) {
      r.verdict = Verdict::Error;
      r.evidence.push_back({input, render_literal(expected), out.describe()});
      if (r.evidence.size() > kMaxEvidence) r.evidence.erase(r.evidence.begin());
      return r;
    }
    if (!outputs_match(p, mode, expected, out.value())) {
      r.verdict = Verdict::Fail;
      r.evidence.push_back({input, render_literal(expected), render_literal(out.value())});
      if (r.evidence.size() >= kMaxEvidence) return r;
    }
  }
  return r;
}

namespace {

std::vector<Args> class_inputs(const ClassSpec& spec, std::uint64_t seed, std::size_t n) {
  return make_input_class(spec)->draw(seed, n);
}

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::Error || b == Verdict::Error) return Verdict::Error;
  if (a == Verdict::Fail || b == Verdict::Fail) return Verdict::Fail;
  return Verdict::Pass;
}

TestResult error_result(const std::string& why) {
  TestResult r;
  r.verdict = Verdict::Error;
  r.evidence.push_back({{}, "", "adapter_error: " + why});
  return r;
}

}  // namespace

OmissionVerdict grade_omission(const ProblemDef& p, const Omission& o, Callable& submission, std::uint64_t seed,
                               std::size_t n_samples) {
  OmissionVerdict v;
  v.omission_id = o.id;
  v.category = o.category;
  const TestResult simple = run_differential(p, o.comparison, o.simple_cases, submission);
  v.simple = simple.verdict;
  v.evidence = simple.evidence;
  if (simple.verdict == Verdict::Error) {
    v.class_result = Verdict::Error;
    return v;
  }
  const auto inputs = class_inputs(o.class_spec, derive_seed(seed, p.qualified_id(o)), n_samples);
  const TestResult cls = run_differential(p, o.comparison, inputs, submission);
  v.class_result = combine(simple.verdict, cls.verdict);
  for (const auto& e : cls.evidence) {
    if (v.evidence.size() >= kMaxEvidence) break;
    v.evidence.push_back(e);
  }
  return v;
}

EvalReport grade_callable(const Bank& bank, const ProblemDef& p, Callable& submission, const GradeOptions& options) {
  EvalReport r;
  r.bank_digest = bank.digest;
  r.problem = p.id;
  r.seed = options.seed;
  r.base = run_differential(p, Comparison::Lenient,
                            class_inputs(p.base_class, derive_seed(options.seed, p.id + "/base"), options.samples),
                            submission);
  for (const auto& o : p.omissions) r.omissions.push_back(grade_omission(p, o, submission, options.seed, options.samples));
  r.catch_all = run_differential(
      p, Comparison::Exact,
      class_inputs(p.catch_all_class, derive_seed(options.seed, p.id + "/catch_all"), options.catch_all_samples),
      submission);
  return r;
}

EvalReport grade_submission(const Bank& bank, const ProblemDef& p, const Submission& s, const GradeOptions& options,
                            const RunnerOptions& runner) {
  EvalReport r;
  try {
    auto handle = RunnerHandle::start(s, runner);
    r = grade_callable(bank, p, *handle, options);
    handle->shutdown();
  } catch (const AdapterStartError& e) {
    r.bank_digest = bank.digest;
    r.problem = p.id;
    r.seed = options.seed;
    r.start_error = e.what();
    r.base = error_result(e.what());
    for (const auto& o : p.omissions) {
      OmissionVerdict v;
      v.omission_id = o.id;
      v.category = o.category;
      v.simple = Verdict::Error;
      v.class_result = Verdict::Error;
      r.omissions.push_back(v);
    }
    r.catch_all = error_result(e.what());
  }
  r.team = s.team;
  r.attempt = s.attempt;
  return r;
}

std::vector<HeatmapCell> aggregate_heatmap(const Bank& bank, const std::vector<EvalReport>& reports) {
  // (problem, category) -> sum of per-report fractions, report count
  std::map<std::pair<std::string, Category>, std::pair<double, std::size_t>> acc;
  for (const auto& r : reports) {
    if (r.bank_digest != bank.digest) throw std::invalid_argument("report for " + r.problem + " comes from a different bank");
    const ProblemDef* p = bank.find(r.problem);
    if (p == nullptr) throw std::invalid_argument("report for unknown problem " + r.problem);
    std::map<Category, std::pair<std::size_t, std::size_t>> per;  // passes, omissions
    for (const auto& o : p->omissions) {
      auto& slot = per[o.category];
      ++slot.second;
      for (const auto& v : r.omissions) {
        if (v.omission_id == o.id && v.class_result == Verdict::Pass) ++slot.first;
      }
    }
    for (const auto& [cat, counts] : per) {
      auto& a = acc[{p->id, cat}];
      a.first += static_cast<double>(counts.first) / static_cast<double>(counts.second);
      ++a.second;
    }
  }
  std::vector<HeatmapCell> cells;
  for (const auto& p : bank.problems) {
    for (Category cat : {Category::D, Category::B, Category::R, Category::T}) {
      auto it = acc.find({p.id, cat});
      if (it == acc.end()) continue;
      cells.push_back({p.id, cat, it->second.first / static_cast<double>(it->second.second)});
    }
  }
  return cells;
}

DiffResult diff_equivalent(const ProblemDef& p, Callable& s1, Callable& s2, std::uint64_t seed, std::size_t n_samples) {
  DiffResult d;
  for (const auto& input : class_inputs(p.catch_all_class, derive_seed(seed, p.id + "/diff"), n_samples)) {
    ++d.inputs_run;
    const CallOutcome a = s1.call(input);
    const CallOutcome b = s2.call(input);
    bool same = false;
    if (a.ok() && b.ok()) {
      same = grading_equals(a.value(), b.value());
    } else if (!a.ok() && !b.ok()) {
      same = a.fault().kind == b.fault().kind;
    }
    if (!same) {
      d.equivalent = false;
      d.input = input;
      d.output1 = a.describe();
      d.output2 = b.describe();
      return d;
    }
  }
  return d;
}

}  // namespace probeable
