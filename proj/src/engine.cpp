#include "probeable/engine.hpp"

#include "probeable/literal.hpp"

namespace probeable {

std::string_view refusal_kind_name(OracleRefusal::Kind k) {
  return k == OracleRefusal::Kind::Parse ? "parse" : "domain";
}

namespace {

OracleAnswer answer_for(const ProblemDef& p, const Args& args) {
  OracleAnswer a;
  for (const auto& v : args) a.input_echo.push_back(render_literal(v));
  a.output = render_literal(reference_eval(p, args));
  return a;
}

}  // namespace

OracleResult oracle_query(const ProblemDef& p, const std::vector<std::string>& raw_args) {
  Args args;
  std::size_t index = 0;
  try {
    args = parse_arguments(raw_args, &index);
  } catch (const ParseError& e) {
    OracleRefusal r;
    r.kind = OracleRefusal::Kind::Parse;
    r.argument = index + 1;
    r.position = e.position();
    r.message = "argument " + std::to_string(index + 1) + ": " + e.message() + " at position " + std::to_string(e.position());
    return r;
  }
  if (auto err = check_domain(p, args)) {
    OracleRefusal r;
    r.kind = OracleRefusal::Kind::Domain;
    r.argument = err->argument;
    r.message = err->message;
    return r;
  }
  return answer_for(p, args);
}

OracleAnswer seed_answer(const ProblemDef& p) { return answer_for(p, p.seed_input); }

VerifierResult verify(const ProblemDef& p, Callable& submission) {
  VerifierResult r;
  r.total = p.verifier_suite.size();
  for (const auto& input : p.verifier_suite) {
    const CallOutcome out = submission.call(input);
    if (out.ok() && grading_equals(reference_eval(p, input), out.value())) ++r.passed;
  }
  return r;
}

}  // namespace probeable
