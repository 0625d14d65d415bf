#include "probeable/problem.hpp"

#include <stdexcept>

#include "probeable/solutions.hpp"

namespace probeable {

std::string_view category_code(Category c) {
  switch (c) {
    case Category::D: return "D";
    case Category::B: return "B";
    case Category::R: return "R";
    case Category::T: return "T";
  }
  return "?";
}

std::optional<Category> parse_category(std::string_view code) {
  if (code == "D") return Category::D;
  if (code == "B") return Category::B;
  if (code == "R") return Category::R;
  if (code == "T") return Category::T;
  return std::nullopt;
}

std::string_view comparison_name(Comparison c) {
  switch (c) {
    case Comparison::Exact: return "exact";
    case Comparison::Lenient: return "lenient";
    case Comparison::Kind: return "kind";
  }
  return "?";
}

std::optional<Comparison> parse_comparison(std::string_view name) {
  if (name == "exact") return Comparison::Exact;
  if (name == "lenient") return Comparison::Lenient;
  if (name == "kind") return Comparison::Kind;
  return std::nullopt;
}

namespace {

struct DomainInfo {
  ArgDomain domain;
  std::string_view name;
  std::string_view requirement;
};

constexpr DomainInfo kDomains[] = {
    {ArgDomain::Str, "str", "a string"},
    {ArgDomain::WordText, "word_text",
     "a string of printable ASCII characters with digit runs of at most 18 digits"},
    {ArgDomain::IntList, "list_of_int", "a list of integers"},
    {ArgDomain::NonEmptyIntList, "nonempty_list_of_int", "a non-empty list of integers"},
    {ArgDomain::NumberList, "list_of_number", "a list of numbers (int or float)"},
    {ArgDomain::Number, "number", "a number (int or float)"},
};

const DomainInfo& info(ArgDomain d) {
  for (const auto& i : kDomains) {
    if (i.domain == d) return i;
  }
  throw std::logic_error("unknown ArgDomain");
}

bool all_of_kind(const Value& v, bool allow_float) {
  if (!v.is(Kind::List)) return false;
  for (const auto& item : v.items()) {
    if (item.is(Kind::Int)) continue;
    if (allow_float && item.is(Kind::Float)) continue;
    return false;
  }
  return true;
}

bool word_text_ok(const Value& v) {
  if (!v.is(Kind::Str)) return false;
  std::size_t run = 0;
  for (char c : v.as_str()) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 0x20 || u > 0x7E) return false;
    run = (c >= '0' && c <= '9') ? run + 1 : 0;
    if (run > 18) return false;
  }
  return true;
}

bool satisfies(ArgDomain d, const Value& v) {
  switch (d) {
    case ArgDomain::Str: return v.is(Kind::Str);
    case ArgDomain::WordText: return word_text_ok(v);
    case ArgDomain::IntList: return all_of_kind(v, false);
    case ArgDomain::NonEmptyIntList: return all_of_kind(v, false) && !v.items().empty();
    case ArgDomain::NumberList: return all_of_kind(v, true);
    case ArgDomain::Number: return v.is_number();
  }
  return false;
}

std::string kind_signature_into(const Value& v) {
  if (!v.is_sequence()) return std::string(kind_name(v.kind()));
  std::string out(kind_name(v.kind()));
  out += '(';
  const auto& items = v.items();
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ", ";
    out += kind_signature_into(items[i]);
  }
  out += ')';
  return out;
}

bool is_integer_text(const std::string& s) {
  std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (i >= s.size() || s.size() - i > 18) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace

std::string_view arg_domain_name(ArgDomain d) { return info(d).name; }

std::optional<ArgDomain> parse_arg_domain(std::string_view name) {
  for (const auto& i : kDomains) {
    if (i.name == name) return i.domain;
  }
  return std::nullopt;
}

const Omission* ProblemDef::find_omission(std::string_view omission_id) const {
  for (const auto& o : omissions) {
    if (o.id == omission_id) return &o;
  }
  return nullptr;
}

std::optional<DomainError> check_domain(const ProblemDef& p, const Args& args) {
  if (args.size() != p.arity()) {
    return DomainError{0, "expected " + std::to_string(p.arity()) + " argument(s), got " +
                              std::to_string(args.size())};
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!satisfies(p.domain[i], args[i])) {
      return DomainError{i + 1, "argument " + std::to_string(i + 1) + " must be " +
                                    std::string(info(p.domain[i]).requirement)};
    }
  }
  return std::nullopt;
}

void require_domain(const ProblemDef& p, const Args& args) {
  if (auto err = check_domain(p, args)) throw DomainViolation(std::move(*err));
}

Value reference_eval(const ProblemDef& p, const Args& args) {
  const Solution* s = find_solution(p.reference);
  if (s == nullptr) throw std::logic_error("problem " + p.id + " has unknown reference " + p.reference);
  return s->fn(args);
}

Value coerce_output(const ProblemDef& p, const Value& v) {
  Value out = v;
  for (const auto& c : p.coercions) {
    if (c == "integer_text_as_int") {
      if (out.is(Kind::Str) && is_integer_text(out.as_str())) {
        out = Value::integer(std::stoll(out.as_str()));
      }
    } else if (c == "list_as_tuple") {
      if (out.is(Kind::List)) out = Value::tuple(out.items());
    }
  }
  return out;
}

std::string kind_signature(const Value& v) { return kind_signature_into(v); }

bool outputs_match(const ProblemDef& p, Comparison mode, const Value& expected, const Value& actual) {
  switch (mode) {
    case Comparison::Exact: return grading_equals(expected, actual);
    case Comparison::Lenient: return grading_equals(coerce_output(p, expected), coerce_output(p, actual));
    case Comparison::Kind: return kind_signature(expected) == kind_signature(actual);
  }
  return false;
}

}  // namespace probeable
