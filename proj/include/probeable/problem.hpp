#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "probeable/value.hpp"

namespace probeable {

/// Omission categories: Definition, Behavior on certain inputs, Return type,
/// Tie-break.
enum class Category { D, B, R, T };

std::string_view category_code(Category c);
std::optional<Category> parse_category(std::string_view code);

/// How a targeted test compares reference and submission outputs.
///   Exact   - grading_equals on raw outputs.
///   Lenient - grading_equals after the problem's coercions (so a return-type
///             slip does not mask an unrelated detail).
///   Kind    - grading_equals on the recursive kind signature only.
enum class Comparison { Exact, Lenient, Kind };

std::string_view comparison_name(Comparison c);
std::optional<Comparison> parse_comparison(std::string_view name);

/// Per-argument domain predicates.
enum class ArgDomain {
  Str,              // any string
  WordText,         // printable ASCII, digit runs of at most 18 digits
  IntList,          // list of Int
  NonEmptyIntList,  // non-empty list of Int
  NumberList,       // list of Int or Float (NaN allowed)
  Number,           // Int or Float (NaN allowed)
};

std::string_view arg_domain_name(ArgDomain d);
std::optional<ArgDomain> parse_arg_domain(std::string_view name);

struct DomainError {
  /// One-based index of the offending argument; 0 for a wrong argument count.
  std::size_t argument = 0;
  std::string message;
};

class DomainViolation : public std::runtime_error {
 public:
  explicit DomainViolation(DomainError e) : std::runtime_error(e.message), error_(std::move(e)) {}
  const DomainError& error() const { return error_; }

 private:
  DomainError error_;
};

/// Named input-class generator with its parameters.
struct ClassSpec {
  std::string generator;
  nlohmann::json parameters = nlohmann::json::object();
};

struct Omission {
  std::string id;  // unique within the problem, e.g. "T.tie_largest_index"
  Category category = Category::D;
  std::string description;
  std::vector<Args> simple_cases;
  ClassSpec class_spec;
  Comparison comparison = Comparison::Lenient;
  std::string foil;  // solution that gets exactly this detail wrong
};

struct HiddenDetail {
  std::string text;
  bool reconstructed = false;
};

struct ProblemDef {
  std::string id;
  std::string title;
  std::string function_name;
  std::string public_spec;
  std::string hidden_spec;
  std::vector<HiddenDetail> hidden_details;
  std::vector<ArgDomain> domain;  // one entry per argument
  Args seed_input;
  std::vector<Omission> omissions;
  std::vector<Args> verifier_suite;
  ClassSpec base_class;
  ClassSpec catch_all_class;
  std::vector<std::string> coercions;
  std::string reference;  // solution name
  std::vector<std::string> foils;

  std::size_t arity() const { return domain.size(); }
  const Omission* find_omission(std::string_view omission_id) const;
  std::string qualified_id(const Omission& o) const { return id + "." + o.id; }
};

/// ok (nullopt) or the first violated argument.
std::optional<DomainError> check_domain(const ProblemDef& p, const Args& args);

/// Throws DomainViolation when check_domain fails.
void require_domain(const ProblemDef& p, const Args& args);

/// The reference answer under the full hidden statement. Precondition: check_domain is ok.
Value reference_eval(const ProblemDef& p, const Args& args);

/// Applies the problem's coercions (lenient comparison view).
Value coerce_output(const ProblemDef& p, const Value& v);

/// Recursive kind signature, e.g. "tuple(int, int)".
std::string kind_signature(const Value& v);

/// Compares two outputs under the given mode.
bool outputs_match(const ProblemDef& p, Comparison mode, const Value& expected, const Value& actual);

}  // namespace probeable
