#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace probeable {

class Value;

struct Unit {
  bool operator==(const Unit&) const = default;
};

struct List {
  std::vector<Value> items;
};

struct Tuple {
  std::vector<Value> items;
};

enum class Kind { Unit, Bool, Int, Float, Str, List, Tuple };

std::string_view kind_name(Kind kind);

/// A literal value as seen by oracle queries, reference solutions and
/// submissions. Int and Float are distinct kinds, as are List and Tuple.
class Value {
 public:
  using Storage = std::variant<Unit, bool, std::int64_t, double, std::string, List, Tuple>;

  Value() = default;

  static Value none() { return Value(Storage{Unit{}}); }
  static Value boolean(bool b) { return Value(Storage{b}); }
  static Value integer(std::int64_t i) { return Value(Storage{i}); }
  static Value floating(double f) { return Value(Storage{f}); }
  static Value string(std::string s) { return Value(Storage{std::move(s)}); }
  static Value list(std::vector<Value> items) { return Value(Storage{List{std::move(items)}}); }
  static Value tuple(std::vector<Value> items) { return Value(Storage{Tuple{std::move(items)}}); }

  Kind kind() const { return static_cast<Kind>(data_.index()); }
  bool is(Kind k) const { return kind() == k; }
  bool is_number() const { return is(Kind::Int) || is(Kind::Float); }
  bool is_sequence() const { return is(Kind::List) || is(Kind::Tuple); }

  // Accessors throw std::bad_variant_access on kind mismatch.
  bool as_bool() const { return std::get<bool>(data_); }
  std::int64_t as_int() const { return std::get<std::int64_t>(data_); }
  double as_float() const { return std::get<double>(data_); }
  const std::string& as_str() const { return std::get<std::string>(data_); }
  const std::vector<Value>& items() const;

  /// Int or Float widened to double.
  double numeric() const;
  bool is_nan() const;

  const Storage& storage() const { return data_; }

 private:
  explicit Value(Storage s) : data_(std::move(s)) {}
  Storage data_;
};

/// An argument tuple, one Value per function parameter.
using Args = std::vector<Value>;

/// Kind-strict structural equality used for grading. NaN equals NaN and
/// +0.0 equals -0.0.
bool grading_equals(const Value& a, const Value& b);
bool grading_equals(const Args& a, const Args& b);

}  // namespace probeable
