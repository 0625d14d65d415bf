#include "probeable/value.hpp"

#include <cmath>
#include <stdexcept>

namespace probeable {

std::string_view kind_name(Kind kind) {
  switch (kind) {
    case Kind::Unit: return "none";
    case Kind::Bool: return "bool";
    case Kind::Int: return "int";
    case Kind::Float: return "float";
    case Kind::Str: return "str";
    case Kind::List: return "list";
    case Kind::Tuple: return "tuple";
  }
  return "?";
}

const std::vector<Value>& Value::items() const {
  if (const auto* l = std::get_if<List>(&data_)) return l->items;
  if (const auto* t = std::get_if<Tuple>(&data_)) return t->items;
  throw std::bad_variant_access();
}

double Value::numeric() const {
  if (const auto* i = std::get_if<std::int64_t>(&data_)) return static_cast<double>(*i);
  return std::get<double>(data_);
}

bool Value::is_nan() const {
  const auto* f = std::get_if<double>(&data_);
  return f != nullptr && std::isnan(*f);
}

namespace {

bool items_equal(const std::vector<Value>& a, const std::vector<Value>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!grading_equals(a[i], b[i])) return false;
  }
  return true;
}

}  // namespace

bool grading_equals(const Value& a, const Value& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::Unit: return true;
    case Kind::Bool: return a.as_bool() == b.as_bool();
    case Kind::Int: return a.as_int() == b.as_int();
    case Kind::Float: {
      const double x = a.as_float();
      const double y = b.as_float();
      if (std::isnan(x) || std::isnan(y)) return std::isnan(x) && std::isnan(y);
      return x == y;
    }
    case Kind::Str: return a.as_str() == b.as_str();
    case Kind::List:
    case Kind::Tuple: return items_equal(a.items(), b.items());
  }
  return false;
}

bool grading_equals(const Args& a, const Args& b) { return items_equal(a, b); }

}  // namespace probeable
