#pragma once

// Brute-force restatements of the hidden problem statements, written against the
// problem text rather than the bundled references: each enumerates candidate
// answers and filters them by the stated rules.

#include <algorithm>
#include <limits>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "probeable/value.hpp"

namespace probeable::testing {

inline Value brute_practice(const std::string& s) {
  std::string kept;
  for (char c : s) {
    if (c == ' ') continue;
    kept += (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : c;
  }
  std::string reversed(kept.rbegin(), kept.rend());
  return Value::boolean(reversed == kept);
}

inline Value brute_p1(const std::vector<std::int64_t>& nums) {
  const auto n = static_cast<std::int64_t>(nums.size());
  std::vector<std::int64_t> candidates;
  for (std::int64_t i = 0; i < n; ++i) {
    if (nums[i] <= 0) continue;
    bool smallest = true;
    for (auto v : nums) smallest = smallest && !(v > 0 && v < nums[i]);
    if (smallest) candidates.push_back(i);
  }
  if (candidates.empty()) return Value::integer(-(n + 1));
  return Value::integer(*std::max_element(candidates.begin(), candidates.end()));
}

inline Value brute_p2(const std::string& text) {
  std::vector<std::string> words;
  std::string cur;
  for (char c : text + " ") {
    if (c == ' ') {
      if (!cur.empty()) words.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  static const std::regex trailing("([0-9]+)$");
  for (const auto& w : words) {
    std::smatch m;
    if (!std::regex_search(w, m, trailing)) continue;
    const std::string digits = m[1].str();
    if (digits.find_first_not_of('0') == std::string::npos) continue;
    return Value::integer(std::stoll(digits));
  }
  return Value::integer(-static_cast<std::int64_t>(text.size()) - 1);
}

inline Value brute_p3(const std::vector<std::int64_t>& nums) {
  std::optional<std::int64_t> best;
  std::size_t best_count = 0;
  for (auto v : nums) {
    const auto c = static_cast<std::size_t>(std::count(nums.begin(), nums.end(), v));
    if (!best || c < best_count || (c == best_count && v < *best)) {
      best = v;
      best_count = c;
    }
  }
  return Value::integer(*best);
}

inline Value brute_p4(const std::vector<std::int64_t>& p) {
  if (p.empty()) return Value::none();
  std::vector<std::pair<std::int64_t, std::int64_t>> trades;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (p[j] - p[i] >= 0) trades.emplace_back(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j));
    }
  }
  if (trades.empty()) return Value::tuple({Value::integer(-1), Value::integer(-1)});
  auto profit = [&](const std::pair<std::int64_t, std::int64_t>& t) { return p[t.second] - p[t.first]; };
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  for (const auto& t : trades) best = std::max(best, profit(t));
  std::vector<std::pair<std::int64_t, std::int64_t>> top;
  for (const auto& t : trades) {
    if (profit(t) == best) top.push_back(t);
  }
  const auto pick = *std::min_element(top.begin(), top.end());
  return Value::tuple({Value::integer(pick.first), Value::integer(pick.second)});
}

inline Value brute_p5(const std::vector<Value>& nums, const Value& key) {
  if (key.is_nan()) return Value::none();
  for (const auto& v : nums) {
    if (v.is_nan()) return Value::none();
  }
  const long double k = key.is(Kind::Int) ? static_cast<long double>(key.as_int()) : key.as_float();
  auto num = [](const Value& v) { return v.is(Kind::Int) ? static_cast<long double>(v.as_int()) : static_cast<long double>(v.as_float()); };
  for (const auto& v : nums) {
    if (num(v) == k) return Value::tuple({v, v});
  }
  std::optional<Value> below;
  std::optional<Value> above;
  for (const auto& v : nums) {
    const long double x = num(v);
    if (x < k && (!below || x > num(*below))) below = v;
    if (x > k && (!above || x < num(*above))) above = v;
  }
  return Value::tuple({below.value_or(Value::none()), above.value_or(Value::none())});
}

}  // namespace probeable::testing
