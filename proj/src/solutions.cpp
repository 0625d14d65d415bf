#include "probeable/solutions.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

namespace probeable {

namespace {

std::vector<std::int64_t> ints_of(const Value& list) {
  std::vector<std::int64_t> out;
  out.reserve(list.items().size());
  for (const auto& v : list.items()) out.push_back(v.as_int());
  return out;
}

Value not_found(std::size_t length) { return Value::integer(-static_cast<std::int64_t>(length) - 1); }

// ---------------------------------------------------------------- practice

std::vector<char32_t> code_points(const std::string& s) {
  std::vector<char32_t> out;
  for (std::size_t i = 0; i < s.size();) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    std::size_t len = b0 < 0x80 ? 1 : (b0 & 0xE0) == 0xC0 ? 2 : (b0 & 0xF0) == 0xE0 ? 3 : 4;
    char32_t cp = len == 1 ? b0 : len == 2 ? (b0 & 0x1F) : len == 3 ? (b0 & 0x0F) : (b0 & 0x07);
    for (std::size_t k = 1; k < len && i + k < s.size(); ++k) {
      cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

char32_t ascii_lower(char32_t c) { return (c >= U'A' && c <= U'Z') ? c - U'A' + U'a' : c; }

Value practice_reference(const Args& a) {
  std::vector<char32_t> kept;
  for (char32_t c : code_points(a[0].as_str())) {
    if (c != U' ') kept.push_back(ascii_lower(c));
  }
  std::size_t i = 0;
  std::size_t j = kept.size();
  while (i + 1 < j) {
    if (kept[i] != kept[j - 1]) return Value::boolean(false);
    ++i;
    --j;
  }
  return Value::boolean(true);
}

Value practice_plain_reverse(const Args& a) {
  const auto cps = code_points(a[0].as_str());
  return Value::boolean(std::equal(cps.begin(), cps.end(), cps.rbegin()));
}

// ---------------------------------------------------------------------- p1

Value p1_reference(const Args& a) {
  const auto nums = ints_of(a[0]);
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < nums.size(); ++i) {
    if (nums[i] > 0 && (!best || nums[i] <= nums[*best])) best = i;
  }
  if (!best) return not_found(nums.size());
  return Value::integer(static_cast<std::int64_t>(*best));
}

// First index of the smallest positive, or nullopt.
std::optional<std::size_t> p1_first_smallest(const std::vector<std::int64_t>& nums) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < nums.size(); ++i) {
    if (nums[i] > 0 && (!best || nums[i] < nums[*best])) best = i;
  }
  return best;
}

Value p1_c1(const Args& a) {
  const auto idx = p1_first_smallest(ints_of(a[0]));
  return idx ? Value::integer(static_cast<std::int64_t>(*idx)) : Value::none();
}

Value p1_c2(const Args& a) {
  const auto idx = p1_first_smallest(ints_of(a[0]));
  return Value::integer(idx ? static_cast<std::int64_t>(*idx) : -1);
}

Value p1_c3(const Args& a) {
  const auto nums = ints_of(a[0]);
  const auto idx = p1_first_smallest(nums);
  return idx ? Value::integer(static_cast<std::int64_t>(*idx)) : not_found(nums.size());
}

Value p1_minus_one(const Args& a) {
  Value v = p1_reference(a);
  return v.as_int() < 0 ? Value::integer(-1) : v;
}

// ---------------------------------------------------------------------- p2

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> words;
  std::string cur;
  for (char c : s) {
    if (c == ' ') {
      if (!cur.empty()) words.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) words.push_back(std::move(cur));
  return words;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::int64_t digits_value(std::string_view digits) {
  std::int64_t v = 0;
  for (char c : digits) v = v * 10 + (c - '0');
  return v;
}

std::string trailing_run(const std::string& word) {
  std::size_t k = word.size();
  while (k > 0 && is_digit(word[k - 1])) --k;
  return word.substr(k);
}

std::string first_run(const std::string& word) {
  std::size_t b = 0;
  while (b < word.size() && !is_digit(word[b])) ++b;
  std::size_t e = b;
  while (e < word.size() && is_digit(word[e])) ++e;
  return word.substr(b, e - b);
}

std::optional<std::string> p2_scan(const std::string& s, bool trailing, bool reverse, bool whole_word) {
  auto words = split_words(s);
  if (reverse) std::reverse(words.begin(), words.end());
  for (const auto& w : words) {
    std::string run = trailing ? trailing_run(w) : first_run(w);
    if (whole_word && run.size() != w.size()) continue;
    if (!run.empty() && digits_value(run) > 0) return run;
  }
  return std::nullopt;
}

Value p2_result(const std::string& s, const std::optional<std::string>& run) {
  return run ? Value::integer(digits_value(*run)) : not_found(s.size());
}

Value p2_reference(const Args& a) {
  const auto& s = a[0].as_str();
  return p2_result(s, p2_scan(s, true, false, false));
}

Value p2_whole_word(const Args& a) {
  const auto& s = a[0].as_str();
  return p2_result(s, p2_scan(s, true, false, true));
}

Value p2_first_run(const Args& a) {
  const auto& s = a[0].as_str();
  return p2_result(s, p2_scan(s, false, false, false));
}

Value p2_last_word(const Args& a) {
  const auto& s = a[0].as_str();
  return p2_result(s, p2_scan(s, true, true, false));
}

Value p2_str_result(const Args& a) {
  const auto& s = a[0].as_str();
  const auto run = p2_scan(s, true, false, false);
  return run ? Value::string(*run) : not_found(s.size());
}

Value p2_minus_one(const Args& a) {
  const auto run = p2_scan(a[0].as_str(), true, false, false);
  return run ? Value::integer(digits_value(*run)) : Value::integer(-1);
}

// ---------------------------------------------------------------------- p3

Value p3_pick(const Args& a, bool smallest) {
  const auto nums = ints_of(a[0]);
  std::map<std::int64_t, std::size_t> counts;
  for (auto v : nums) ++counts[v];
  std::size_t least = nums.size();
  for (const auto& [v, c] : counts) least = std::min(least, c);
  if (smallest) {
    for (const auto& [v, c] : counts) {
      if (c == least) return Value::integer(v);
    }
  }
  for (auto v : nums) {
    if (counts[v] == least) return Value::integer(v);
  }
  return Value::none();  // unreachable on the domain (non-empty lists)
}

Value p3_reference(const Args& a) { return p3_pick(a, true); }
Value p3_first_occurrence(const Args& a) { return p3_pick(a, false); }

// ---------------------------------------------------------------------- p4

Value trade(std::int64_t buy, std::int64_t sell) {
  return Value::tuple({Value::integer(buy), Value::integer(sell)});
}

Value no_trade() { return trade(-1, -1); }

struct Trade {
  std::int64_t buy = -1;
  std::int64_t sell = -1;
  std::int64_t profit = -1;
};

// Single pass: sell index advances, buy is the earliest minimum before it.
// Strict comparisons keep the smallest sell reaching the maximum, which is
// also the smallest buy among maximal trades.
std::optional<Trade> p4_best(const std::vector<std::int64_t>& p, std::int64_t min_profit) {
  std::optional<Trade> best;
  std::size_t low = 0;
  for (std::size_t j = 1; j < p.size(); ++j) {
    const std::int64_t profit = p[j] - p[low];
    if (profit >= min_profit && (!best || profit > best->profit)) {
      best = Trade{static_cast<std::int64_t>(low), static_cast<std::int64_t>(j), profit};
    }
    if (p[j] < p[low]) low = j;
  }
  return best;
}

Value p4_reference(const Args& a) {
  const auto p = ints_of(a[0]);
  if (p.empty()) return Value::none();
  const auto best = p4_best(p, 0);
  return best ? trade(best->buy, best->sell) : no_trade();
}

// Among maximal trades, the one with the largest sell and then largest buy.
Trade p4_latest_maximal(const std::vector<std::int64_t>& p, std::int64_t profit) {
  Trade t;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (p[j] - p[i] != profit) continue;
      const auto si = static_cast<std::int64_t>(i);
      const auto sj = static_cast<std::int64_t>(j);
      if (sj > t.sell || (sj == t.sell && si > t.buy)) t = Trade{si, sj, profit};
    }
  }
  return t;
}

Value p4_strict_positive(const Args& a) {
  const auto p = ints_of(a[0]);
  if (p.empty()) return Value::none();
  const auto best = p4_best(p, 1);
  return best ? trade(best->buy, best->sell) : no_trade();
}

Value p4_unordered(const Args& a) {
  const auto p = ints_of(a[0]);
  if (p.empty()) return Value::none();
  const auto lo = std::min_element(p.begin(), p.end()) - p.begin();
  const auto hi = std::max_element(p.begin(), p.end()) - p.begin();
  return trade(lo, hi);
}

Value p4_none_when_no_trade(const Args& a) {
  const auto p = ints_of(a[0]);
  if (p.empty()) return Value::none();
  const auto best = p4_best(p, 0);
  return best ? trade(best->buy, best->sell) : Value::none();
}

Value p4_zero_latest(const Args& a) {
  const auto p = ints_of(a[0]);
  if (p.empty()) return Value::none();
  const auto best = p4_best(p, 0);
  if (!best) return no_trade();
  if (best->profit != 0) return trade(best->buy, best->sell);
  const Trade t = p4_latest_maximal(p, 0);
  return trade(t.buy, t.sell);
}

Value p4_latest_best(const Args& a) {
  const auto p = ints_of(a[0]);
  if (p.empty()) return Value::none();
  const auto best = p4_best(p, 0);
  if (!best) return no_trade();
  if (best->profit == 0) return trade(best->buy, best->sell);
  const Trade t = p4_latest_maximal(p, best->profit);
  return trade(t.buy, t.sell);
}

Value p4_positive_only(const Args& a) {
  const auto p = ints_of(a[0]);
  if (p.empty()) return Value::none();
  std::vector<std::int64_t> kept;
  std::vector<std::int64_t> index;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0) {
      kept.push_back(p[i]);
      index.push_back(static_cast<std::int64_t>(i));
    }
  }
  const auto best = p4_best(kept, 0);
  return best ? trade(index[best->buy], index[best->sell]) : no_trade();
}

Value p4_empty_no_trade(const Args& a) {
  if (a[0].items().empty()) return no_trade();
  return p4_reference(a);
}

Value p4_list_result(const Args& a) {
  Value v = p4_reference(a);
  if (v.is(Kind::Tuple)) return Value::list(v.items());
  return v;
}

// ---------------------------------------------------------------------- p5

struct P5Options {
  bool equal_rule = true;
  bool nan_key_none = true;
  bool nan_list_none = true;
};

Value p5_solve(const Args& a, P5Options opt) {
  const auto& nums = a[0].items();
  const Value& key = a[1];
  if (key.is_nan()) {
    return opt.nan_key_none ? Value::none() : Value::tuple({Value::none(), Value::none()});
  }
  const bool any_nan = std::any_of(nums.begin(), nums.end(), [](const Value& v) { return v.is_nan(); });
  if (any_nan && opt.nan_list_none) return Value::none();

  auto as_ld = [](const Value& v) {
    return v.is(Kind::Int) ? static_cast<long double>(v.as_int()) : static_cast<long double>(v.as_float());
  };
  const long double k = as_ld(key);
  const Value* smaller = nullptr;
  const Value* larger = nullptr;
  for (const auto& v : nums) {
    if (v.is_nan()) continue;
    const long double x = as_ld(v);
    if (x == k && opt.equal_rule) return Value::tuple({v, v});
    if (x < k && (smaller == nullptr || x > as_ld(*smaller))) smaller = &v;
    if (x > k && (larger == nullptr || x < as_ld(*larger))) larger = &v;
  }
  return Value::tuple({smaller ? *smaller : Value::none(), larger ? *larger : Value::none()});
}

Value p5_reference(const Args& a) { return p5_solve(a, {}); }
Value p5_ignore_equal(const Args& a) { return p5_solve(a, {.equal_rule = false}); }
Value p5_nan_key_pair(const Args& a) { return p5_solve(a, {.nan_key_none = false}); }
Value p5_ignore_nan(const Args& a) { return p5_solve(a, {.nan_list_none = false}); }

const std::vector<Solution>& registry() {
  static const std::vector<Solution> solutions = {
      {"practice.reference", "practice", "space- and case-insensitive palindrome", practice_reference},
      {"practice.plain_reverse", "practice", "s == s[::-1]", practice_plain_reverse},

      {"p1.reference", "p1", "largest index of smallest positive; -(len+1) if none", p1_reference},
      {"p1.c1", "p1", "first index; None when no positive", p1_c1},
      {"p1.c2", "p1", "first index; -1 when no positive", p1_c2},
      {"p1.c3", "p1", "first index; -(len+1) when no positive", p1_c3},
      {"p1.minus_one", "p1", "largest index; -1 when no positive", p1_minus_one},

      {"p2.reference", "p2", "trailing digit run of first qualifying word", p2_reference},
      {"p2.whole_word", "p2", "only all-digit words count", p2_whole_word},
      {"p2.first_run", "p2", "first digit run of each word", p2_first_run},
      {"p2.last_word", "p2", "scans words from the right", p2_last_word},
      {"p2.str_result", "p2", "returns the digits as a str", p2_str_result},
      {"p2.minus_one", "p2", "-1 when no positive integer", p2_minus_one},

      {"p3.reference", "p3", "smallest among least frequent", p3_reference},
      {"p3.first_occurrence", "p3", "first least frequent in list order", p3_first_occurrence},

      {"p4.reference", "p4", "max non-negative profit, earliest buy then sell", p4_reference},
      {"p4.strict_positive", "p4", "zero-profit trades rejected", p4_strict_positive},
      {"p4.unordered", "p4", "buy at global min, sell at global max", p4_unordered},
      {"p4.none_when_no_trade", "p4", "None when no trade exists", p4_none_when_no_trade},
      {"p4.zero_latest", "p4", "latest pair among zero-profit trades", p4_zero_latest},
      {"p4.positive_only", "p4", "non-positive prices skipped", p4_positive_only},
      {"p4.empty_no_trade", "p4", "(-1, -1) for the empty list", p4_empty_no_trade},
      {"p4.list_result", "p4", "returns [buy, sell] lists", p4_list_result},
      {"p4.latest_best", "p4", "latest pair among maximal positive trades", p4_latest_best},

      {"p5.reference", "p5", "closest smaller/larger with equal and NaN rules", p5_reference},
      {"p5.ignore_equal", "p5", "values equal to key ignored", p5_ignore_equal},
      {"p5.nan_key_pair", "p5", "(None, None) for a NaN key", p5_nan_key_pair},
      {"p5.ignore_nan", "p5", "NaN list elements skipped", p5_ignore_nan},
  };
  return solutions;
}

}  // namespace

std::span<const Solution> all_solutions() { return registry(); }

const Solution* find_solution(std::string_view name) {
  for (const auto& s : registry()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

}  // namespace probeable
