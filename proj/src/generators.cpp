#include "probeable/generators.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>

#include "probeable/literal.hpp"

namespace probeable {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("Rng::uniform: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());  // full 64-bit range
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + x % span);
}

std::vector<Args> InputClass::draw(std::uint64_t seed, std::size_t n) const {
  std::vector<Args> out = boundary();
  Rng rng(seed);
  out.reserve(out.size() + n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sample(rng));
  return out;
}

namespace {

using Proposal = std::function<Args(Rng&)>;
using Predicate = std::function<bool(const Args&)>;

class RegionClass final : public InputClass {
 public:
  RegionClass(std::string label, Proposal propose, Predicate region, Predicate bounds, std::vector<Args> boundary)
      : label_(std::move(label)),
        propose_(std::move(propose)),
        region_(std::move(region)),
        bounds_(std::move(bounds)),
        boundary_(std::move(boundary)) {
    for (const auto& b : boundary_) {
      if (!region_(b)) throw std::logic_error(label_ + ": boundary input " + render_call(b) + " outside region");
    }
  }

  Args sample(Rng& rng) const override {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      Args a = propose_(rng);
      if (bounds_(a) && region_(a)) return a;
    }
    throw std::runtime_error(label_ + ": proposal distribution failed to hit the region");
  }

  bool contains(const Args& args) const override { return region_(args); }

  std::vector<Args> boundary() const override { return boundary_; }

 private:
  static constexpr int kMaxAttempts = 100000;
  std::string label_;
  Proposal propose_;
  Predicate region_;
  Predicate bounds_;
  std::vector<Args> boundary_;
};

// ------------------------------------------------------------------ helpers

std::int64_t int_param(const nlohmann::json& params, const char* key, std::int64_t fallback) {
  if (!params.contains(key)) return fallback;
  const auto& v = params.at(key);
  if (!v.is_number_integer()) throw std::invalid_argument(std::string("parameter '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

std::string str_param(const nlohmann::json& params, const char* key, const std::string& fallback) {
  if (!params.contains(key)) return fallback;
  const auto& v = params.at(key);
  if (!v.is_string()) throw std::invalid_argument(std::string("parameter '") + key + "' must be a string");
  return v.get<std::string>();
}

struct ListBounds {
  std::int64_t min_len;
  std::int64_t max_len;
  std::int64_t lo;
  std::int64_t hi;
};

ListBounds list_bounds(const nlohmann::json& params, std::int64_t min_len_default) {
  ListBounds b{int_param(params, "min_len", min_len_default), int_param(params, "max_len", 8),
               int_param(params, "lo", -5), int_param(params, "hi", 5)};
  if (b.min_len < 0 || b.max_len < b.min_len || b.hi < b.lo) throw std::invalid_argument("invalid list bounds");
  return b;
}

Value int_list(const std::vector<std::int64_t>& xs) {
  std::vector<Value> items;
  items.reserve(xs.size());
  for (auto x : xs) items.push_back(Value::integer(x));
  return Value::list(std::move(items));
}

std::vector<std::int64_t> ints_of(const Value& list) {
  std::vector<std::int64_t> out;
  for (const auto& v : list.items()) out.push_back(v.as_int());
  return out;
}

std::vector<std::int64_t> random_ints(Rng& rng, std::int64_t len, std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> xs(static_cast<std::size_t>(len));
  for (auto& x : xs) x = rng.uniform(lo, hi);
  return xs;
}

template <typename T>
void shuffle(std::vector<T>& xs, Rng& rng) {
  for (std::size_t i = xs.size(); i > 1; --i) std::swap(xs[i - 1], xs[rng.index(i)]);
}

Args one(Value v) { return Args{std::move(v)}; }

std::vector<Args> parse_boundary(std::initializer_list<const char*> literals) {
  std::vector<Args> out;
  for (const char* l : literals) {
    Value t = parse_literal(l);
    out.push_back(t.items());
  }
  return out;
}

Predicate list_length_bounds(std::int64_t min_len, std::int64_t max_len) {
  return [=](const Args& a) {
    const auto n = static_cast<std::int64_t>(a[0].items().size());
    return n >= min_len && n <= max_len;
  };
}

[[noreturn]] void unknown_region(const std::string& generator, const std::string& region) {
  throw std::invalid_argument(generator + ": unknown region '" + region + "'");
}

// ----------------------------------------------------------------- practice

bool practice_plain(const Args& a) {
  for (char c : a[0].as_str()) {
    if (c == ' ' || (c >= 'A' && c <= 'Z')) return false;
  }
  return true;
}

std::unique_ptr<InputClass> palindrome_text(const nlohmann::json& params) {
  const std::string region = str_param(params, "region", "any");
  const std::string alphabet = str_param(params, "alphabet", "abc");
  const auto min_len = int_param(params, "min_len", 0);
  const auto max_len = int_param(params, "max_len", 10);
  if (alphabet.empty() || max_len < min_len) throw std::invalid_argument("palindrome_text: bad parameters");
  std::string lower;
  bool has_upper = false;
  bool has_space = false;
  for (char c : alphabet) {
    if (c >= 'a' && c <= 'z') lower += c;
    if (c >= 'A' && c <= 'Z') has_upper = true;
    if (c == ' ') has_space = true;
  }
  if (lower.empty()) lower = "a";

  Predicate in_region;
  std::vector<Args> boundary;
  bool noisy = false;
  if (region == "plain") {
    in_region = practice_plain;
    boundary = parse_boundary({"('',)", "('a',)", "('ab',)", "('aba',)"});
  } else if (region == "any") {
    in_region = [](const Args&) { return true; };
    boundary = parse_boundary({"('',)", "(' ',)", "('Aa',)", "('a b a',)", "('ab A',)"});
    noisy = true;
  } else {
    unknown_region("palindrome_text", region);
  }
  const std::string pool = noisy ? alphabet : lower;

  Proposal propose = [=](Rng& rng) {
    const auto len = rng.uniform(min_len, max_len);
    std::string s;
    if (rng.chance(1, 2)) {
      for (std::int64_t i = 0; i < len; ++i) s += pool[rng.index(pool.size())];
      return one(Value::string(s));
    }
    // Mirrored core, optionally perturbed by case flips and inserted spaces.
    const auto core_len = noisy ? std::max<std::int64_t>(0, len - 2) : len;
    std::string half;
    for (std::int64_t i = 0; i < (core_len + 1) / 2; ++i) half += lower[rng.index(lower.size())];
    s = half;
    for (std::int64_t i = core_len / 2 - 1; i >= 0; --i) s += half[static_cast<std::size_t>(i)];
    if (noisy) {
      if (has_upper) {
        for (auto& c : s) {
          if (rng.chance(1, 4)) c = static_cast<char>(c - 'a' + 'A');
        }
      }
      if (has_space) {
        const auto spaces = rng.uniform(0, 2);
        for (std::int64_t k = 0; k < spaces; ++k) s.insert(s.begin() + static_cast<std::ptrdiff_t>(rng.index(s.size() + 1)), ' ');
      }
    }
    return one(Value::string(s));
  };
  Predicate bounds = [=](const Args& a) {
    const auto n = static_cast<std::int64_t>(a[0].as_str().size());
    return n >= min_len && n <= max_len;
  };
  return std::make_unique<RegionClass>("palindrome_text/" + region, propose, in_region, bounds, boundary);
}

// ----------------------------------------------------------------------- p1

std::string p1_region(const Args& a) {
  const auto nums = ints_of(a[0]);
  std::int64_t best = 0;
  std::size_t count = 0;
  for (auto v : nums) {
    if (v <= 0) continue;
    if (count == 0 || v < best) {
      best = v;
      count = 1;
    } else if (v == best) {
      ++count;
    }
  }
  if (count == 0) return "no_positive";
  return count >= 2 ? "tie" : "base";
}

std::unique_ptr<InputClass> p1_lists(const nlohmann::json& params) {
  const std::string region = str_param(params, "region", "any");
  const ListBounds b = list_bounds(params, 0);
  Proposal propose;
  std::vector<Args> boundary;
  if (region == "any") {
    propose = [b](Rng& rng) { return one(int_list(random_ints(rng, rng.uniform(b.min_len, b.max_len), b.lo, b.hi))); };
    boundary = parse_boundary({"([],)", "([1],)", "([1, 1],)", "([0],)"});
  } else if (region == "no_positive") {
    if (b.lo > 0) throw std::invalid_argument("p1_lists/no_positive needs lo <= 0");
    propose = [b](Rng& rng) {
      return one(int_list(random_ints(rng, rng.uniform(b.min_len, b.max_len), b.lo, std::min<std::int64_t>(b.hi, 0))));
    };
    boundary = parse_boundary({"([],)", "([0],)", "([-1],)", "([0, -1],)"});
  } else if (region == "base" || region == "tie") {
    if (b.hi < 1) throw std::invalid_argument("p1_lists needs hi >= 1");
    const bool tie = region == "tie";
    const auto min_len = std::max<std::int64_t>(b.min_len, tie ? 2 : 1);
    if (b.max_len < min_len) throw std::invalid_argument("p1_lists: max_len too small for region");
    propose = [b, tie, min_len](Rng& rng) {
      auto xs = random_ints(rng, rng.uniform(min_len, b.max_len), b.lo, b.hi);
      std::int64_t m = 0;
      for (auto v : xs) {
        if (v > 0 && (m == 0 || v < m)) m = v;
      }
      if (m == 0) m = rng.uniform(1, b.hi);
      const auto i = rng.index(xs.size());
      xs[i] = m;
      if (tie) {
        auto j = rng.index(xs.size() - 1);
        if (j >= i) ++j;
        xs[j] = m;
      }
      return one(int_list(xs));
    };
    boundary = tie ? parse_boundary({"([1, 1],)", "([2, 5, 2],)"}) : parse_boundary({"([1],)", "([3, 1, 2],)"});
  } else {
    unknown_region("p1_lists", region);
  }
  Predicate in_region = region == "any" ? Predicate([](const Args&) { return true; })
                                        : Predicate([region](const Args& a) { return p1_region(a) == region; });
  return std::make_unique<RegionClass>("p1_lists/" + region, propose, in_region,
                                       list_length_bounds(b.min_len, b.max_len), boundary);
}

// ----------------------------------------------------------------------- p2

bool digit(char c) { return c >= '0' && c <= '9'; }

std::string p2_region(const Args& a) {
  const std::string& s = a[0].as_str();
  std::vector<std::string> words;
  std::string cur;
  for (char c : s) {
    if (c == ' ') {
      if (!cur.empty()) words.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) words.push_back(cur);

  auto positive = [](const std::string& w) {
    std::size_t k = w.size();
    while (k > 0 && digit(w[k - 1])) --k;
    for (std::size_t i = k; i < w.size(); ++i) {
      if (w[i] != '0') return true;
    }
    return false;
  };
  const std::size_t hits = static_cast<std::size_t>(std::count_if(words.begin(), words.end(), positive));
  if (hits == 0) return "no_positive";
  if (words.size() >= 2) return "multi_word";
  const std::string& w = words.front();
  std::size_t runs = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (digit(w[i]) && (i == 0 || !digit(w[i - 1]))) ++runs;
  }
  if (runs >= 2) return "prefix_runs";
  return std::all_of(w.begin(), w.end(), digit) ? "base" : "suffix_digit";
}

struct TextPools {
  std::string letters;
  std::string alphabet;
};

std::string random_from(Rng& rng, const std::string& pool, std::int64_t lo, std::int64_t hi) {
  std::string s;
  const auto n = rng.uniform(lo, hi);
  for (std::int64_t i = 0; i < n; ++i) s += pool[rng.index(pool.size())];
  return s;
}

std::string positive_run(Rng& rng, std::int64_t max_digits) {
  std::string run = random_from(rng, "0123456789", 0, max_digits - 1);
  run += static_cast<char>('1' + rng.index(9));
  if (rng.chance(1, 2)) std::reverse(run.begin(), run.end());
  bool nonzero = std::any_of(run.begin(), run.end(), [](char c) { return c != '0'; });
  if (!nonzero) run.back() = '1';
  return run;
}

std::string any_word(Rng& rng, const TextPools& pools) {
  switch (rng.uniform(0, 4)) {
    case 0: return random_from(rng, pools.letters, 1, 3);
    case 1: return positive_run(rng, 2);
    case 2: return random_from(rng, pools.letters, 1, 2) + random_from(rng, "0123456789", 1, 2);
    case 3: return random_from(rng, "0123456789", 1, 2) + random_from(rng, pools.letters, 1, 2);
    default: {
      std::string w = random_from(rng, pools.alphabet, 1, 4);
      std::erase(w, ' ');
      return w.empty() ? std::string("a") : w;
    }
  }
}

std::string pad(Rng& rng, std::string s) {
  if (rng.chance(1, 4)) s.insert(s.begin(), ' ');
  if (rng.chance(1, 4)) s += ' ';
  return s;
}

std::unique_ptr<InputClass> p2_text(const nlohmann::json& params) {
  const std::string region = str_param(params, "region", "any");
  const auto min_len = int_param(params, "min_len", 0);
  const auto max_len = int_param(params, "max_len", 10);
  TextPools pools;
  pools.alphabet = str_param(params, "alphabet", "abc0123456789 ");
  for (char c : pools.alphabet) {
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) pools.letters += c;
  }
  if (pools.letters.empty()) pools.letters = "a";
  if (max_len < min_len) throw std::invalid_argument("p2_text: bad length bounds");

  Proposal propose;
  std::vector<Args> boundary;
  if (region == "any") {
    propose = [=](Rng& rng) { return one(Value::string(random_from(rng, pools.alphabet, min_len, max_len))); };
    boundary = parse_boundary({"('',)", "('7',)", "('a1 b2',)"});
  } else if (region == "base") {
    propose = [=](Rng& rng) { return one(Value::string(pad(rng, positive_run(rng, 3)))); };
    boundary = parse_boundary({"('7',)", "('42',)", "(' 9 ',)"});
  } else if (region == "suffix_digit") {
    propose = [=](Rng& rng) {
      std::string w = random_from(rng, pools.letters, 1, 4);
      w += rng.chance(2, 3) ? std::string(1, static_cast<char>('1' + rng.index(9))) : positive_run(rng, 2);
      return one(Value::string(pad(rng, w)));
    };
    boundary = parse_boundary({"('ab3',)", "('c12',)"});
  } else if (region == "prefix_runs") {
    propose = [=](Rng& rng) {
      std::string w = rng.chance(1, 3) ? random_from(rng, pools.letters, 1, 2) : std::string();
      const auto runs = rng.uniform(2, 3);
      for (std::int64_t r = 0; r < runs - 1; ++r) {
        w += random_from(rng, "0123456789", 1, 2);
        w += random_from(rng, pools.letters, 1, 2);
      }
      w += positive_run(rng, 2);
      return one(Value::string(pad(rng, w)));
    };
    boundary = parse_boundary({"('1a2',)", "('0b5',)", "('12c07',)"});
  } else if (region == "multi_word") {
    propose = [=](Rng& rng) {
      std::string s = rng.chance(1, 4) ? " " : "";
      const auto words = rng.uniform(2, 4);
      for (std::int64_t i = 0; i < words; ++i) {
        if (i > 0) s += rng.chance(1, 4) ? "  " : " ";
        s += any_word(rng, pools);
      }
      return one(Value::string(s));
    };
    boundary = parse_boundary({"('a1 b2',)", "('a 5',)", "('a0 7 3',)"});
  } else if (region == "no_positive") {
    propose = [=](Rng& rng) {
      std::string s;
      const auto words = rng.uniform(0, 3);
      for (std::int64_t i = 0; i < words; ++i) {
        if (i > 0 || rng.chance(1, 4)) s += ' ';
        switch (rng.uniform(0, 3)) {
          case 0: s += random_from(rng, pools.letters, 1, 3); break;
          case 1: s += random_from(rng, pools.letters, 0, 2) + random_from(rng, "0", 1, 2); break;
          case 2: s += random_from(rng, "0123456789", 1, 2) + random_from(rng, pools.letters, 1, 2); break;
          default: s += random_from(rng, pools.letters, 0, 1) + random_from(rng, "0123456789", 1, 2) +
                        random_from(rng, pools.letters, 1, 2);
        }
      }
      if (rng.chance(1, 4)) s += ' ';
      return one(Value::string(s));
    };
    boundary = parse_boundary({"('',)", "('abc',)", "('a0',)", "('1a',)", "('a0 b',)"});
  } else {
    unknown_region("p2_text", region);
  }
  Predicate in_region = region == "any" ? Predicate([](const Args&) { return true; })
                                        : Predicate([region](const Args& a) { return p2_region(a) == region; });
  Predicate bounds = [=](const Args& a) {
    const auto n = static_cast<std::int64_t>(a[0].as_str().size());
    return n >= min_len && n <= max_len;
  };
  return std::make_unique<RegionClass>("p2_text/" + region, propose, in_region, bounds, boundary);
}

// ----------------------------------------------------------------------- p3

std::string p3_region(const Args& a) {
  std::map<std::int64_t, std::size_t> counts;
  for (const auto& v : a[0].items()) ++counts[v.as_int()];
  std::size_t least = std::numeric_limits<std::size_t>::max();
  for (const auto& [v, c] : counts) least = std::min(least, c);
  std::size_t tied = 0;
  for (const auto& [v, c] : counts) tied += c == least ? 1 : 0;
  return tied >= 2 ? "tie" : "base";
}

// Distinct values with the given counts, shuffled.
std::vector<std::int64_t> with_counts(Rng& rng, const std::vector<std::size_t>& counts, std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> pool;
  for (std::int64_t v = lo; v <= hi; ++v) pool.push_back(v);
  shuffle(pool, rng);
  std::vector<std::int64_t> xs;
  for (std::size_t i = 0; i < counts.size() && i < pool.size(); ++i) {
    for (std::size_t k = 0; k < counts[i]; ++k) xs.push_back(pool[i]);
  }
  shuffle(xs, rng);
  return xs;
}

std::unique_ptr<InputClass> p3_lists(const nlohmann::json& params) {
  const std::string region = str_param(params, "region", "any");
  ListBounds b = list_bounds(params, 1);
  if (b.min_len < 1) throw std::invalid_argument("p3_lists: lists must be non-empty");
  Proposal propose;
  std::vector<Args> boundary;
  const auto uniform = [b](Rng& rng) { return one(int_list(random_ints(rng, rng.uniform(b.min_len, b.max_len), b.lo, b.hi))); };
  if (region == "any") {
    propose = uniform;
    boundary = parse_boundary({"([0],)", "([1, 0],)"});
  } else if (region == "base") {
    propose = [b](Rng& rng) {
      const std::size_t least = static_cast<std::size_t>(rng.uniform(1, 2));
      std::vector<std::size_t> counts{least};
      const auto others = rng.uniform(0, 2);
      for (std::int64_t i = 0; i < others; ++i) counts.push_back(least + static_cast<std::size_t>(rng.uniform(1, 3)));
      return one(int_list(with_counts(rng, counts, b.lo, b.hi)));
    };
    boundary = parse_boundary({"([0],)", "([4, 4, 5],)"});
  } else if (region == "tie") {
    propose = [b, uniform](Rng& rng) {
      if (rng.chance(1, 2)) return uniform(rng);
      const std::size_t least = static_cast<std::size_t>(rng.uniform(1, 2));
      std::vector<std::size_t> counts(static_cast<std::size_t>(rng.uniform(2, 3)), least);
      const auto others = rng.uniform(0, 2);
      for (std::int64_t i = 0; i < others; ++i) counts.push_back(least + static_cast<std::size_t>(rng.uniform(1, 2)));
      return one(int_list(with_counts(rng, counts, b.lo, b.hi)));
    };
    boundary = parse_boundary({"([1, 0],)", "([0, 1],)", "([2, 1],)"});
  } else {
    unknown_region("p3_lists", region);
  }
  Predicate in_region = region == "any" ? Predicate([](const Args&) { return true; })
                                        : Predicate([region](const Args& a) { return p3_region(a) == region; });
  return std::make_unique<RegionClass>("p3_lists/" + region, propose, in_region,
                                       list_length_bounds(b.min_len, b.max_len), boundary);
}

// ----------------------------------------------------------------------- p4

std::string p4_region(const Args& a) {
  const auto p = ints_of(a[0]);
  if (p.empty()) return "empty";
  if (std::any_of(p.begin(), p.end(), [](std::int64_t v) { return v <= 0; })) return "non_positive";
  bool any_trade = false;
  std::int64_t best = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      const auto profit = p[j] - p[i];
      if (profit < 0) continue;
      if (!any_trade || profit > best) best = profit;
      any_trade = true;
    }
  }
  if (!any_trade) return "no_trade";
  std::size_t maximal = 0;
  std::size_t bi = 0;
  std::size_t bj = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (p[j] - p[i] == best) {
        if (maximal == 0) {
          bi = i;
          bj = j;
        }
        ++maximal;
      }
    }
  }
  if (best == 0) return maximal == 1 ? "zero_unique" : "zero_tied";
  if (maximal >= 2) return "tied_best";
  const auto lo = static_cast<std::size_t>(std::min_element(p.begin(), p.end()) - p.begin());
  const auto hi = static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
  return (bi == lo && bj == hi) ? "base" : "unordered";
}

std::unique_ptr<InputClass> p4_prices(const nlohmann::json& params) {
  const std::string region = str_param(params, "region", "any");
  const ListBounds b = list_bounds(params, 0);
  const std::int64_t plo = std::max<std::int64_t>(b.lo, 1);
  if (b.hi < plo) throw std::invalid_argument("p4_prices needs hi >= 1");
  Proposal propose;
  std::vector<Args> boundary;
  const auto positive_list = [b, plo](Rng& rng, std::int64_t min_len) {
    return random_ints(rng, rng.uniform(std::max(b.min_len, min_len), b.max_len), plo, b.hi);
  };
  if (region == "any") {
    propose = [b](Rng& rng) { return one(int_list(random_ints(rng, rng.uniform(b.min_len, b.max_len), b.lo, b.hi))); };
    boundary = parse_boundary({"([],)", "([1],)", "([2, 2],)", "([2, 2, 2],)", "([1, 3, 1, 3],)"});
  } else if (region == "empty") {
    propose = [](Rng&) { return one(Value::list({})); };
    boundary = parse_boundary({"([],)"});
  } else if (region == "non_positive") {
    if (b.lo > 0) throw std::invalid_argument("p4_prices/non_positive needs lo <= 0");
    propose = [b](Rng& rng) {
      auto xs = random_ints(rng, rng.uniform(std::max<std::int64_t>(b.min_len, 1), b.max_len), b.lo, b.hi);
      xs[rng.index(xs.size())] = rng.uniform(b.lo, std::min<std::int64_t>(0, b.hi));
      return one(int_list(xs));
    };
    boundary = parse_boundary({"([-2, 3],)", "([0],)", "([0, -3, 2, -1],)"});
  } else if (region == "no_trade") {
    propose = [b, plo](Rng& rng) {
      std::vector<std::int64_t> pool;
      for (std::int64_t v = plo; v <= b.hi; ++v) pool.push_back(v);
      shuffle(pool, rng);
      const auto cap = std::min<std::int64_t>(b.max_len, static_cast<std::int64_t>(pool.size()));
      pool.resize(static_cast<std::size_t>(rng.uniform(1, std::max<std::int64_t>(cap, 1))));
      std::sort(pool.rbegin(), pool.rend());
      return one(int_list(pool));
    };
    boundary = parse_boundary({"([4],)", "([3, 2, 1],)"});
  } else if (region == "zero_unique" || region == "zero_tied") {
    propose = [positive_list](Rng& rng) {
      auto xs = positive_list(rng, 2);
      std::sort(xs.rbegin(), xs.rend());
      return one(int_list(xs));
    };
    boundary = region == "zero_unique" ? parse_boundary({"([2, 2],)", "([4, 3, 3, 1],)"})
                                       : parse_boundary({"([2, 2, 2],)", "([3, 3, 1, 1],)"});
  } else if (region == "tied_best" || region == "unordered" || region == "base") {
    propose = [positive_list](Rng& rng) { return one(int_list(positive_list(rng, 2))); };
    if (region == "tied_best") boundary = parse_boundary({"([1, 3, 1, 3],)", "([2, 4, 1, 3],)"});
    if (region == "unordered") boundary = parse_boundary({"([5, 1, 3],)", "([4, 2, 5, 1, 3],)"});
    if (region == "base") boundary = parse_boundary({"([1, 4],)", "([2, 1, 4],)"});
  } else {
    unknown_region("p4_prices", region);
  }
  Predicate in_region = region == "any" ? Predicate([](const Args&) { return true; })
                                        : Predicate([region](const Args& a) { return p4_region(a) == region; });
  return std::make_unique<RegionClass>("p4_prices/" + region, propose, in_region,
                                       list_length_bounds(b.min_len, b.max_len), boundary);
}

// ----------------------------------------------------------------------- p5

std::string p5_region(const Args& a) {
  if (a[1].is_nan()) return "nan_key";
  const auto& nums = a[0].items();
  if (std::any_of(nums.begin(), nums.end(), [](const Value& v) { return v.is_nan(); })) return "nan_in_list";
  const double key = a[1].numeric();
  if (std::any_of(nums.begin(), nums.end(), [key](const Value& v) { return v.numeric() == key; })) return "key_present";
  return "base";
}

struct NumberMix {
  std::int64_t lo;
  std::int64_t hi;
  std::int64_t float_percent;
};

Value random_number(Rng& rng, const NumberMix& mix) {
  const auto k = rng.uniform(mix.lo, mix.hi);
  if (rng.uniform(0, 99) >= mix.float_percent) return Value::integer(k);
  if (rng.chance(1, 2)) return Value::floating(static_cast<double>(k));
  return Value::floating(static_cast<double>(k) + (k < mix.hi ? 0.5 : -0.5));
}

Value nan_value() { return Value::floating(std::numeric_limits<double>::quiet_NaN()); }

std::unique_ptr<InputClass> p5_queries(const nlohmann::json& params) {
  const std::string region = str_param(params, "region", "any");
  const ListBounds b = list_bounds(params, 0);
  const NumberMix mix{b.lo, b.hi, int_param(params, "float_percent", 30)};
  const auto nan_percent = int_param(params, "nan_percent", 10);
  if (mix.float_percent < 0 || mix.float_percent > 100 || nan_percent < 0 || nan_percent > 100) {
    throw std::invalid_argument("p5_queries: percentages must be within [0, 100]");
  }
  auto numbers = [b, mix](Rng& rng, std::int64_t min_len, std::int64_t nan_pct) {
    std::vector<Value> xs;
    const auto n = rng.uniform(std::max(b.min_len, min_len), b.max_len);
    for (std::int64_t i = 0; i < n; ++i) {
      xs.push_back(rng.uniform(0, 99) < nan_pct ? nan_value() : random_number(rng, mix));
    }
    return xs;
  };
  Proposal propose;
  std::vector<Args> boundary;
  if (region == "any") {
    propose = [=](Rng& rng) {
      Value key = rng.uniform(0, 99) < nan_percent ? nan_value() : random_number(rng, mix);
      return Args{Value::list(numbers(rng, 0, nan_percent)), key};
    };
    boundary = parse_boundary({"([], 0)", "([2, 1, 0], 1)", "([0, 1], nan)"});
  } else if (region == "base") {
    propose = [=](Rng& rng) { return Args{Value::list(numbers(rng, 0, 0)), random_number(rng, mix)}; };
    boundary = parse_boundary({"([1, 5, 3], 2)", "([], 3)"});
  } else if (region == "key_present") {
    propose = [=](Rng& rng) {
      auto xs = numbers(rng, 1, 0);
      const Value& pick = xs[rng.index(xs.size())];
      Value key = pick;
      const double d = pick.numeric();
      if (rng.chance(1, 3) && d == static_cast<double>(static_cast<std::int64_t>(d))) {
        key = pick.is(Kind::Int) ? Value::floating(d) : Value::integer(static_cast<std::int64_t>(d));
      }
      return Args{Value::list(std::move(xs)), key};
    };
    boundary = parse_boundary({"([2, 1, 0], 1)", "([2.5], 2.5)"});
  } else if (region == "nan_key") {
    propose = [=](Rng& rng) { return Args{Value::list(numbers(rng, 0, nan_percent)), nan_value()}; };
    boundary = parse_boundary({"([0, 1], nan)", "([], nan)"});
  } else if (region == "nan_in_list") {
    propose = [=](Rng& rng) {
      auto xs = numbers(rng, 1, nan_percent);
      xs[rng.index(xs.size())] = nan_value();
      return Args{Value::list(std::move(xs)), random_number(rng, mix)};
    };
    boundary = parse_boundary({"([2, nan, 0], 1)", "([nan], 0)"});
  } else {
    unknown_region("p5_queries", region);
  }
  Predicate in_region = region == "any" ? Predicate([](const Args&) { return true; })
                                        : Predicate([region](const Args& a) { return p5_region(a) == region; });
  return std::make_unique<RegionClass>("p5_queries/" + region, propose, in_region,
                                       list_length_bounds(b.min_len, b.max_len), boundary);
}

using Factory = std::unique_ptr<InputClass> (*)(const nlohmann::json&);

const std::map<std::string, Factory>& factories() {
  static const std::map<std::string, Factory> table = {
      {"palindrome_text", palindrome_text}, {"p1_lists", p1_lists},     {"p2_text", p2_text},
      {"p3_lists", p3_lists},               {"p4_prices", p4_prices},   {"p5_queries", p5_queries},
  };
  return table;
}

}  // namespace

std::unique_ptr<InputClass> make_input_class(const ClassSpec& spec) {
  const auto& table = factories();
  const auto it = table.find(spec.generator);
  if (it == table.end()) throw std::invalid_argument("unknown generator '" + spec.generator + "'");
  if (!spec.parameters.is_object()) throw std::invalid_argument(spec.generator + ": parameters must be an object");
  return it->second(spec.parameters);
}

std::vector<std::string> generator_names() {
  std::vector<std::string> names;
  for (const auto& [name, f] : factories()) names.push_back(name);
  return names;
}

}  // namespace probeable
