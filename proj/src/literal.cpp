#include "probeable/literal.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace probeable {

ParseError::ParseError(std::size_t position, std::string message)
    : std::runtime_error("parse error at " + std::to_string(position) + ": " + message),
      position_(position),
      message_(std::move(message)) {}

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool is_word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || is_digit(c) || c == '_';
}

// Length of the UTF-8 sequence starting at s[i], or 0 if invalid.
std::size_t utf8_sequence_length(std::string_view s, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  std::size_t len = 0;
  std::uint32_t cp = 0;
  if (b0 < 0x80) return 1;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return 0;
  }
  if (i + len > s.size()) return 0;
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (b & 0x3F);
  }
  // Overlong encodings, surrogates and out-of-range code points.
  if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000)) return 0;
  if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
  return len;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Value parse_document() {
    skip_space();
    Value v = parse_value();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(std::string message) const { throw ParseError(pos_, std::move(message)); }
  [[noreturn]] void fail_at(std::size_t at, std::string message) const {
    throw ParseError(at, std::move(message));
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_space() {
    while (!at_end() && is_space(text_[pos_])) ++pos_;
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Value parse_value() {
    if (++depth_ > kMaxDepth) fail("nesting too deep");
    Value v = parse_value_inner();
    --depth_;
    return v;
  }

  Value parse_value_inner() {
    if (at_end()) fail("expected a value");
    const char c = peek();
    if (c == '[') return parse_list();
    if (c == '(') return parse_tuple();
    if (c == '\'' || c == '"') return Value::string(parse_string());
    if (c == '-' || is_digit(c)) return parse_number();
    return parse_keyword();
  }

  Value parse_keyword() {
    const std::size_t start = pos_;
    while (!at_end() && is_word_char(text_[pos_])) ++pos_;
    const std::string_view word = text_.substr(start, pos_ - start);
    if (word == "None") return Value::none();
    if (word == "True") return Value::boolean(true);
    if (word == "False") return Value::boolean(false);
    if (word == "nan") return Value::floating(std::numeric_limits<double>::quiet_NaN());
    if (word.empty()) fail_at(start, std::string("unexpected character '") + text_[start] + "'");
    fail_at(start, "unknown token '" + std::string(word) + "'");
  }

  Value parse_number() {
    const std::size_t start = pos_;
    if (peek() == '-') {
      ++pos_;
      if (text_.substr(pos_, 3) == "nan" && (pos_ + 3 >= text_.size() || !is_word_char(text_[pos_ + 3]))) {
        pos_ += 3;
        return Value::floating(std::numeric_limits<double>::quiet_NaN());
      }
    }
    const std::size_t int_start = pos_;
    while (!at_end() && is_digit(peek())) ++pos_;
    const std::size_t int_len = pos_ - int_start;
    if (int_len == 0) fail_at(int_start, "expected digits");
    if (int_len > 1 && text_[int_start] == '0') fail_at(int_start, "leading zeros are not allowed");
    if (peek() == '.') {
      ++pos_;
      const std::size_t frac_start = pos_;
      while (!at_end() && is_digit(peek())) ++pos_;
      if (pos_ == frac_start) fail("expected digits after '.'");
      if (!at_end() && is_word_char(peek())) fail("malformed number");
      double d = 0.0;
      const char* first = text_.data() + start;
      const char* last = text_.data() + pos_;
      auto [ptr, ec] = std::from_chars(first, last, d, std::chars_format::fixed);
      if (ec != std::errc() || ptr != last || std::isinf(d)) fail_at(start, "float out of range");
      return Value::floating(d);
    }
    if (!at_end() && is_word_char(peek())) fail("malformed number");
    std::int64_t i = 0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, i);
    if (ec == std::errc::result_out_of_range) fail_at(start, "integer out of 64-bit range");
    if (ec != std::errc() || ptr != last) fail_at(start, "malformed integer");
    return Value::integer(i);
  }

  std::string parse_string() {
    const char quote = peek();
    const std::size_t start = pos_;
    ++pos_;
    std::string out;
    while (true) {
      if (at_end()) fail_at(start, "unterminated string");
      const char c = text_[pos_];
      if (c == quote) {
        ++pos_;
        return out;
      }
      if (c == '\\') {
        if (pos_ + 1 >= text_.size()) fail_at(start, "unterminated string");
        const char e = text_[pos_ + 1];
        switch (e) {
          case '\'': out += '\''; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          default: fail(std::string("unsupported escape '\\") + e + "'");
        }
        pos_ += 2;
        continue;
      }
      const std::size_t len = utf8_sequence_length(text_, pos_);
      if (len == 0) fail("invalid UTF-8 in string");
      out.append(text_.substr(pos_, len));
      pos_ += len;
    }
  }

  Value parse_list() {
    expect('[');
    std::vector<Value> items;
    skip_space();
    if (peek() == ']') {
      ++pos_;
      return Value::list(std::move(items));
    }
    while (true) {
      skip_space();
      items.push_back(parse_value());
      skip_space();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      if (peek() == ']') {
        ++pos_;
        return Value::list(std::move(items));
      }
      fail("expected ',' or ']'");
    }
  }

  Value parse_tuple() {
    expect('(');
    std::vector<Value> items;
    skip_space();
    if (peek() == ')') {
      ++pos_;
      return Value::tuple(std::move(items));
    }
    items.push_back(parse_value());
    skip_space();
    if (peek() != ',') fail("expected ',' (one-element tuples are written \"(x,)\")");
    ++pos_;
    skip_space();
    if (peek() == ')') {
      ++pos_;
      return Value::tuple(std::move(items));
    }
    while (true) {
      skip_space();
      items.push_back(parse_value());
      skip_space();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      if (peek() == ')') {
        ++pos_;
        return Value::tuple(std::move(items));
      }
      fail("expected ',' or ')'");
    }
  }

  static constexpr int kMaxDepth = 256;
  std::string_view text_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

void render_float(double d, std::string& out) {
  if (std::isnan(d)) {
    out += "nan";
    return;
  }
  if (std::isinf(d)) {
    // Not expressible in the grammar; only reachable for values built in code.
    out += d < 0 ? "-inf" : "inf";
    return;
  }
  char buf[400];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, d, std::chars_format::fixed);
  std::string_view s(buf, ptr - buf);
  out += s;
  if (s.find('.') == std::string_view::npos) out += ".0";
}

void render_string(const std::string& s, std::string& out) {
  out += '\'';
  for (char c : s) {
    switch (c) {
      case '\'': out += "\\'"; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '\'';
}

void render_into(const Value& v, std::string& out) {
  switch (v.kind()) {
    case Kind::Unit: out += "None"; return;
    case Kind::Bool: out += v.as_bool() ? "True" : "False"; return;
    case Kind::Int: out += std::to_string(v.as_int()); return;
    case Kind::Float: render_float(v.as_float(), out); return;
    case Kind::Str: render_string(v.as_str(), out); return;
    case Kind::List:
    case Kind::Tuple: {
      const bool is_list = v.is(Kind::List);
      const auto& items = v.items();
      out += is_list ? '[' : '(';
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) out += ", ";
        render_into(items[i], out);
      }
      if (!is_list && items.size() == 1) out += ',';
      out += is_list ? ']' : ')';
      return;
    }
  }
}

}  // namespace

Value parse_literal(std::string_view text) { return Parser(text).parse_document(); }

Args parse_arguments(const std::vector<std::string>& texts, std::size_t* argument_index) {
  Args args;
  args.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (argument_index != nullptr) *argument_index = i;
    args.push_back(parse_literal(texts[i]));
  }
  return args;
}

std::string render_literal(const Value& v) {
  std::string out;
  render_into(v, out);
  return out;
}

std::vector<std::string> render_arguments(const Args& args) {
  std::vector<std::string> out;
  out.reserve(args.size());
  for (const auto& a : args) out.push_back(render_literal(a));
  return out;
}

std::string render_call(const Args& args) { return render_literal(Value::tuple(args)); }

}  // namespace probeable
