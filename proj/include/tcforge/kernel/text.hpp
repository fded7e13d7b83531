#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "tcforge/core/error.hpp"
#include "tcforge/kernel/assignment.hpp"
#include "tcforge/kernel/table2d.hpp"

namespace tcforge {

namespace text_detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline Nat parse_decimal(std::string_view s, std::size_t col) {
  s = trim(s);
  if (s.empty()) throw ParseError("expected a decimal number", 1, col);
  Nat v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("bad digit '" + std::string(1, c) + "'", 1, col);
    Nat d = static_cast<Nat>(c - '0');
    if (v > (UINT64_MAX - d) / 10) throw ParseError("number too large", 1, col);
    v = v * 10 + d;
  }
  return v;
}

// Splits on `sep` outside {} and [] nesting.
inline std::vector<std::string_view> split_top(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '{' || c == '[') ++depth;
    else if (c == '}' || c == ']') --depth;
    else if (c == sep && depth == 0) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(s.substr(start));
  return parts;
}

}  // namespace text_detail

// `{i1,i2,...}` or `0b...` (rightmost digit is element 0).
inline BitSet parse_bitset(std::string_view s) {
  using namespace text_detail;
  s = trim(s);
  if (s.size() >= 2 && s[0] == '0' && (s[1] == 'b' || s[1] == 'B')) {
    std::string_view digits = s.substr(2);
    if (digits.empty()) throw ParseError("empty binary literal", 1, 3);
    BitSet out;
    const Nat n = digits.size();
    for (Nat k = 0; k < n; ++k) {
      char c = digits[n - 1 - k];
      if (c == '1') out.insert(k);
      else if (c != '0') throw ParseError("bad binary digit", 1, 3 + n - 1 - k);
    }
    return out;
  }
  if (s.size() < 2 || s.front() != '{' || s.back() != '}') throw ParseError("expected {...} or 0b... set literal", 1, 1);
  std::string_view body = trim(s.substr(1, s.size() - 2));
  BitSet out;
  if (body.empty()) return out;
  Nat prev = 0;
  bool first = true;
  std::size_t col = 2;
  for (std::string_view part : split_top(body, ',')) {
    Nat v = parse_decimal(part, col);
    if (!first && v <= prev) throw ParseError("set elements must be strictly increasing", 1, col);
    out.insert(v);
    prev = v;
    first = false;
    col += part.size() + 1;
  }
  return out;
}

inline std::string to_set_string(const BitSet& x) {
  std::string out = "{";
  bool first = true;
  x.for_each([&](Nat i) {
    if (!first) out += ',';
    out += std::to_string(i);
    first = false;
  });
  return out + "}";
}

// Most significant bit left; the empty set prints as 0b0.
inline std::string to_binary_string(const BitSet& x) {
  if (x.empty()) return "0b0";
  std::string out = "0b";
  for (Nat i = x.length(); i-- > 0;) out += x(i) ? '1' : '0';
  return out;
}

// `[{...};{...}]`, row x at position x.
inline Table2D parse_table(std::string_view s) {
  using namespace text_detail;
  s = trim(s);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw ParseError("expected [row;row;...] table literal", 1, 1);
  std::string_view body = trim(s.substr(1, s.size() - 2));
  std::vector<BitSet> rows;
  if (!body.empty())
    for (std::string_view part : split_top(body, ';')) rows.push_back(parse_bitset(part));
  return Table2D::from_rows(std::move(rows));
}

inline std::string to_table_string(const Table2D& t) {
  std::string out = "[";
  for (Nat x = 0; x < t.row_count(); ++x) {
    if (x) out += ';';
    out += to_set_string(t.row(x));
  }
  return out + "]";
}

// `X={1,3},x=2`: uppercase-initial names are string variables.
inline void parse_bindings(std::string_view s, Assignment& env) {
  using namespace text_detail;
  s = trim(s);
  if (s.empty()) return;
  for (std::string_view part : split_top(s, ',')) {
    part = trim(part);
    auto eq = part.find('=');
    if (eq == std::string_view::npos || eq == 0) throw ParseError("expected name=value binding", 1, 1);
    std::string name(trim(part.substr(0, eq)));
    std::string_view value = trim(part.substr(eq + 1));
    if (std::isupper(static_cast<unsigned char>(name[0]))) {
      env.bind(name, parse_bitset(value));
    } else if (value.size() > 2 && value[0] == '0' && value[1] == 'b') {
      BitSet bits = parse_bitset(value);
      if (bits.length() > 64) throw ParseError("number binding too large", 1, 1);
      env.bind(name, bits.empty() ? Nat{0} : bits.words()[0]);
    } else {
      env.bind(name, parse_decimal(value, eq + 2));
    }
  }
}

}  // namespace tcforge
