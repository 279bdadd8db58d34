#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "fneq/expr.hpp"
#include "fneq/finite_field.hpp"

// Pair files: UTF-8 text of `key = value` lines with keys p, f, g and
// description; `#` starts a comment line. f and g are y-polynomials over F_p.
namespace fneq {

struct PairFile {
  std::uint64_t p = 0;
  std::string f;
  std::string g;
  std::string description;
};

struct LoadedPair {
  PairFile text;
  FieldPtr field;
  YPoly f;
  YPoly g;
};

namespace detail {

inline std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace detail

inline PairFile parse_pair_file(std::string_view content) {
  PairFile out;
  bool seen_p = false;
  std::size_t line_no = 0;
  while (!content.empty()) {
    ++line_no;
    const auto nl = content.find('\n');
    std::string_view line = detail::strip(content.substr(0, nl));
    content = nl == std::string_view::npos ? std::string_view{} : content.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw InputError("pair file line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = detail::strip(line.substr(0, eq));
    const auto value = std::string(detail::strip(line.substr(eq + 1)));
    if (key == "p") {
      try {
        std::size_t used = 0;
        out.p = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
      } catch (const std::exception&) {
        throw InputError("pair file line " + std::to_string(line_no) + ": p must be an integer");
      }
      seen_p = true;
    } else if (key == "f") {
      out.f = value;
    } else if (key == "g") {
      out.g = value;
    } else if (key == "description") {
      out.description = value;
    } else {
      throw InputError("pair file line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
  }
  if (!seen_p || out.f.empty() || out.g.empty()) throw InputError("pair file needs p, f and g");
  return out;
}

/// Parses the text and both polynomials over F_p.
inline LoadedPair load_pair(std::string_view content) {
  PairFile text = parse_pair_file(content);
  FieldPtr field = make_prime_field(text.p);
  YPoly f = parse_y_poly(text.f, field);
  YPoly g = parse_y_poly(text.g, field);
  return {std::move(text), field, std::move(f), std::move(g)};
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline LoadedPair load_pair_file(const std::string& path) { return load_pair(read_text_file(path)); }

}  // namespace fneq
