#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "fneq/poly.hpp"
#include "fneq/twisted.hpp"

// Text format for polynomials in T, y and tau with integer coefficients:
//
//   expr   := term (("+"|"-") term)* ;
//   term   := factor ("*" factor)* ;
//   factor := atom ("^" nat)? ;
//   atom   := nat | "T" | "y" | "tau" | "(" expr ")" | "-" atom ;
//
// Whitespace is ignored. Multiplication is always explicit.
namespace fneq {

class ParseError : public InputError {
 public:
  ParseError(std::size_t column, const std::string& what)
      : InputError("parse error at column " + std::to_string(column + 1) + ": " + what), column_(column) {}
  /// Zero-based offset into the input.
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

enum class ParseMode { t_poly, y_poly, twisted };

struct ExprAst {
  enum class Kind { nat, symbol, add, sub, mul, pow, neg };
  Kind kind = Kind::nat;
  std::uint64_t value = 0;  // literal, or exponent for pow
  std::string symbol;
  std::size_t pos = 0;
  std::vector<ExprAst> children;
};

namespace detail {

class ExprReader {
 public:
  ExprReader(std::string_view text, std::vector<std::string_view> alphabet)
      : s_(text), alphabet_(std::move(alphabet)) {}

  ExprAst read() {
    skip();
    if (i_ == s_.size()) throw ParseError(i_, "empty expression");
    ExprAst e = expr();
    skip();
    if (i_ != s_.size()) throw ParseError(i_, std::string("unexpected '") + s_[i_] + "'");
    return e;
  }

 private:
  static constexpr std::size_t kMaxDepth = 256;

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool accept(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  ExprAst expr() {
    ExprAst lhs = term();
    for (;;) {
      skip();
      std::size_t at = i_;
      ExprAst::Kind k;
      if (accept('+')) {
        k = ExprAst::Kind::add;
      } else if (accept('-')) {
        k = ExprAst::Kind::sub;
      } else {
        return lhs;
      }
      ExprAst node{k, 0, {}, at, {}};
      node.children.push_back(std::move(lhs));
      node.children.push_back(term());
      lhs = std::move(node);
    }
  }

  ExprAst term() {
    ExprAst lhs = factor();
    for (;;) {
      skip();
      std::size_t at = i_;
      if (!accept('*')) return lhs;
      ExprAst node{ExprAst::Kind::mul, 0, {}, at, {}};
      node.children.push_back(std::move(lhs));
      node.children.push_back(factor());
      lhs = std::move(node);
    }
  }

  ExprAst factor() {
    ExprAst base = atom();
    skip();
    std::size_t at = i_;
    if (!accept('^')) return base;
    skip();
    if (i_ < s_.size() && s_[i_] == '-') throw ParseError(i_, "negative exponent");
    if (i_ == s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      throw ParseError(i_, "exponent must be a non-negative integer literal");
    }
    ExprAst node{ExprAst::Kind::pow, nat(), {}, at, {}};
    skip();
    if (i_ < s_.size() && s_[i_] == '.') throw ParseError(i_, "exponent must be an integer");
    node.children.push_back(std::move(base));
    return node;
  }

  ExprAst atom() {
    if (++depth_ > kMaxDepth) throw ParseError(i_, "expression nested too deeply");
    skip();
    if (i_ == s_.size()) throw ParseError(i_, "unexpected end of input");
    const std::size_t at = i_;
    const char c = s_[i_];
    ExprAst out;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      out = ExprAst{ExprAst::Kind::nat, nat(), {}, at, {}};
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i_;
      while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
      std::string_view name = s_.substr(i_, j - i_);
      bool known = false;
      for (auto a : alphabet_) known = known || a == name;
      if (!known) throw ParseError(at, "unknown symbol '" + std::string(name) + "'");
      i_ = j;
      out = ExprAst{ExprAst::Kind::symbol, 0, std::string(name), at, {}};
    } else if (c == '(') {
      ++i_;
      out = expr();
      if (!accept(')')) throw ParseError(i_, "expected ')'");
    } else if (c == '-') {
      ++i_;
      out = ExprAst{ExprAst::Kind::neg, 0, {}, at, {}};
      out.children.push_back(atom());
    } else {
      throw ParseError(at, std::string("unexpected '") + c + "'");
    }
    --depth_;
    return out;
  }

  std::uint64_t nat() {
    const std::size_t at = i_;
    std::uint64_t v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      if (v > (std::uint64_t{1} << 58)) throw ParseError(at, "integer literal too large");
      v = v * 10 + static_cast<std::uint64_t>(s_[i_] - '0');
      ++i_;
    }
    return v;
  }

  std::string_view s_;
  std::vector<std::string_view> alphabet_;
  std::size_t i_ = 0;
  std::size_t depth_ = 0;
};

/// Sparse polynomial in (outer, T) used while evaluating an AST: the outer
/// variable is y or tau. Key = (outer exponent, T exponent).
class Bivariate {
 public:
  static constexpr std::uint64_t kMaxDegree = std::uint64_t{1} << 20;

  explicit Bivariate(const Field* f) : f_(f) {}
  static Bivariate constant(const Field* f, Elem c) {
    Bivariate b(f);
    if (c != 0) b.terms_[{0, 0}] = c;
    return b;
  }
  static Bivariate monomial(const Field* f, std::uint64_t outer, std::uint64_t t) {
    Bivariate b(f);
    b.terms_[{outer, t}] = 1;
    return b;
  }

  const std::map<std::pair<std::uint64_t, std::uint64_t>, Elem>& terms() const { return terms_; }
  bool has_outer() const {
    for (const auto& [k, v] : terms_) {
      if (k.first > 0) return true;
    }
    return false;
  }
  bool has_t() const {
    for (const auto& [k, v] : terms_) {
      if (k.second > 0) return true;
    }
    return false;
  }
  std::uint64_t max_outer() const {
    std::uint64_t m = 0;
    for (const auto& [k, v] : terms_) m = std::max(m, k.first);
    return m;
  }
  std::uint64_t max_t() const {
    std::uint64_t m = 0;
    for (const auto& [k, v] : terms_) m = std::max(m, k.second);
    return m;
  }

  Bivariate plus(const Bivariate& o, bool negate) const {
    Bivariate r = *this;
    for (const auto& [k, v] : o.terms_) r.accumulate(k, negate ? f_->neg(v) : v);
    return r;
  }
  Bivariate negated() const { return Bivariate(f_).plus(*this, true); }

  Bivariate times(const Bivariate& o) const {
    Bivariate r(f_);
    for (const auto& [ka, va] : terms_) {
      for (const auto& [kb, vb] : o.terms_) {
        r.accumulate({ka.first + kb.first, ka.second + kb.second}, f_->mul(va, vb));
      }
    }
    return r;
  }

 private:
  void accumulate(std::pair<std::uint64_t, std::uint64_t> k, Elem v) {
    auto [it, inserted] = terms_.try_emplace(k, v);
    if (!inserted) it->second = f_->add(it->second, v);
    if (it->second == 0) terms_.erase(it);
  }

  const Field* f_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, Elem> terms_;
};

inline std::string_view outer_symbol(ParseMode mode) {
  switch (mode) {
    case ParseMode::y_poly:
      return "y";
    case ParseMode::twisted:
      return "tau";
    case ParseMode::t_poly:
      break;
  }
  return "";
}

inline const char* mode_name(ParseMode mode) {
  switch (mode) {
    case ParseMode::t_poly:
      return "T-polynomial";
    case ParseMode::y_poly:
      return "y-polynomial";
    case ParseMode::twisted:
      return "twisted";
  }
  return "";
}

// In twisted mode a product u*v is accepted only when commuting it is harmless:
// u is free of tau, or v is free of T. Integer constants lie in F_p and commute
// with tau, so this is exactly the sum-of-(coefficient * tau^i) form.
inline Bivariate evaluate(const ExprAst& e, const Field& f, ParseMode mode, std::string_view t_name) {
  using K = ExprAst::Kind;
  switch (e.kind) {
    case K::nat:
      return Bivariate::constant(&f, f.from_integer(static_cast<std::int64_t>(e.value % f.characteristic())));
    case K::symbol: {
      if (e.symbol == t_name) return Bivariate::monomial(&f, 0, 1);
      if (e.symbol == outer_symbol(mode)) return Bivariate::monomial(&f, 1, 0);
      throw ParseError(e.pos, "symbol '" + e.symbol + "' is not allowed in " + mode_name(mode) + " mode");
    }
    case K::add:
    case K::sub:
      return evaluate(e.children[0], f, mode, t_name)
          .plus(evaluate(e.children[1], f, mode, t_name), e.kind == K::sub);
    case K::neg:
      return evaluate(e.children[0], f, mode, t_name).negated();
    case K::mul: {
      Bivariate a = evaluate(e.children[0], f, mode, t_name);
      Bivariate b = evaluate(e.children[1], f, mode, t_name);
      if (mode == ParseMode::twisted && a.has_outer() && b.has_t()) {
        throw ParseError(e.pos, "twisted terms must be written as coefficient*tau^i");
      }
      if (a.max_outer() + b.max_outer() > Bivariate::kMaxDegree || a.max_t() + b.max_t() > Bivariate::kMaxDegree) {
        throw ParseError(e.pos, "degree too large");
      }
      return a.times(b);
    }
    case K::pow: {
      Bivariate base = evaluate(e.children[0], f, mode, t_name);
      const std::uint64_t n = e.value;
      if (mode == ParseMode::twisted && n > 1 && base.has_outer() && base.has_t()) {
        throw ParseError(e.pos, "twisted terms must be written as coefficient*tau^i");
      }
      if (n != 0 && (base.max_outer() > Bivariate::kMaxDegree / n || base.max_t() > Bivariate::kMaxDegree / n)) {
        throw ParseError(e.pos, "degree too large");
      }
      Bivariate r = Bivariate::constant(&f, 1);
      std::uint64_t k = n;
      while (k != 0) {
        if (k & 1) r = r.times(base);
        k >>= 1;
        if (k != 0) base = base.times(base);
      }
      return r;
    }
  }
  throw std::logic_error("unhandled expression node");
}

inline std::vector<Poly> to_coefficients(const Bivariate& b, const FieldPtr& field) {
  std::vector<std::vector<Elem>> raw(b.terms().empty() ? 0 : b.max_outer() + 1);
  for (const auto& [k, v] : b.terms()) {
    auto& row = raw[k.first];
    if (row.size() <= k.second) row.resize(k.second + 1, 0);
    row[k.second] = v;
  }
  std::vector<Poly> out;
  out.reserve(raw.size());
  for (auto& r : raw) out.emplace_back(field, std::move(r));
  return out;
}

}  // namespace detail

/// Syntax tree of an expression over the given symbol alphabet.
inline ExprAst parse_ast(std::string_view text,
                         std::vector<std::string_view> alphabet = {"T", "y", "tau"}) {
  return detail::ExprReader(text, std::move(alphabet)).read();
}

/// Polynomial in a single variable (default T) with integer coefficients
/// reduced into `field`.
inline Poly parse_t_poly(std::string_view text, const FieldPtr& field, std::string_view var = "T") {
  std::vector<std::string_view> alphabet{"T", "y", "tau"};
  if (var != "T") alphabet.push_back(var);
  auto b = detail::evaluate(parse_ast(text, alphabet), *field, ParseMode::t_poly, var);
  auto coeffs = detail::to_coefficients(b, field);
  return coeffs.empty() ? Poly(field) : coeffs[0];
}

inline YPoly parse_y_poly(std::string_view text, const FieldPtr& field) {
  auto b = detail::evaluate(parse_ast(text), *field, ParseMode::y_poly, "T");
  return {field, detail::to_coefficients(b, field)};
}

inline TwistedPoly parse_twisted(std::string_view text, const FieldPtr& field) {
  auto b = detail::evaluate(parse_ast(text), *field, ParseMode::twisted, "T");
  return {field, detail::to_coefficients(b, field)};
}

using ParsedPoly = std::variant<Poly, YPoly, TwistedPoly>;

inline ParsedPoly parse(std::string_view text, ParseMode mode, const FieldPtr& field) {
  switch (mode) {
    case ParseMode::t_poly:
      return parse_t_poly(text, field);
    case ParseMode::y_poly:
      return parse_y_poly(text, field);
    case ParseMode::twisted:
      return parse_twisted(text, field);
  }
  throw std::logic_error("unknown parse mode");
}

namespace detail {

inline std::string render_constant(const FieldPtr& field, Elem c) {
  if (c < field->characteristic()) return std::to_string(c);
  std::ostringstream os;
  os << '(' << FieldElement(field, c) << ')';
  return os.str();
}

inline bool is_single_term(const Poly& a) {
  int n = 0;
  for (auto c : a.coeffs()) n += c != 0;
  return n == 1;
}

inline std::string render_outer(const std::vector<Poly>& coeffs, std::string_view var,
                                std::string (*render_coeff)(const Poly&)) {
  std::string out;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    const Poly& a = coeffs[k];
    if (a.is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (k == 0) {
      out += render_coeff(a);
      continue;
    }
    std::string mono(var);
    if (k > 1) mono += "^" + std::to_string(k);
    if (a.is_one()) {
      out += mono;
    } else if (is_single_term(a)) {
      out += render_coeff(a) + "*" + mono;
    } else {
      out += "(" + render_coeff(a) + ")*" + mono;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace detail

/// Descending-degree rendering, e.g. "T^2 + 2*T + 1". Re-parses to the same
/// value over prime fields.
inline std::string render(const Poly& a, std::string_view var = "T") {
  std::string out;
  const auto& c = a.coeffs();
  for (std::size_t k = c.size(); k-- > 0;) {
    if (c[k] == 0) continue;
    if (!out.empty()) out += " + ";
    if (k == 0) {
      out += detail::render_constant(a.field(), c[k]);
      continue;
    }
    if (c[k] != 1) out += detail::render_constant(a.field(), c[k]) + "*";
    out += var;
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

inline std::string render(const YPoly& a) {
  return detail::render_outer(a.coeffs(), "y", [](const Poly& c) { return render(c); });
}

inline std::string render(const TwistedPoly& a) {
  return detail::render_outer(a.coeffs(), "tau", [](const Poly& c) { return render(c); });
}

}  // namespace fneq
