#pragma once

#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "fneq/detail/dense_poly.hpp"
#include "fneq/detail/field_core.hpp"
#include "fneq/error.hpp"

namespace fneq {

/// F_p. Throws InputError unless p is a prime below 2^32.
inline FieldPtr make_prime_field(std::uint64_t p) {
  if (!detail::is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
  if (p >= (std::uint64_t{1} << 32)) throw InputError("characteristic must be below 2^32");
  return std::make_shared<const Field>(detail::Unchecked{}, p);
}

/// base[x]/(modulus). The modulus is given constant term first over base and
/// must be monic and irreducible.
inline FieldPtr make_extension_field(const FieldPtr& base, std::vector<Elem> modulus) {
  detail::trim(modulus);
  if (modulus.size() < 2) throw InputError("modulus must have degree at least 1");
  for (auto c : modulus) {
    if (!base->contains(c)) throw InputError("modulus coefficient outside the base field");
  }
  if (modulus.back() != 1) throw InputError("modulus is not monic");
  if (modulus.size() - 1 > Field::kMaxRelativeDegree) throw InputError("extension degree too large");
  if (!detail::rabin_irreducible(*base, modulus)) throw InputError("modulus is reducible");
  return std::make_shared<const Field>(detail::Unchecked{}, base, std::move(modulus));
}

/// F_p[x]/(M), M given as integers constant term first (reduced mod p).
inline FieldPtr make_extension_field(std::uint64_t p, const std::vector<std::int64_t>& modulus) {
  auto fp = make_prime_field(p);
  std::vector<Elem> m;
  m.reserve(modulus.size());
  for (auto c : modulus) m.push_back(fp->from_integer(c));
  return make_extension_field(fp, std::move(m));
}

/// Lexicographically smallest monic irreducible of degree m over base, comparing
/// coefficients from the leading one downwards.
inline std::vector<Elem> smallest_irreducible(const Field& base, unsigned m) {
  if (m == 0) throw InputError("degree must be positive");
  const std::uint64_t q = base.order();
  std::vector<Elem> c(m + 1, 0);
  c[m] = 1;
  for (;;) {
    if (detail::rabin_irreducible(base, c)) return c;
    unsigned i = 0;
    while (i < m && ++c[i] == q) c[i++] = 0;
    if (i == m) throw std::logic_error("no irreducible polynomial found");
  }
}

/// F_{p^m} with the canonical (lexicographically smallest) modulus.
inline FieldPtr make_field(std::uint64_t p, unsigned m = 1) {
  auto fp = make_prime_field(p);
  if (m == 1) return fp;
  return make_extension_field(fp, smallest_irreducible(*fp, m));
}

/// An element bound to its field. Arithmetic across fields throws FieldMismatch.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Elem value) : field_(std::move(field)), value_(value) {
    if (!field_->contains(value_)) throw InputError("value outside the field");
  }

  static FieldElement from_integer(FieldPtr field, std::int64_t n) {
    Elem v = field->from_integer(n);
    return {std::move(field), v};
  }

  /// Element of F_p[x]/(M) from its coordinates over F_p, lowest first.
  static FieldElement from_coefficients(FieldPtr field, const std::vector<std::uint64_t>& coeffs) {
    if (coeffs.size() > field->degree()) throw InputError("too many coordinates");
    Elem v = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
      if (coeffs[i] >= field->characteristic()) throw InputError("coordinate outside F_p");
      v = v * field->characteristic() + coeffs[i];
    }
    return {std::move(field), v};
  }

  const FieldPtr& field() const noexcept { return field_; }
  Elem value() const noexcept { return value_; }
  bool is_zero() const noexcept { return value_ == 0; }
  std::vector<std::uint64_t> coefficients() const { return field_->prime_digits(value_); }

  FieldElement pow(std::uint64_t e) const { return {field_, field_->pow(value_, e)}; }
  FieldElement inverse() const { return {field_, field_->inv(value_)}; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    require_same_field(a.field_, b.field_);
    return {a.field_, a.field_->add(a.value_, b.value_)};
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    require_same_field(a.field_, b.field_);
    return {a.field_, a.field_->sub(a.value_, b.value_)};
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    require_same_field(a.field_, b.field_);
    return {a.field_, a.field_->mul(a.value_, b.value_)};
  }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    require_same_field(a.field_, b.field_);
    return {a.field_, a.field_->div(a.value_, b.value_)};
  }
  FieldElement operator-() const { return {field_, field_->neg(value_)}; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) noexcept {
    return a.value_ == b.value_ && same_field(a.field_, b.field_);
  }

  friend std::ostream& operator<<(std::ostream& os, const FieldElement& a) {
    if (a.field_->is_prime_field()) return os << a.value_;
    auto c = a.coefficients();
    bool first = true;
    for (std::size_t i = c.size(); i-- > 0;) {
      if (c[i] == 0) continue;
      if (!first) os << " + ";
      first = false;
      if (i == 0 || c[i] != 1) os << c[i];
      if (i > 0 && c[i] != 1) os << '*';
      if (i > 0) os << 'x';
      if (i > 1) os << '^' << i;
    }
    if (first) os << '0';
    return os;
  }

 private:
  FieldPtr field_;
  Elem value_;
};

}  // namespace fneq
