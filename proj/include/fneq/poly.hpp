#pragma once

#include <compare>
#include <cstdint>
#include <utility>
#include <vector>

#include "fneq/detail/dense_poly.hpp"
#include "fneq/finite_field.hpp"

namespace fneq {

/// Dense univariate polynomial over a finite field. Instantiated over F_q it is
/// the ring A = F_q[T]; over a residue field it carries reductions mod a prime.
class Poly {
 public:
  /// degree() of the zero polynomial.
  static constexpr int kZeroDegree = -1;

  explicit Poly(FieldPtr field) : field_(std::move(field)) {}
  Poly(FieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
    for (auto x : c_) {
      if (!field_->contains(x)) throw InputError("coefficient outside the field");
    }
    detail::trim(c_);
  }

  static Poly constant(FieldPtr field, Elem c) { return {std::move(field), {c}}; }
  static Poly one(FieldPtr field) { return constant(std::move(field), 1); }
  static Poly monomial(FieldPtr field, Elem c, std::size_t k) {
    std::vector<Elem> v(k + 1, 0);
    v[k] = c;
    return {std::move(field), std::move(v)};
  }
  static Poly variable(FieldPtr field) { return monomial(std::move(field), 1, 1); }

  const FieldPtr& field() const noexcept { return field_; }
  const Field& f() const noexcept { return *field_; }
  const std::vector<Elem>& coeffs() const noexcept { return c_; }
  int degree() const noexcept { return detail::degree(c_); }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_constant() const noexcept { return c_.size() <= 1; }
  bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }
  bool is_one() const noexcept { return detail::is_one(c_); }
  Elem lead() const noexcept { return c_.empty() ? 0 : c_.back(); }
  Elem operator[](std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }

  Poly monic() const { return wrap(detail::monic(*field_, c_)); }
  Poly derivative() const { return wrap(detail::derivative(*field_, c_)); }
  Poly scaled(Elem c) const { return wrap(detail::scale(*field_, c_, c)); }

  Elem eval(Elem x) const noexcept {
    Elem r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = field_->add(field_->mul(r, x), c_[i]);
    return r;
  }

  /// Raises to a power by repeated squaring.
  Poly pow(std::uint64_t e) const {
    Poly r = one(field_), b = *this;
    while (e != 0) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e != 0) b = b * b;
    }
    return r;
  }

  /// b(T) -> b(T^k): equals b^k when k is a power of q, since coefficients are fixed by Frobenius.
  Poly compose_power(std::uint64_t k) const {
    if (c_.empty()) return *this;
    std::vector<Elem> v((c_.size() - 1) * k + 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) v[i * k] = c_[i];
    return wrap(std::move(v));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    require_same_field(a.field_, b.field_);
    return a.wrap(detail::add(*a.field_, a.c_, b.c_));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    require_same_field(a.field_, b.field_);
    return a.wrap(detail::sub(*a.field_, a.c_, b.c_));
  }
  Poly operator-() const { return Poly(field_) - *this; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    require_same_field(a.field_, b.field_);
    return a.wrap(detail::mul(*a.field_, a.c_, b.c_));
  }
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  /// (quotient, remainder); throws std::domain_error on a zero divisor.
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    require_same_field(a.field_, b.field_);
    std::vector<Elem> q, r;
    detail::divmod(*a.field_, a.c_, b.c_, q, r);
    return {a.wrap(std::move(q)), a.wrap(std::move(r))};
  }
  friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

  friend bool operator==(const Poly& a, const Poly& b) noexcept {
    return a.c_ == b.c_ && same_field(a.field_, b.field_);
  }

  /// Canonical order: degree first, then coefficients from the leading one down.
  friend std::strong_ordering canonical_compare(const Poly& a, const Poly& b) noexcept {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    for (std::size_t i = a.c_.size(); i-- > 0;) {
      if (auto c = a.c_[i] <=> b.c_[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

 private:
  Poly wrap(std::vector<Elem> v) const {
    Poly r(field_);
    r.c_ = std::move(v);
    detail::trim(r.c_);
    return r;
  }

  FieldPtr field_;
  std::vector<Elem> c_;
};

/// Monic gcd. Throws InputError when both arguments are zero.
inline Poly gcd(const Poly& a, const Poly& b) {
  require_same_field(a.field(), b.field());
  if (a.is_zero() && b.is_zero()) throw InputError("gcd of two zero polynomials");
  return Poly(a.field(), detail::gcd(a.f(), a.coeffs(), b.coeffs()));
}

inline Poly powmod(const Poly& base, std::uint64_t e, const Poly& m) {
  require_same_field(base.field(), m.field());
  return Poly(base.field(), detail::powmod(base.f(), base.coeffs(), e, m.coeffs()));
}

}  // namespace fneq
