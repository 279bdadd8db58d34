#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fneq/poly.hpp"

namespace fneq {

namespace detail {

inline void trim_polys(std::vector<Poly>& v) {
  while (!v.empty() && v.back().is_zero()) v.pop_back();
}

inline void check_coefficient_field(const FieldPtr& field, const std::vector<Poly>& coeffs) {
  for (const auto& c : coeffs) require_same_field(field, c.field());
}

}  // namespace detail

/// A polynomial in one variable whose coefficients are elements of A = F_q[T].
/// Shared representation of YPoly and TwistedPoly.
class APolyVector {
 public:
  explicit APolyVector(FieldPtr field) : field_(std::move(field)) {}
  APolyVector(FieldPtr field, std::vector<Poly> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
    detail::check_coefficient_field(field_, c_);
    detail::trim_polys(c_);
  }

  const FieldPtr& field() const noexcept { return field_; }
  const std::vector<Poly>& coeffs() const noexcept { return c_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  /// Coefficient of the k-th power; zero past the degree.
  Poly coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Poly(field_); }
  const Poly& lead() const { return c_.back(); }

 protected:
  FieldPtr field_;
  std::vector<Poly> c_;
};

/// Ordinary polynomial in y over F_q[T].
class YPoly : public APolyVector {
 public:
  using APolyVector::APolyVector;

  friend YPoly operator+(const YPoly& a, const YPoly& b) {
    require_same_field(a.field_, b.field_);
    std::vector<Poly> r(std::max(a.c_.size(), b.c_.size()), Poly(a.field_));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
    return {a.field_, std::move(r)};
  }
  friend YPoly operator*(const YPoly& a, const YPoly& b) {
    require_same_field(a.field_, b.field_);
    if (a.is_zero() || b.is_zero()) return YPoly(a.field_);
    std::vector<Poly> r(a.c_.size() + b.c_.size() - 1, Poly(a.field_));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return {a.field_, std::move(r)};
  }
  friend bool operator==(const YPoly& a, const YPoly& b) noexcept {
    return a.c_ == b.c_ && same_field(a.field_, b.field_);
  }
};

/// Element of F_q[T]<tau> with tau*a = a^q*tau, written sum a_i tau^i.
class TwistedPoly : public APolyVector {
 public:
  using APolyVector::APolyVector;

  static TwistedPoly tau(FieldPtr field) {
    auto f = field;
    return {std::move(field), {Poly(f), Poly::one(f)}};
  }
  static TwistedPoly constant(const Poly& a) { return {a.field(), {a}}; }

  friend TwistedPoly operator+(const TwistedPoly& a, const TwistedPoly& b) {
    require_same_field(a.field_, b.field_);
    std::vector<Poly> r(std::max(a.c_.size(), b.c_.size()), Poly(a.field_));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
    return {a.field_, std::move(r)};
  }

  /// (a tau^i)(b tau^j) = a b^(q^i) tau^(i+j), extended bilinearly.
  friend TwistedPoly operator*(const TwistedPoly& u, const TwistedPoly& v) {
    require_same_field(u.field_, v.field_);
    if (u.is_zero() || v.is_zero()) return TwistedPoly(u.field_);
    const std::uint64_t q = u.field_->order();
    std::vector<Poly> r(u.c_.size() + v.c_.size() - 1, Poly(u.field_));
    std::uint64_t qi = 1;
    for (std::size_t i = 0; i < u.c_.size(); ++i, qi *= q) {
      if (u.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < v.c_.size(); ++j) {
        if (v.c_[j].is_zero()) continue;
        r[i + j] += u.c_[i] * v.c_[j].compose_power(qi);
      }
    }
    return {u.field_, std::move(r)};
  }

  friend bool operator==(const TwistedPoly& a, const TwistedPoly& b) noexcept {
    return a.c_ == b.c_ && same_field(a.field_, b.field_);
  }
};

/// Drinfeld module rho: F_q[T] -> F_q[T]<tau> of general characteristic,
/// determined by rho_T = T + a_1 tau + ... + a_r tau^r with a_r != 0, r >= 1.
class DrinfeldModule {
 public:
  explicit DrinfeldModule(TwistedPoly image_of_t) : t_(std::move(image_of_t)) {
    if (t_.degree() < 1) throw InputError("rank must be positive (tau-degree of rho_T >= 1)");
    if (t_.coeff(0) != Poly::variable(t_.field())) throw InputError("a_0 must equal T");
  }

  const FieldPtr& field() const noexcept { return t_.field(); }
  unsigned rank() const noexcept { return static_cast<unsigned>(t_.degree()); }
  const TwistedPoly& image_of_t() const noexcept { return t_; }

 private:
  TwistedPoly t_;
};

/// rho_T = tau + T.
inline DrinfeldModule carlitz(const FieldPtr& field) {
  return DrinfeldModule(TwistedPoly(field, {Poly::variable(field), Poly::one(field)}));
}

/// rho_u by Horner's rule over the coefficients of u.
inline TwistedPoly rho_eval(const DrinfeldModule& rho, const Poly& u) {
  require_same_field(rho.field(), u.field());
  const auto& field = rho.field();
  TwistedPoly acc(field);
  for (std::size_t i = u.coeffs().size(); i-- > 0;) {
    acc = acc * rho.image_of_t() + TwistedPoly::constant(Poly::constant(field, u.coeffs()[i]));
  }
  return acc;
}

/// The additive polynomial sum b_i y^(q^i) of rho_a = sum b_i tau^i. With
/// strip_trivial_root the root y = 0 is divided out once.
inline YPoly torsion_polynomial(const DrinfeldModule& rho, const Poly& a, bool strip_trivial_root) {
  if (a.degree() < 1) throw InputError("torsion polynomial needs a non-constant a");
  const TwistedPoly op = rho_eval(rho, a);
  const auto& field = rho.field();
  const std::uint64_t q = field->order();
  std::uint64_t top = 1;
  for (int i = 0; i < op.degree(); ++i) {
    if (top > (std::uint64_t{1} << 24) / q) throw InputError("torsion polynomial degree too large");
    top *= q;
  }
  std::vector<Poly> y(top + 1, Poly(field));
  std::uint64_t e = 1;
  for (std::size_t i = 0; i < op.coeffs().size(); ++i, e *= q) y[e] = op.coeffs()[i];
  if (strip_trivial_root) {
    if (!y[0].is_zero()) throw std::logic_error("torsion polynomial has nonzero constant term");
    y.erase(y.begin());
  }
  return {field, std::move(y)};
}

}  // namespace fneq
