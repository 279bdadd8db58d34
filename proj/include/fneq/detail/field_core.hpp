#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fneq/error.hpp"

namespace fneq {

/// Raw field element: the base-b digit packing of the reduced representative,
/// b being the order of the base field. For a prime field this is the residue
/// in [0, p); for F_p[x]/(M) it is sum c_i p^i.
using Elem = std::uint64_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

namespace detail {
struct Unchecked {};
}  // namespace detail

/// Descriptor of a finite field: either F_p, or base[x]/(M) for a monic
/// irreducible M over another Field. Immutable once built; arithmetic is on
/// raw Elem values and is pure.
///
/// Constructors do no validation. Use make_prime_field / make_extension_field.
class Field {
 public:
  static constexpr unsigned kMaxRelativeDegree = 63;

  Field(detail::Unchecked, std::uint64_t p) : p_(p), q_(p), base_order_(p) {}

  Field(detail::Unchecked, FieldPtr base, std::vector<Elem> modulus)
      : p_(base->p_),
        base_order_(base->q_),
        rel_degree_(static_cast<unsigned>(modulus.size() - 1)),
        base_(std::move(base)),
        modulus_(std::move(modulus)) {
    degree_ = base_->degree_ * rel_degree_;
    q_ = 1;
    for (unsigned i = 0; i < rel_degree_; ++i) {
      if (q_ > std::numeric_limits<std::uint64_t>::max() / 2 / base_order_) {
        throw InputError("field order does not fit in 63 bits");
      }
      q_ *= base_order_;
    }
  }

  std::uint64_t characteristic() const noexcept { return p_; }
  std::uint64_t order() const noexcept { return q_; }
  /// Degree over the prime field.
  unsigned degree() const noexcept { return degree_; }
  /// Degree over base(); 1 for a prime field.
  unsigned relative_degree() const noexcept { return rel_degree_; }
  bool is_prime_field() const noexcept { return !base_; }
  const FieldPtr& base() const noexcept { return base_; }
  /// Monic modulus over base(), constant term first. Empty for prime fields.
  const std::vector<Elem>& modulus() const noexcept { return modulus_; }

  bool contains(Elem a) const noexcept { return a < q_; }
  Elem from_integer(std::int64_t n) const noexcept {
    auto p = static_cast<std::int64_t>(p_);
    return static_cast<Elem>(((n % p) + p) % p);
  }

  Elem add(Elem a, Elem b) const noexcept {
    if (!base_) {
      Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    // Addition is digitwise mod p in the absolute base-p packing.
    Elem r = 0, w = 1;
    while (a != 0 || b != 0) {
      Elem s = a % p_ + b % p_;
      if (s >= p_) s -= p_;
      r += s * w;
      w *= p_;
      a /= p_;
      b /= p_;
    }
    return r;
  }

  Elem neg(Elem a) const noexcept {
    if (!base_) return a == 0 ? 0 : p_ - a;
    Elem r = 0, w = 1;
    while (a != 0) {
      Elem d = a % p_;
      r += (d == 0 ? 0 : p_ - d) * w;
      w *= p_;
      a /= p_;
    }
    return r;
  }

  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const noexcept {
    if (!base_) return (a * b) % p_;
    if (a == 0 || b == 0) return 0;
    const Field& bf = *base_;
    const unsigned k = rel_degree_;
    std::array<Elem, kMaxRelativeDegree> da, db;
    std::array<Elem, 2 * kMaxRelativeDegree> prod;
    unpack(a, da.data());
    unpack(b, db.data());
    std::fill_n(prod.begin(), 2 * k - 1, Elem{0});
    for (unsigned i = 0; i < k; ++i) {
      if (da[i] == 0) continue;
      for (unsigned j = 0; j < k; ++j) {
        if (db[j] == 0) continue;
        prod[i + j] = bf.add(prod[i + j], bf.mul(da[i], db[j]));
      }
    }
    for (unsigned i = 2 * k - 2; i >= k; --i) {
      Elem c = prod[i];
      if (c == 0) continue;
      for (unsigned j = 0; j < k; ++j) {
        prod[i - k + j] = bf.sub(prod[i - k + j], bf.mul(c, modulus_[j]));
      }
    }
    Elem r = 0;
    for (unsigned i = k; i-- > 0;) r = r * base_order_ + prod[i];
    return r;
  }

  Elem pow(Elem a, std::uint64_t e) const noexcept {
    Elem r = 1;
    while (e != 0) {
      if (e & 1) r = mul(r, a);
      e >>= 1;
      if (e != 0) a = mul(a, a);
    }
    return r;
  }

  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("division by zero");
    if (!base_) {
      std::int64_t t = 0, nt = 1;
      auto r = static_cast<std::int64_t>(p_), nr = static_cast<std::int64_t>(a);
      while (nr != 0) {
        std::int64_t qt = r / nr;
        std::tie(t, nt) = std::pair{nt, t - qt * nt};
        std::tie(r, nr) = std::pair{nr, r - qt * nr};
      }
      return from_integer(t);
    }
    return pow(a, q_ - 2);
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  /// The unique b with b^p = a.
  Elem pth_root(Elem a) const noexcept { return pow(a, q_ / p_); }

  /// Coordinates over base(), lowest first; length relative_degree().
  std::vector<Elem> digits(Elem a) const {
    std::vector<Elem> d(rel_degree_);
    if (!base_) {
      d[0] = a;
    } else {
      unpack(a, d.data());
    }
    return d;
  }

  Elem pack(const std::vector<Elem>& digits) const {
    Elem r = 0;
    for (std::size_t i = digits.size(); i-- > 0;) r = r * base_order_ + digits[i];
    return r;
  }

  /// Coordinates over F_p, lowest first; length degree().
  std::vector<std::uint64_t> prime_digits(Elem a) const {
    std::vector<std::uint64_t> d(degree_);
    for (auto& x : d) {
      x = a % p_;
      a /= p_;
    }
    return d;
  }

  /// Smallest (by packed value) generator of the multiplicative group.
  Elem primitive_element() const;

  friend bool operator==(const Field& a, const Field& b) noexcept {
    if (&a == &b) return true;
    if (a.p_ != b.p_ || a.q_ != b.q_ || a.modulus_ != b.modulus_) return false;
    if (!a.base_ || !b.base_) return !a.base_ && !b.base_;
    return *a.base_ == *b.base_;
  }

 private:
  void unpack(Elem a, Elem* out) const noexcept {
    for (unsigned i = 0; i < rel_degree_; ++i) {
      out[i] = a % base_order_;
      a /= base_order_;
    }
  }

  std::uint64_t p_;
  std::uint64_t q_;
  std::uint64_t base_order_;
  unsigned rel_degree_ = 1;
  unsigned degree_ = 1;
  FieldPtr base_;
  std::vector<Elem> modulus_;
};

inline bool same_field(const FieldPtr& a, const FieldPtr& b) noexcept {
  return a == b || (a && b && *a == *b);
}

inline void require_same_field(const FieldPtr& a, const FieldPtr& b) {
  if (!same_field(a, b)) throw FieldMismatch();
}

namespace detail {

/// Distinct prime divisors, ascending.
inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace detail

inline Elem Field::primitive_element() const {
  if (q_ == 2) return 1;
  const auto primes = detail::prime_divisors(q_ - 1);
  for (Elem g = 2; g < q_; ++g) {
    bool generator = true;
    for (auto l : primes) {
      if (pow(g, (q_ - 1) / l) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return g;
  }
  throw std::logic_error("no primitive element found");
}

}  // namespace fneq
