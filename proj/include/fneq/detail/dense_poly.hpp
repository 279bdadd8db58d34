#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fneq/detail/field_core.hpp"

// Dense univariate arithmetic on raw coefficient vectors (constant term first,
// trailing zeros trimmed). Shared by Field construction, Poly and the
// factorization routines.
namespace fneq::detail {

using Coeffs = std::vector<Elem>;

inline void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const Coeffs& a) noexcept { return static_cast<int>(a.size()) - 1; }

inline Coeffs add(const Field& f, const Coeffs& a, const Coeffs& b) {
  Coeffs r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = f.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  }
  trim(r);
  return r;
}

inline Coeffs sub(const Field& f, const Coeffs& a, const Coeffs& b) {
  Coeffs r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = f.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  }
  trim(r);
  return r;
}

inline Coeffs scale(const Field& f, const Coeffs& a, Elem c) {
  if (c == 0) return {};
  Coeffs r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.mul(a[i], c);
  trim(r);
  return r;
}

inline Coeffs mul(const Field& f, const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    }
  }
  trim(r);
  return r;
}

/// a = q*b + r with deg r < deg b. b must be nonzero.
inline void divmod(const Field& f, const Coeffs& a, const Coeffs& b, Coeffs& q, Coeffs& r) {
  if (b.empty()) throw std::domain_error("division by zero polynomial");
  r = a;
  q.clear();
  const int db = degree(b);
  if (degree(a) < db) return;
  q.assign(a.size() - b.size() + 1, 0);
  const Elem lead_inv = f.inv(b.back());
  for (int i = degree(r); i >= db; --i) {
    Elem c = r[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    c = f.mul(c, lead_inv);
    q[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) {
      auto k = static_cast<std::size_t>(i - db + j);
      r[k] = f.sub(r[k], f.mul(c, b[static_cast<std::size_t>(j)]));
    }
  }
  trim(r);
  trim(q);
}

inline Coeffs rem(const Field& f, const Coeffs& a, const Coeffs& b) {
  Coeffs q, r;
  divmod(f, a, b, q, r);
  return r;
}

inline Coeffs quo(const Field& f, const Coeffs& a, const Coeffs& b) {
  Coeffs q, r;
  divmod(f, a, b, q, r);
  return q;
}

inline Coeffs monic(const Field& f, const Coeffs& a) {
  if (a.empty() || a.back() == 1) return a;
  return scale(f, a, f.inv(a.back()));
}

/// Monic gcd; gcd(0, 0) = 0.
inline Coeffs gcd(const Field& f, Coeffs a, Coeffs b) {
  while (!b.empty()) {
    Coeffs r = rem(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(f, a);
}

inline Coeffs derivative(const Field& f, const Coeffs& a) {
  if (a.size() <= 1) return {};
  Coeffs r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) {
    r[i - 1] = f.mul(f.from_integer(static_cast<std::int64_t>(i % f.characteristic())), a[i]);
  }
  trim(r);
  return r;
}

inline Coeffs mulmod(const Field& f, const Coeffs& a, const Coeffs& b, const Coeffs& m) {
  return rem(f, mul(f, a, b), m);
}

inline Coeffs powmod(const Field& f, Coeffs base, std::uint64_t e, const Coeffs& m) {
  Coeffs r = rem(f, Coeffs{1}, m);
  base = rem(f, base, m);
  while (e != 0) {
    if (e & 1) r = mulmod(f, r, base, m);
    e >>= 1;
    if (e != 0) base = mulmod(f, base, base, m);
  }
  return r;
}

inline bool is_one(const Coeffs& a) noexcept { return a.size() == 1 && a[0] == 1; }

/// Rabin's test: f of degree n is irreducible iff x^(q^n) = x mod f and
/// gcd(f, x^(q^(n/l)) - x) = 1 for every prime l | n.
inline bool rabin_irreducible(const Field& f, const Coeffs& poly) {
  const int n = degree(poly);
  if (n < 1) throw InputError("irreducibility test needs a non-constant polynomial");
  if (n == 1) return true;
  const Coeffs m = monic(f, poly);
  const Coeffs x{0, 1};
  std::vector<Coeffs> frob(static_cast<std::size_t>(n) + 1);
  frob[0] = x;
  for (int k = 1; k <= n; ++k) frob[static_cast<std::size_t>(k)] = powmod(f, frob[static_cast<std::size_t>(k) - 1], f.order(), m);
  if (frob[static_cast<std::size_t>(n)] != x) return false;
  for (auto l : prime_divisors(static_cast<std::uint64_t>(n))) {
    const auto k = static_cast<std::size_t>(static_cast<std::uint64_t>(n) / l);
    if (!is_one(gcd(f, m, sub(f, frob[k], x)))) return false;
  }
  return true;
}

/// Ben-Or's test: f of degree n is irreducible iff gcd(f, x^(q^k) - x) = 1 for
/// k = 1..n/2. Stops at the first nontrivial gcd, so reducible inputs with
/// small factors are rejected early.
inline bool ben_or_irreducible(const Field& f, const Coeffs& poly) {
  const int n = degree(poly);
  if (n < 1) throw InputError("irreducibility test needs a non-constant polynomial");
  const Coeffs m = monic(f, poly);
  const Coeffs x{0, 1};
  Coeffs h = rem(f, x, m);
  for (int k = 1; 2 * k <= n; ++k) {
    h = powmod(f, h, f.order(), m);
    if (!is_one(gcd(f, m, sub(f, h, x)))) return false;
  }
  return true;
}

}  // namespace fneq::detail
