#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "fneq/detail/dense_poly.hpp"
#include "fneq/poly.hpp"

namespace fneq {

/// True iff f is irreducible over its field. Throws InputError for constants.
inline bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) throw InputError("irreducibility is undefined for constants");
  return detail::rabin_irreducible(f.f(), f.coeffs());
}

struct Factor {
  Poly poly;
  unsigned multiplicity;
  friend bool operator==(const Factor&, const Factor&) = default;
};

/// unit * prod(poly^multiplicity), factors monic, distinct, irreducible and
/// sorted by canonical_compare.
struct Factorization {
  Elem unit = 0;
  std::vector<Factor> factors;

  /// Residue degrees with multiplicity, ascending.
  std::vector<unsigned> degrees() const {
    std::vector<unsigned> d;
    for (const auto& fa : factors) {
      for (unsigned i = 0; i < fa.multiplicity; ++i) d.push_back(static_cast<unsigned>(fa.poly.degree()));
    }
    std::sort(d.begin(), d.end());
    return d;
  }

  bool squarefree() const noexcept {
    return std::all_of(factors.begin(), factors.end(), [](const Factor& f) { return f.multiplicity == 1; });
  }

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

namespace detail {

using Rng = std::mt19937_64;

/// Exact p-th root of a polynomial whose derivative vanishes.
inline Coeffs pth_root(const Field& f, const Coeffs& a) {
  const std::uint64_t p = f.characteristic();
  Coeffs r((a.size() + p - 1) / p, 0);
  for (std::size_t i = 0; i < a.size(); i += p) r[i / p] = f.pth_root(a[i]);
  trim(r);
  return r;
}

/// Squarefree decomposition of a monic polynomial: pairs (g_i, i) with
/// f = prod g_i^i, each g_i squarefree and pairwise coprime.
inline void squarefree_decompose(const Field& f, const Coeffs& a, std::uint64_t mult,
                                 std::vector<std::pair<Coeffs, std::uint64_t>>& out) {
  if (degree(a) < 1) return;
  Coeffs c = gcd(f, a, derivative(f, a));
  Coeffs w = quo(f, a, c);
  std::uint64_t i = 1;
  while (degree(w) > 0) {
    Coeffs y = gcd(f, w, c);
    Coeffs z = quo(f, w, y);
    if (degree(z) > 0) out.emplace_back(std::move(z), i * mult);
    ++i;
    w = std::move(y);
    c = quo(f, c, w);
  }
  if (degree(c) > 0) squarefree_decompose(f, pth_root(f, c), mult * f.characteristic(), out);
}

/// Splits a monic squarefree polynomial into products of irreducibles of equal degree.
inline std::vector<std::pair<Coeffs, unsigned>> distinct_degree(const Field& f, Coeffs a) {
  std::vector<std::pair<Coeffs, unsigned>> out;
  const Coeffs x{0, 1};
  Coeffs h = rem(f, x, a);
  unsigned i = 1;
  while (degree(a) >= 2 * static_cast<int>(i)) {
    h = powmod(f, h, f.order(), a);
    Coeffs g = gcd(f, a, sub(f, h, x));
    if (degree(g) > 0) {
      a = quo(f, a, g);
      h = rem(f, h, a);
      out.emplace_back(std::move(g), i);
    }
    ++i;
  }
  if (degree(a) > 0) {
    const auto d = static_cast<unsigned>(degree(a));
    out.emplace_back(std::move(a), d);
  }
  return out;
}

inline Coeffs random_below(const Field& f, int deg, Rng& rng) {
  Coeffs r(static_cast<std::size_t>(deg), 0);
  for (auto& c : r) c = rng() % f.order();
  trim(r);
  return r;
}

/// Cantor-Zassenhaus splitting of a monic squarefree product of irreducibles
/// of degree d. Characteristic 2 uses the absolute trace map.
inline void equal_degree(const Field& f, const Coeffs& a, unsigned d, Rng& rng, std::vector<Coeffs>& out) {
  if (degree(a) == static_cast<int>(d)) {
    out.push_back(a);
    return;
  }
  const std::uint64_t q = f.order();
  for (;;) {
    Coeffs r = random_below(f, degree(a), rng);
    if (degree(r) < 1) continue;
    Coeffs probe;
    if (f.characteristic() == 2) {
      // r + r^2 + ... + r^(2^(kd-1)), q = 2^k
      Coeffs t = r, s = r;
      const unsigned steps = f.degree() * d;
      for (unsigned i = 1; i < steps; ++i) {
        t = mulmod(f, t, t, a);
        s = add(f, s, t);
      }
      probe = std::move(s);
    } else {
      // r^((q^d-1)/2) = (r^(1+q+...+q^(d-1)))^((q-1)/2)
      Coeffs t = r, norm = r;
      for (unsigned i = 1; i < d; ++i) {
        t = powmod(f, t, q, a);
        norm = mulmod(f, norm, t, a);
      }
      probe = sub(f, powmod(f, norm, (q - 1) / 2, a), Coeffs{1});
    }
    Coeffs g = gcd(f, a, probe);
    if (degree(g) > 0 && degree(g) < degree(a)) {
      equal_degree(f, g, d, rng, out);
      equal_degree(f, quo(f, a, g), d, rng, out);
      return;
    }
  }
}

}  // namespace detail

/// Complete factorization: squarefree decomposition, distinct-degree, then
/// equal-degree splitting driven by a generator seeded with `seed`.
inline Factorization factor(const Poly& f, std::uint64_t seed = 0) {
  if (f.degree() < 1) throw InputError("cannot factor a constant");
  const Field& fld = f.f();
  detail::Rng rng(seed);
  Factorization out;
  out.unit = f.lead();
  std::vector<std::pair<detail::Coeffs, std::uint64_t>> sqf;
  detail::squarefree_decompose(fld, f.monic().coeffs(), 1, sqf);
  for (const auto& [part, mult] : sqf) {
    for (const auto& [block, d] : detail::distinct_degree(fld, part)) {
      std::vector<detail::Coeffs> irr;
      detail::equal_degree(fld, block, d, rng, irr);
      for (auto& g : irr) out.factors.push_back({Poly(f.field(), std::move(g)), static_cast<unsigned>(mult)});
    }
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const Factor& a, const Factor& b) { return canonical_compare(a.poly, b.poly) < 0; });
  return out;
}

/// unit * prod(p_i^e_i).
inline Poly expand(const FieldPtr& field, const Factorization& fz) {
  Poly r = Poly::constant(field, fz.unit);
  for (const auto& fa : fz.factors) r *= fa.poly.pow(fa.multiplicity);
  return r;
}

/// All monic irreducibles of degree d in lexicographic order (leading
/// coefficient down).
inline std::vector<Poly> monic_irreducibles(const FieldPtr& field, unsigned d) {
  if (d == 0) throw InputError("degree must be positive");
  const std::uint64_t q = field->order();
  std::vector<Poly> out;
  std::vector<Elem> c(d + 1, 0);
  c[d] = 1;
  for (;;) {
    if (detail::ben_or_irreducible(*field, c)) out.emplace_back(field, c);
    unsigned i = 0;
    while (i < d && ++c[i] == q) c[i++] = 0;
    if (i == d) break;
  }
  // The counter runs lowest coefficient fastest, which is already lexicographic
  // from the leading coefficient down.
  return out;
}

/// A monic irreducible of degree d by rejection sampling; deterministic in seed.
inline Poly random_irreducible(const FieldPtr& field, unsigned d, std::uint64_t seed) {
  if (d == 0) throw InputError("degree must be positive");
  detail::Rng rng(seed);
  std::vector<Elem> c(d + 1, 0);
  for (;;) {
    for (unsigned i = 0; i < d; ++i) c[i] = rng() % field->order();
    c[d] = 1;
    if (detail::rabin_irreducible(*field, c)) return Poly(field, c);
  }
}

}  // namespace fneq
