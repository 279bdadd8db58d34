#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <cstdint>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "fneq/expr.hpp"
#include "fneq/factor.hpp"
#include "fneq/twisted.hpp"

namespace fneq {

/// Residue degrees of the primes above P, with multiplicity, ascending.
struct SplitType {
  std::vector<unsigned> degrees;

  unsigned total() const noexcept {
    unsigned s = 0;
    for (auto d : degrees) s += d;
    return s;
  }
  friend bool operator==(const SplitType&, const SplitType&) = default;
};

inline std::string render(const SplitType& t) {
  std::string out = "[";
  for (std::size_t i = 0; i < t.degrees.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(t.degrees[i]);
  }
  return out + "]";
}

/// A_P = F_q[T]/(P) for a monic irreducible P. Degree-one primes map to F_q itself.
class ResidueField {
 public:
  explicit ResidueField(Poly prime) : prime_(std::move(prime)) {
    if (!prime_.is_monic()) throw InputError("prime must be monic");
    if (prime_.degree() < 1 || !is_irreducible(prime_)) throw InputError("prime must be irreducible");
    field_ = prime_.degree() == 1 ? prime_.field() : make_extension_field(prime_.field(), prime_.coeffs());
  }

  const Poly& prime() const noexcept { return prime_; }
  const FieldPtr& field() const noexcept { return field_; }
  const FieldPtr& base() const noexcept { return prime_.field(); }

  /// Class of a in A/(P).
  Elem reduce(const Poly& a) const {
    require_same_field(a.field(), prime_.field());
    const Poly r = a % prime_;
    std::vector<Elem> d(static_cast<std::size_t>(prime_.degree()), 0);
    std::copy(r.coeffs().begin(), r.coeffs().end(), d.begin());
    return prime_.degree() == 1 ? d[0] : field_->pack(d);
  }

  /// Canonical lift of a residue class: the representative of degree < deg P.
  Poly lift(Elem c) const {
    if (prime_.degree() == 1) return Poly::constant(base(), c);
    return Poly(base(), field_->digits(c));
  }

 private:
  Poly prime_;
  FieldPtr field_;
};

/// f mod P as a polynomial in y over F_q[T]/(P). The degree drops when the
/// leading coefficient is divisible by P.
inline Poly reduce_mod_prime(const YPoly& f, const ResidueField& residue) {
  require_same_field(f.field(), residue.base());
  std::vector<Elem> c;
  c.reserve(f.coeffs().size());
  for (const auto& a : f.coeffs()) c.push_back(residue.reduce(a));
  return Poly(residue.field(), std::move(c));
}

inline Poly reduce_mod_prime(const YPoly& f, const Poly& prime) {
  return reduce_mod_prime(f, ResidueField(prime));
}

/// A polynomial in y over A/(P) with coefficients written as T-polynomials of
/// degree < deg P, e.g. "y^2 + (2*T + 1)*y + 2*T + 2".
inline std::string render_residue(const Poly& g, const ResidueField& residue) {
  std::vector<Poly> lifted;
  lifted.reserve(g.coeffs().size());
  for (auto c : g.coeffs()) lifted.push_back(residue.lift(c));
  return render(YPoly(residue.base(), std::move(lifted)));
}

enum class SideDefect { none, leading_coeff_vanishes, repeated_factor };

/// Kummer-Dedekind data for one polynomial at one prime.
struct SideSplit {
  SideDefect defect = SideDefect::none;
  SplitType type;               // empty unless defect == none
  Factorization factorization;  // empty when the leading coefficient vanishes

  bool good() const noexcept { return defect == SideDefect::none; }
};

/// Bad(leading_coeff_vanishes) if P divides the leading coefficient,
/// Bad(repeated_factor) if the reduction is not squarefree, else the split type.
inline SideSplit split_type(const YPoly& f, const ResidueField& residue, std::uint64_t seed) {
  if (f.degree() < 1) throw InputError("split type needs a polynomial of positive y-degree");
  SideSplit out;
  if (residue.reduce(f.lead()) == 0) {
    out.defect = SideDefect::leading_coeff_vanishes;
    return out;
  }
  out.factorization = factor(reduce_mod_prime(f, residue), seed);
  if (!out.factorization.squarefree()) {
    out.defect = SideDefect::repeated_factor;
    return out;
  }
  out.type.degrees = out.factorization.degrees();
  return out;
}

inline SideSplit split_type(const YPoly& f, const Poly& prime, std::uint64_t seed) {
  return split_type(f, ResidueField(prime), seed);
}

enum class BadReason { repeated_factor_f, repeated_factor_g, leading_coeff_vanishes_f, leading_coeff_vanishes_g };

inline const char* to_string(BadReason r) {
  switch (r) {
    case BadReason::repeated_factor_f:
      return "repeated_factor_f";
    case BadReason::repeated_factor_g:
      return "repeated_factor_g";
    case BadReason::leading_coeff_vanishes_f:
      return "leading_coeff_vanishes_f";
    case BadReason::leading_coeff_vanishes_g:
      return "leading_coeff_vanishes_g";
  }
  return "";
}

struct PrimeVerdict {
  Poly prime;
  SideSplit f;
  SideSplit g;

  bool good() const noexcept { return f.good() && g.good(); }
  bool equal() const noexcept { return good() && f.type == g.type; }

  /// Every defect present, f side first.
  std::vector<BadReason> reasons() const {
    std::vector<BadReason> r;
    if (f.defect == SideDefect::leading_coeff_vanishes) r.push_back(BadReason::leading_coeff_vanishes_f);
    if (f.defect == SideDefect::repeated_factor) r.push_back(BadReason::repeated_factor_f);
    if (g.defect == SideDefect::leading_coeff_vanishes) r.push_back(BadReason::leading_coeff_vanishes_g);
    if (g.defect == SideDefect::repeated_factor) r.push_back(BadReason::repeated_factor_g);
    return r;
  }
};

/// Every monic irreducible of degree 1..max_degree.
struct Exhaustive {
  unsigned max_degree = 1;
};

/// `count` draws of random_irreducible at a fixed degree.
struct Sampled {
  unsigned count = 1;
  unsigned degree = 1;
  std::uint64_t seed = 0;
};

using PrimeSelection = std::variant<Exhaustive, Sampled>;

inline std::string describe(const PrimeSelection& s) {
  if (const auto* e = std::get_if<Exhaustive>(&s)) return "exhaustive(max_degree=" + std::to_string(e->max_degree) + ")";
  const auto& m = std::get<Sampled>(s);
  return "sampled(count=" + std::to_string(m.count) + ",degree=" + std::to_string(m.degree) +
         ",seed=" + std::to_string(m.seed) + ")";
}

struct ReportSummary {
  std::size_t good = 0, equal = 0, unequal = 0, bad = 0;
};

struct EquivalenceReport {
  std::string pair_id;
  std::string selection;
  std::vector<PrimeVerdict> verdicts;
  ReportSummary summary;
  bool refuted = false;

  bool consistent() const noexcept { return !refuted; }
};

namespace detail {

/// FNV-1a over the global seed and the rendered prime, so per-prime randomness
/// is independent of evaluation order.
inline std::uint64_t derive_seed(std::uint64_t seed, const std::string& tag) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](unsigned char b) {
    h ^= b;
    h *= 0x100000001b3ULL;
  };
  for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(seed >> (8 * i)));
  for (char c : tag) mix(static_cast<unsigned char>(c));
  return h;
}

}  // namespace detail

/// The primes a selection denotes: deduplicated, ordered by degree then
/// lexicographically.
inline std::vector<Poly> select_primes(const FieldPtr& field, const PrimeSelection& sel) {
  std::vector<Poly> primes;
  if (const auto* e = std::get_if<Exhaustive>(&sel)) {
    if (e->max_degree == 0) throw InputError("empty prime selection");
    for (unsigned d = 1; d <= e->max_degree; ++d) {
      auto level = monic_irreducibles(field, d);
      primes.insert(primes.end(), level.begin(), level.end());
    }
    return primes;
  }
  const auto& s = std::get<Sampled>(sel);
  if (s.count == 0 || s.degree == 0) throw InputError("empty prime selection");
  for (unsigned i = 0; i < s.count; ++i) {
    primes.push_back(random_irreducible(field, s.degree, detail::derive_seed(s.seed, std::to_string(i))));
  }
  std::sort(primes.begin(), primes.end(), [](const Poly& a, const Poly& b) { return canonical_compare(a, b) < 0; });
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

inline PrimeVerdict evaluate_prime(const YPoly& f, const YPoly& g, const Poly& prime, std::uint64_t seed) {
  const ResidueField residue(prime);
  const std::uint64_t s = detail::derive_seed(seed, render(prime));
  return {prime, split_type(f, residue, s), split_type(g, residue, s)};
}

/// Split types of f and g at every selected prime. Primes that are bad for
/// either side are reported but not compared; the pair is refuted iff some
/// good prime has differing split types. Output does not depend on `jobs`.
inline EquivalenceReport compare_split_types(const YPoly& f, const YPoly& g, const PrimeSelection& sel,
                                             std::uint64_t seed, unsigned jobs = 1, std::string pair_id = {}) {
  require_same_field(f.field(), g.field());
  const std::vector<Poly> primes = select_primes(f.field(), sel);
  if (primes.empty()) throw InputError("empty prime selection");

  std::vector<std::optional<PrimeVerdict>> slots(primes.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < primes.size();) {
      if (failed) return;
      try {
        slots[i] = evaluate_prime(f, g, primes[i], seed);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  jobs = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(primes.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  EquivalenceReport report;
  report.pair_id = std::move(pair_id);
  report.selection = describe(sel);
  report.verdicts.reserve(slots.size());
  for (auto& v : slots) {
    PrimeVerdict& pv = report.verdicts.emplace_back(std::move(*v));
    if (!pv.good()) {
      ++report.summary.bad;
      continue;
    }
    ++report.summary.good;
    if (pv.equal()) {
      ++report.summary.equal;
    } else {
      ++report.summary.unequal;
    }
  }
  report.refuted = report.summary.unequal > 0;
  return report;
}

/// One TSV row per prime, then the summary line.
inline std::string render(const EquivalenceReport& r) {
  std::string out = "# pair=" + (r.pair_id.empty() ? std::string("-") : r.pair_id) + " primes=" + r.selection + "\n";
  for (const auto& v : r.verdicts) {
    out += render(v.prime);
    out += '\t' + std::to_string(v.prime.degree());
    out += '\t' + (v.f.good() ? render(v.f.type) : std::string("-"));
    out += '\t' + (v.g.good() ? render(v.g.type) : std::string("-"));
    out += '\t';
    if (!v.good()) {
      out += "bad:";
      auto reasons = v.reasons();
      for (std::size_t i = 0; i < reasons.size(); ++i) {
        if (i) out += ',';
        out += to_string(reasons[i]);
      }
    } else {
      out += v.equal() ? "equal" : "UNEQUAL";
    }
    out += '\n';
  }
  const auto& s = r.summary;
  out += "good=" + std::to_string(s.good) + " equal=" + std::to_string(s.equal) +
         " unequal=" + std::to_string(s.unequal) + " bad=" + std::to_string(s.bad) +
         " overall=" + (r.refuted ? "refuted" : "consistent") + "\n";
  return out;
}

}  // namespace fneq
