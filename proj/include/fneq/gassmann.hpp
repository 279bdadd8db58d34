#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fneq/finite_field.hpp"

namespace fneq {

/// Row-major n x n matrix over a Field, entries as raw Elem values.
using MatrixEntries = std::vector<Elem>;

namespace detail {

struct EntriesHash {
  std::size_t operator()(const MatrixEntries& m) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto e : m) h = (h ^ e) * 0x100000001b3ULL;
    return static_cast<std::size_t>(h);
  }
};

inline MatrixEntries mat_mul(const Field& f, unsigned n, const MatrixEntries& a, const MatrixEntries& b) {
  MatrixEntries c(static_cast<std::size_t>(n) * n, 0);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned k = 0; k < n; ++k) {
      const Elem x = a[i * n + k];
      if (x == 0) continue;
      for (unsigned j = 0; j < n; ++j) c[i * n + j] = f.add(c[i * n + j], f.mul(x, b[k * n + j]));
    }
  }
  return c;
}

/// Gauss-Jordan inverse; nullopt when singular.
inline std::optional<MatrixEntries> mat_inverse(const Field& f, unsigned n, MatrixEntries a) {
  MatrixEntries inv(static_cast<std::size_t>(n) * n, 0);
  for (unsigned i = 0; i < n; ++i) inv[i * n + i] = 1;
  for (unsigned col = 0; col < n; ++col) {
    unsigned piv = col;
    while (piv < n && a[piv * n + col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != col) {
      for (unsigned j = 0; j < n; ++j) {
        std::swap(a[piv * n + j], a[col * n + j]);
        std::swap(inv[piv * n + j], inv[col * n + j]);
      }
    }
    const Elem s = f.inv(a[col * n + col]);
    for (unsigned j = 0; j < n; ++j) {
      a[col * n + j] = f.mul(a[col * n + j], s);
      inv[col * n + j] = f.mul(inv[col * n + j], s);
    }
    for (unsigned r = 0; r < n; ++r) {
      if (r == col || a[r * n + col] == 0) continue;
      const Elem m = a[r * n + col];
      for (unsigned j = 0; j < n; ++j) {
        a[r * n + j] = f.sub(a[r * n + j], f.mul(m, a[col * n + j]));
        inv[r * n + j] = f.sub(inv[r * n + j], f.mul(m, inv[col * n + j]));
      }
    }
  }
  return inv;
}

struct GroupData {
  FieldPtr field;
  unsigned n = 0;
  Elem primitive = 1;
  std::uint64_t scalar_index = 1;  // s = [F_q^x : S]
  std::vector<std::uint64_t> dlog;  // dlog[c] = k with primitive^k = c
  std::vector<Elem> powers;         // powers[k] = primitive^k, k < q-1
  std::vector<MatrixEntries> elements;
  std::unordered_map<MatrixEntries, std::size_t, EntriesHash> index;
  std::vector<std::size_t> inverse;
  std::size_t identity = 0;

  /// Scales M by the element of S that moves its first nonzero entry into
  /// the transversal {primitive^0, ..., primitive^(s-1)}.
  MatrixEntries canonical(MatrixEntries m) const {
    if (scalar_index + 1 == field->order()) return m;  // S = {1}
    const Elem* first = nullptr;
    for (const auto& e : m) {
      if (e != 0) {
        first = &e;
        break;
      }
    }
    if (!first) return m;
    const std::uint64_t k = dlog[*first];
    const std::uint64_t shift = k - k % scalar_index;
    if (shift == 0) return m;
    const Elem scale = powers[(field->order() - 1 - shift) % (field->order() - 1)];
    for (auto& e : m) e = field->mul(e, scale);
    return m;
  }
};

}  // namespace detail

/// GL_n(F_q)/S, fully enumerated. Elements are addressed by their index in
/// the canonical (row-major lexicographic) order; in quotient mode each class
/// is stored as its canonical representative.
class MatGroup {
 public:
  static constexpr std::size_t kDefaultCap = 1'000'000;

  /// GL_n(F_q)/<scalar_generator>. The generator must be a nonzero element;
  /// 1 gives GL_n(F_q) itself.
  static MatGroup general_linear(const FieldPtr& field, unsigned n, Elem scalar_generator = 1,
                                 std::size_t cap = kDefaultCap, std::uint64_t check_seed = 0) {
    if (n == 0) throw InputError("dimension must be positive");
    if (scalar_generator == 0 || !field->contains(scalar_generator)) {
      throw InputError("scalar subgroup generator must be a nonzero field element");
    }
    const std::uint64_t q = field->order();
    auto d = std::make_shared<detail::GroupData>();
    d->field = field;
    d->n = n;
    d->primitive = field->primitive_element();
    d->dlog.assign(q, 0);
    d->powers.resize(q - 1);
    Elem x = 1;
    for (std::uint64_t k = 0; k + 1 < q; ++k) {
      d->powers[k] = x;
      d->dlog[x] = k;
      x = field->mul(x, d->primitive);
    }
    std::uint64_t s_order = 1;
    for (Elem y = scalar_generator; y != 1; y = field->mul(y, scalar_generator)) ++s_order;
    d->scalar_index = (q - 1) / s_order;

    // |GL_n(F_q)| / |S| against the cap, with overflow guarding.
    const double full = [&] {
      double r = 1, qn = 1;
      for (unsigned i = 0; i < n; ++i) qn *= static_cast<double>(q);
      double qi = 1;
      for (unsigned i = 0; i < n; ++i, qi *= static_cast<double>(q)) r *= qn - qi;
      return r;
    }();
    if (full / static_cast<double>(s_order) > static_cast<double>(cap)) {
      throw InputError("group order exceeds the enumeration cap");
    }
    const std::size_t cells = static_cast<std::size_t>(n) * n;
    MatrixEntries m(cells, 0);
    for (;;) {
      if (detail::mat_inverse(*field, n, m) && d->canonical(m) == m) {
        d->index.emplace(m, d->elements.size());
        d->elements.push_back(m);
      }
      std::size_t i = cells;
      while (i > 0 && ++m[i - 1] == q) m[--i] = 0;
      if (i == 0) break;
    }
    MatrixEntries one(cells, 0);
    for (unsigned i = 0; i < n; ++i) one[i * n + i] = 1;
    d->identity = d->index.at(one);
    d->inverse.resize(d->elements.size());
    for (std::size_t i = 0; i < d->elements.size(); ++i) {
      d->inverse[i] = d->index.at(d->canonical(*detail::mat_inverse(*field, n, d->elements[i])));
    }
    MatGroup g(std::move(d));
    g.spot_check_closure(100, check_seed);
    return g;
  }

  std::size_t order() const noexcept { return d_->elements.size(); }
  unsigned dimension() const noexcept { return d_->n; }
  const FieldPtr& field() const noexcept { return d_->field; }
  /// s = [F_q^x : S].
  std::uint64_t scalar_index() const noexcept { return d_->scalar_index; }
  std::uint64_t scalar_order() const noexcept { return (d_->field->order() - 1) / d_->scalar_index; }
  bool in_scalar_subgroup(Elem c) const noexcept { return c != 0 && d_->dlog[c] % d_->scalar_index == 0; }

  const MatrixEntries& element(std::size_t i) const { return d_->elements.at(i); }
  std::size_t identity() const noexcept { return d_->identity; }
  std::size_t inverse(std::size_t i) const { return d_->inverse.at(i); }

  /// Index of the class of m, or nullopt if m is singular.
  std::optional<std::size_t> find(const MatrixEntries& m) const {
    if (m.size() != static_cast<std::size_t>(d_->n) * d_->n) return std::nullopt;
    auto it = d_->index.find(d_->canonical(m));
    if (it == d_->index.end()) return std::nullopt;
    return it->second;
  }

  std::size_t multiply(std::size_t i, std::size_t j) const {
    return d_->index.at(d_->canonical(detail::mat_mul(*d_->field, d_->n, element(i), element(j))));
  }
  /// g h g^-1
  std::size_t conjugate(std::size_t g, std::size_t h) const { return multiply(multiply(g, h), inverse(g)); }

  friend bool operator==(const MatGroup& a, const MatGroup& b) noexcept { return a.d_ == b.d_; }

 private:
  explicit MatGroup(std::shared_ptr<const detail::GroupData> d) : d_(std::move(d)) {}

  void spot_check_closure(int pairs, std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    for (int k = 0; k < pairs; ++k) {
      const std::size_t i = rng() % order(), j = rng() % order();
      const auto prod = detail::mat_mul(*d_->field, d_->n, element(i), element(j));
      if (!find(prod)) throw std::logic_error("enumerated group is not closed under products");
      if (multiply(i, inverse(i)) != identity()) throw std::logic_error("inverse table is inconsistent");
    }
  }

  std::shared_ptr<const detail::GroupData> d_;
};

/// Subset of a MatGroup verified (exhaustively) to be a subgroup.
class Subgroup {
 public:
  Subgroup(MatGroup parent, std::vector<std::size_t> members) : parent_(std::move(parent)), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    mask_.assign(parent_.order(), false);
    for (auto m : members_) {
      if (m >= parent_.order()) throw InputError("subgroup element outside the parent group");
      mask_[m] = true;
    }
    if (!contains(parent_.identity())) throw InputError("subset does not contain the identity");
    for (auto a : members_) {
      if (!contains(parent_.inverse(a))) throw InputError("subset is not closed under inverses");
      for (auto b : members_) {
        if (!contains(parent_.multiply(a, b))) throw InputError("subset is not closed under products");
      }
    }
  }

  static Subgroup whole(const MatGroup& g) {
    std::vector<std::size_t> all(g.order());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return Subgroup(g, std::move(all), Trusted{});
  }

  /// Elements of the parent satisfying pred; closure is verified.
  template <class Pred>
  static Subgroup where(const MatGroup& g, Pred pred) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < g.order(); ++i) {
      if (pred(g.element(i))) members.push_back(i);
    }
    return Subgroup(g, std::move(members));
  }

  const MatGroup& parent() const noexcept { return parent_; }
  std::size_t order() const noexcept { return members_.size(); }
  const std::vector<std::size_t>& members() const noexcept { return members_; }
  bool contains(std::size_t i) const noexcept { return i < mask_.size() && mask_[i]; }

  friend bool operator==(const Subgroup& a, const Subgroup& b) noexcept {
    return a.parent_ == b.parent_ && a.members_ == b.members_;
  }

 private:
  struct Trusted {};
  Subgroup(MatGroup parent, std::vector<std::size_t> members, Trusted)
      : parent_(std::move(parent)), members_(std::move(members)), mask_(parent_.order(), true) {}

  MatGroup parent_;
  std::vector<std::size_t> members_;
  std::vector<bool> mask_;
};

/// {[1 *; 0 *]} and {[* *; 0 1]} in GL_2(F_p), p an odd prime.
inline std::pair<Subgroup, Subgroup> example1_subgroups(const MatGroup& g) {
  const auto& f = *g.field();
  if (!f.is_prime_field() || f.characteristic() <= 2) throw InputError("Example 1 needs F_p with p > 2");
  if (g.dimension() != 2 || g.scalar_order() != 1) throw InputError("Example 1 lives in GL_2(F_p)");
  auto h = Subgroup::where(g, [](const MatrixEntries& m) { return m[0] == 1 && m[2] == 0; });
  auto hp = Subgroup::where(g, [](const MatrixEntries& m) { return m[2] == 0 && m[3] == 1; });
  return {std::move(h), std::move(hp)};
}

inline std::pair<Subgroup, Subgroup> example1_subgroups(const FieldPtr& field) {
  if (!field->is_prime_field() || field->characteristic() <= 2) throw InputError("Example 1 needs F_p with p > 2");
  return example1_subgroups(MatGroup::general_linear(field, 2));
}

/// Stabilizer of the S-orbit of the column vector v under M -> M v.
inline Subgroup vector_stabilizer(const MatGroup& g, const std::vector<Elem>& v) {
  const unsigned n = g.dimension();
  const auto& f = *g.field();
  if (v.size() != n || std::all_of(v.begin(), v.end(), [](Elem e) { return e == 0; })) {
    throw InputError("need a nonzero vector of length n");
  }
  return Subgroup::where(g, [&](const MatrixEntries& m) {
    std::vector<Elem> mv(n, 0);
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned j = 0; j < n; ++j) mv[i] = f.add(mv[i], f.mul(m[i * n + j], v[j]));
    }
    // mv = c v with c in S
    std::optional<Elem> c;
    for (unsigned i = 0; i < n; ++i) {
      if (v[i] != 0) {
        c = f.div(mv[i], v[i]);
        break;
      }
    }
    if (!g.in_scalar_subgroup(*c)) return false;
    for (unsigned i = 0; i < n; ++i) {
      if (mv[i] != f.mul(*c, v[i])) return false;
    }
    return true;
  });
}

/// Stabilizer of the S-orbit of the row covector w under w -> w M.
inline Subgroup covector_stabilizer(const MatGroup& g, const std::vector<Elem>& w) {
  const unsigned n = g.dimension();
  const auto& f = *g.field();
  if (w.size() != n || std::all_of(w.begin(), w.end(), [](Elem e) { return e == 0; })) {
    throw InputError("need a nonzero covector of length n");
  }
  return Subgroup::where(g, [&](const MatrixEntries& m) {
    std::vector<Elem> wm(n, 0);
    for (unsigned j = 0; j < n; ++j) {
      for (unsigned i = 0; i < n; ++i) wm[j] = f.add(wm[j], f.mul(w[i], m[i * n + j]));
    }
    std::optional<Elem> c;
    for (unsigned j = 0; j < n; ++j) {
      if (w[j] != 0) {
        c = f.div(wm[j], w[j]);
        break;
      }
    }
    if (!g.in_scalar_subgroup(*c)) return false;
    for (unsigned j = 0; j < n; ++j) {
      if (wm[j] != f.mul(*c, w[j])) return false;
    }
    return true;
  });
}

/// H = stabilizer of S e_1, H' = stabilizer of S e_n^T.
inline std::pair<Subgroup, Subgroup> stabilizer_pair(const MatGroup& g) {
  const unsigned n = g.dimension();
  if (n < 2) throw InputError("stabilizer pair needs n >= 2");
  std::vector<Elem> e1(n, 0), en(n, 0);
  e1[0] = 1;
  en[n - 1] = 1;
  return {vector_stabilizer(g, e1), covector_stabilizer(g, en)};
}

struct ConjugacyClass {
  std::size_t representative;  // smallest index in the class
  std::vector<std::size_t> members;
  std::size_t size() const noexcept { return members.size(); }
};

/// Partition of G under conjugation, ordered by representative.
inline std::vector<ConjugacyClass> conjugacy_classes(const MatGroup& g) {
  std::vector<ConjugacyClass> out;
  std::vector<bool> seen(g.order(), false);
  for (std::size_t h = 0; h < g.order(); ++h) {
    if (seen[h]) continue;
    ConjugacyClass c{h, {}};
    for (std::size_t x = 0; x < g.order(); ++x) {
      const std::size_t k = g.conjugate(x, h);
      if (!seen[k]) {
        seen[k] = true;
        c.members.push_back(k);
      }
    }
    std::sort(c.members.begin(), c.members.end());
    out.push_back(std::move(c));
  }
  return out;
}

/// One representative per left coset xH.
inline std::vector<std::size_t> left_coset_representatives(const Subgroup& h) {
  const MatGroup& g = h.parent();
  std::vector<bool> covered(g.order(), false);
  std::vector<std::size_t> reps;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (covered[x]) continue;
    reps.push_back(x);
    for (auto m : h.members()) covered[g.multiply(x, m)] = true;
  }
  return reps;
}

/// Number of cosets xH fixed by each class representative g, i.e. with
/// x^-1 g x in H. This is the permutation character of G on G/H.
inline std::vector<std::size_t> permutation_character_fixpoints(const Subgroup& h,
                                                                const std::vector<ConjugacyClass>& classes) {
  const MatGroup& g = h.parent();
  const auto reps = left_coset_representatives(h);
  std::vector<std::size_t> out;
  out.reserve(classes.size());
  for (const auto& c : classes) {
    std::size_t fixed = 0;
    for (auto x : reps) fixed += h.contains(g.conjugate(g.inverse(x), c.representative));
    out.push_back(fixed);
  }
  return out;
}

inline std::vector<std::size_t> permutation_character_fixpoints(const MatGroup& g, const Subgroup& h) {
  if (!(h.parent() == g)) throw InputError("subgroup belongs to a different group");
  return permutation_character_fixpoints(h, conjugacy_classes(g));
}

/// Exhaustive search for g with g H g^-1 = H'.
inline std::optional<std::size_t> conjugating_element(const Subgroup& h, const Subgroup& hp) {
  if (!(h.parent() == hp.parent())) throw InputError("subgroups belong to different groups");
  if (h.order() != hp.order()) return std::nullopt;
  const MatGroup& g = h.parent();
  for (std::size_t x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (auto m : h.members()) {
      if (!hp.contains(g.conjugate(x, m))) {
        ok = false;
        break;
      }
    }
    if (ok) return x;
  }
  return std::nullopt;
}

struct FixpointRow {
  std::size_t representative;
  std::size_t class_size;
  std::size_t fix_h;
  std::size_t fix_h_prime;
};

struct GassmannCertificate {
  bool is_gassmann = false;
  bool is_nontrivial = false;
  std::size_t index = 0;
  std::vector<FixpointRow> fixpoint_table;
};

/// Gassmann iff the permutation characters on G/H and G/H' agree classwise;
/// nontrivial iff additionally H and H' are not conjugate in G.
inline GassmannCertificate verify_gassmann(const MatGroup& g, const Subgroup& h, const Subgroup& hp) {
  if (!(h.parent() == g) || !(hp.parent() == g)) throw InputError("subgroup belongs to a different group");
  const auto classes = conjugacy_classes(g);
  const auto fh = permutation_character_fixpoints(h, classes);
  const auto fhp = permutation_character_fixpoints(hp, classes);
  GassmannCertificate cert;
  cert.is_gassmann = fh == fhp;
  cert.index = g.order() / h.order();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    cert.fixpoint_table.push_back({classes[i].representative, classes[i].size(), fh[i], fhp[i]});
  }
  cert.is_nontrivial = cert.is_gassmann && !conjugating_element(h, hp).has_value();
  return cert;
}

/// "[[a,b],[c,d]]" with entries as packed field values.
inline std::string render_matrix(const MatGroup& g, std::size_t i) {
  const auto& m = g.element(i);
  const unsigned n = g.dimension();
  std::string out = "[";
  for (unsigned r = 0; r < n; ++r) {
    out += r ? ",[" : "[";
    for (unsigned c = 0; c < n; ++c) {
      if (c) out += ',';
      out += std::to_string(m[r * n + c]);
    }
    out += ']';
  }
  return out + "]";
}

inline std::string render(const MatGroup& g, const GassmannCertificate& cert) {
  std::string out;
  for (const auto& row : cert.fixpoint_table) {
    out += render_matrix(g, row.representative) + '\t' + std::to_string(row.class_size) + '\t' +
           std::to_string(row.fix_h) + '\t' + std::to_string(row.fix_h_prime) + '\n';
  }
  out += std::string("gassmann=") + (cert.is_gassmann ? "true" : "false") +
         " nontrivial=" + (cert.is_nontrivial ? "true" : "false") + " index=" + std::to_string(cert.index) + "\n";
  return out;
}

}  // namespace fneq
