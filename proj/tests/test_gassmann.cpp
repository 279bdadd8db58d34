#include <gtest/gtest.h>

#include <numeric>

#include "fneq/gassmann.hpp"
#include "oracles.hpp"

using namespace fneq;

namespace {

std::size_t burnside_sum(const MatGroup& g, const Subgroup& h) {
  const auto classes = conjugacy_classes(g);
  const auto fix = permutation_character_fixpoints(h, classes);
  std::size_t s = 0;
  for (std::size_t i = 0; i < classes.size(); ++i) s += classes[i].size() * fix[i];
  return s;
}

std::vector<std::vector<Elem>> nonzero_vectors(std::uint64_t q, unsigned n) {
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> v(n, 0);
  for (;;) {
    unsigned i = 0;
    while (i < n && ++v[i] == q) v[i++] = 0;
    if (i == n) return out;
    out.push_back(v);
  }
}

}  // namespace

TEST(Gassmann, GroupOrders) {
  for (auto [p, m, n] : {std::tuple{2u, 1u, 2u}, std::tuple{3u, 1u, 2u}, std::tuple{2u, 2u, 2u}, std::tuple{2u, 1u, 3u}}) {
    auto f = make_field(p, m);
    auto g = MatGroup::general_linear(f, n);
    EXPECT_EQ(g.order(), oracle::gl_order(f->order(), n));
    EXPECT_EQ(g.order(), oracle::gl_elements(*f, n).size());
  }
  EXPECT_EQ(MatGroup::general_linear(make_prime_field(3), 2).order(), 48u);
  EXPECT_EQ(MatGroup::general_linear(make_field(2, 2), 2).order(), 180u);
  EXPECT_EQ(MatGroup::general_linear(make_prime_field(3), 1).order(), 2u);
}

TEST(Gassmann, QuotientOrders) {
  auto f5 = make_prime_field(5);
  auto g = MatGroup::general_linear(f5, 2, 4);
  EXPECT_EQ(g.order(), 480u / 2);
  EXPECT_EQ(g.scalar_index(), 2u);
  auto g2 = MatGroup::general_linear(f5, 2, 2);  // 2 generates F_5^x
  EXPECT_EQ(g2.order(), 480u / 4);
  EXPECT_EQ(g2.scalar_index(), 1u);
  auto f7 = make_prime_field(7);
  EXPECT_EQ(MatGroup::general_linear(f7, 2, 2).order(), oracle::gl_order(7, 2) / 3);
}

TEST(Gassmann, GroupIsClosed) {
  auto g = MatGroup::general_linear(make_prime_field(5), 2, 4);
  for (std::size_t a = 0; a < g.order(); a += 7) {
    EXPECT_EQ(g.multiply(a, g.inverse(a)), g.identity());
    for (std::size_t b = 0; b < g.order(); b += 11) {
      const auto ab = g.multiply(a, b);
      EXPECT_LT(ab, g.order());
    }
  }
}

TEST(Gassmann, Errors) {
  auto f2 = make_prime_field(2);
  auto f3 = make_prime_field(3);
  EXPECT_THROW(example1_subgroups(f2), InputError);
  EXPECT_THROW(example1_subgroups(make_field(3, 2)), InputError);
  EXPECT_THROW(MatGroup::general_linear(f3, 0), InputError);
  EXPECT_THROW(MatGroup::general_linear(f3, 2, 0), InputError);
  EXPECT_THROW(MatGroup::general_linear(f3, 3, 1, 1000), InputError);
  EXPECT_THROW(stabilizer_pair(MatGroup::general_linear(f3, 1)), InputError);
  auto g = MatGroup::general_linear(f3, 2);
  EXPECT_THROW(Subgroup(g, {1, 2}), InputError);
  auto other = MatGroup::general_linear(f3, 2);
  auto [h, hp] = example1_subgroups(g);
  EXPECT_THROW(verify_gassmann(other, h, hp), InputError);
}

TEST(Gassmann, ConjugacyClasses) {
  auto f3 = make_prime_field(3);
  auto g = MatGroup::general_linear(f3, 2);
  auto classes = conjugacy_classes(g);
  EXPECT_EQ(classes.size(), 8u);
  std::multiset<std::size_t> sizes;
  std::size_t total = 0;
  for (const auto& c : classes) {
    sizes.insert(c.size());
    total += c.size();
  }
  EXPECT_EQ(total, g.order());
  EXPECT_EQ(sizes, oracle::gl_class_sizes(*f3, 2));
  const auto id_class = std::find_if(classes.begin(), classes.end(),
                                     [&](const ConjugacyClass& c) { return c.representative == g.identity(); });
  ASSERT_NE(id_class, classes.end());
  EXPECT_EQ(id_class->size(), 1u);

  auto g1 = MatGroup::general_linear(f3, 1);
  auto c1 = conjugacy_classes(g1);
  ASSERT_EQ(c1.size(), 2u);
  EXPECT_EQ(c1[0].size(), 1u);
  EXPECT_EQ(c1[1].size(), 1u);

  auto f4 = make_field(2, 2);
  std::multiset<std::size_t> s4;
  for (const auto& c : conjugacy_classes(MatGroup::general_linear(f4, 2))) s4.insert(c.size());
  EXPECT_EQ(s4, oracle::gl_class_sizes(*f4, 2));
}

TEST(Gassmann, ExampleOne) {
  auto g = MatGroup::general_linear(make_prime_field(3), 2);
  auto [h, hp] = example1_subgroups(g);
  EXPECT_EQ(h.order(), 6u);
  EXPECT_EQ(hp.order(), 6u);
  auto cert = verify_gassmann(g, h, hp);
  EXPECT_TRUE(cert.is_gassmann);
  EXPECT_TRUE(cert.is_nontrivial);
  EXPECT_EQ(cert.index, 8u);
  for (const auto& row : cert.fixpoint_table) EXPECT_EQ(row.fix_h, row.fix_h_prime);

  auto g5 = MatGroup::general_linear(make_prime_field(5), 2);
  EXPECT_EQ(g5.order(), 480u);
  auto [h5, hp5] = example1_subgroups(g5);
  EXPECT_EQ(h5.order(), 20u);
  auto cert5 = verify_gassmann(g5, h5, hp5);
  EXPECT_EQ(cert5.index, 24u);
  EXPECT_TRUE(cert5.is_nontrivial);
}

TEST(Gassmann, SelfPairIsTrivial) {
  auto g = MatGroup::general_linear(make_prime_field(3), 2);
  auto [h, hp] = example1_subgroups(g);
  auto cert = verify_gassmann(g, h, h);
  EXPECT_TRUE(cert.is_gassmann);
  EXPECT_FALSE(cert.is_nontrivial);
}

TEST(Gassmann, PermutationCharacterBasics) {
  auto g = MatGroup::general_linear(make_prime_field(3), 2);
  auto [h, hp] = example1_subgroups(g);
  auto classes = conjugacy_classes(g);
  auto fix = permutation_character_fixpoints(h, classes);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].representative == g.identity()) {
      EXPECT_EQ(fix[i], 8u);
    }
  }
  for (auto v : permutation_character_fixpoints(g, Subgroup::whole(g))) EXPECT_EQ(v, 1u);
  EXPECT_EQ(left_coset_representatives(h).size(), 8u);
}

TEST(Gassmann, FixpointFormula) {
  // fix(g) = |G| / (|H| |C|) * |C intersect H|, computed without cosets.
  auto g = MatGroup::general_linear(make_prime_field(3), 2);
  auto [h, hp] = example1_subgroups(g);
  auto classes = conjugacy_classes(g);
  for (const Subgroup* s : {&h, &hp}) {
    auto fix = permutation_character_fixpoints(*s, classes);
    for (std::size_t i = 0; i < classes.size(); ++i) {
      std::size_t meet = 0;
      for (auto m : classes[i].members) meet += s->contains(m);
      EXPECT_EQ(fix[i] * s->order() * classes[i].size(), g.order() * meet);
    }
  }
}

TEST(Gassmann, StabilizerPairs) {
  auto g4 = MatGroup::general_linear(make_field(2, 2), 2);
  auto [h4, hp4] = stabilizer_pair(g4);
  auto c4 = verify_gassmann(g4, h4, hp4);
  EXPECT_EQ(c4.index, 15u);
  EXPECT_TRUE(c4.is_gassmann);
  EXPECT_TRUE(c4.is_nontrivial);

  auto g32 = MatGroup::general_linear(make_prime_field(2), 3);
  auto [h3, hp3] = stabilizer_pair(g32);
  auto c3 = verify_gassmann(g32, h3, hp3);
  EXPECT_EQ(c3.index, 7u);
  EXPECT_TRUE(c3.is_nontrivial);

  auto g22 = MatGroup::general_linear(make_prime_field(2), 2);
  auto [h2, hp2] = stabilizer_pair(g22);
  auto c2 = verify_gassmann(g22, h2, hp2);
  EXPECT_TRUE(c2.is_gassmann);
  EXPECT_FALSE(c2.is_nontrivial);
  EXPECT_EQ(c2.index, 3u);
  auto x = conjugating_element(h2, hp2);
  ASSERT_TRUE(x.has_value());
  for (auto m : h2.members()) EXPECT_TRUE(hp2.contains(g22.conjugate(*x, m)));

  // Example 2 index s(q^n - 1)/(q - 1) in quotient mode.
  auto g5 = MatGroup::general_linear(make_prime_field(5), 2, 4);
  auto [h5, hp5] = stabilizer_pair(g5);
  auto c5 = verify_gassmann(g5, h5, hp5);
  EXPECT_EQ(c5.index, 2u * 24 / 4);
  EXPECT_TRUE(c5.is_nontrivial);
}

TEST(Gassmann, StabilizersReproduceExampleOne) {
  for (std::uint64_t p : {3, 5}) {
    auto g = MatGroup::general_linear(make_prime_field(p), 2);
    auto [h, hp] = stabilizer_pair(g);
    auto [e, ep] = example1_subgroups(g);
    EXPECT_EQ(h, e);
    EXPECT_TRUE(conjugating_element(hp, ep).has_value());
  }
}

TEST(Gassmann, CertificateIndependentOfChosenVectors) {
  struct Case {
    FieldPtr field;
    unsigned n;
    Elem gen;
  };
  for (const auto& c : {Case{make_prime_field(3), 2, 1}, Case{make_field(2, 2), 2, 1},
                        Case{make_prime_field(2), 3, 1}, Case{make_prime_field(5), 2, 4}}) {
    auto g = MatGroup::general_linear(c.field, c.n, c.gen);
    auto [h0, hp0] = stabilizer_pair(g);
    auto classes = conjugacy_classes(g);
    const auto ref = permutation_character_fixpoints(h0, classes);
    const auto ref_cert = verify_gassmann(g, h0, hp0);
    const auto vectors = nonzero_vectors(c.field->order(), c.n);
    for (const auto& v : vectors) {
      auto h = vector_stabilizer(g, v);
      ASSERT_TRUE(conjugating_element(h0, h).has_value());
      auto hp = covector_stabilizer(g, v);
      ASSERT_TRUE(conjugating_element(hp0, hp).has_value());
      ASSERT_EQ(permutation_character_fixpoints(h, classes), ref);
      ASSERT_EQ(permutation_character_fixpoints(hp, classes), ref);
    }
    // Full certificates for a handful of other choices.
    for (std::size_t i = 0; i < vectors.size(); i += 3) {
      auto cert = verify_gassmann(g, vector_stabilizer(g, vectors[i]), covector_stabilizer(g, vectors[vectors.size() - 1 - i]));
      EXPECT_EQ(cert.is_gassmann, ref_cert.is_gassmann);
      EXPECT_EQ(cert.is_nontrivial, ref_cert.is_nontrivial);
      EXPECT_EQ(cert.index, ref_cert.index);
    }
  }
}

TEST(Gassmann, BurnsideOrbitCount) {
  std::vector<MatGroup> groups{MatGroup::general_linear(make_prime_field(3), 2),
                               MatGroup::general_linear(make_field(2, 2), 2),
                               MatGroup::general_linear(make_prime_field(2), 3),
                               MatGroup::general_linear(make_prime_field(2), 2),
                               MatGroup::general_linear(make_prime_field(5), 2, 4)};
  for (const auto& g : groups) {
    auto [h, hp] = stabilizer_pair(g);
    EXPECT_EQ(burnside_sum(g, h), g.order());
    EXPECT_EQ(burnside_sum(g, hp), g.order());
  }
  auto g3 = MatGroup::general_linear(make_prime_field(3), 2);
  auto [h, hp] = example1_subgroups(g3);
  EXPECT_EQ(burnside_sum(g3, h), g3.order());
  EXPECT_EQ(burnside_sum(g3, hp), g3.order());
}

TEST(Gassmann, Rendering) {
  auto g = MatGroup::general_linear(make_prime_field(2), 2);
  auto [h, hp] = stabilizer_pair(g);
  auto text = render(g, verify_gassmann(g, h, hp));
  EXPECT_EQ(text.substr(text.rfind('\n', text.size() - 2) + 1), "gassmann=true nontrivial=false index=3\n");
  EXPECT_EQ(render_matrix(g, g.identity()), "[[1,0],[0,1]]");
}
