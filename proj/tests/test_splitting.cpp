#include <gtest/gtest.h>

#include <random>

#include "fneq/fneq.hpp"
#include "oracles.hpp"

using namespace fneq;

namespace {

LoadedPair pair8() { return load_pair_file(std::string(FNEQ_PAIRS_DIR) + "/gl2_f3_deg8.pair"); }

std::vector<std::string> rendered_factors(const SideSplit& s, const ResidueField& r) {
  std::vector<std::string> out;
  for (const auto& fa : s.factorization.factors) out.push_back(render_residue(fa.poly, r));
  return out;
}

YPoly random_ypoly(const FieldPtr& f, std::mt19937_64& rng, int max_y, int max_t) {
  std::vector<Poly> c(2 + rng() % static_cast<std::uint64_t>(max_y), Poly(f));
  for (auto& x : c) {
    std::vector<Elem> v(rng() % static_cast<std::uint64_t>(max_t + 2));
    for (auto& e : v) e = rng() % f->order();
    x = Poly(f, v);
  }
  while (c.back().is_zero()) c.back() = Poly::constant(f, 1 + rng() % (f->order() - 1));
  return YPoly(f, c);
}

}  // namespace

TEST(Splitting, ReduceModPrime) {
  auto f3 = make_prime_field(3);
  YPoly f = parse_y_poly("y^8 + T*y^2 + T", f3);
  ResidueField r1(parse_t_poly("T + 1", f3));
  EXPECT_EQ(render_residue(reduce_mod_prime(f, r1), r1), "y^8 + 2*y^2 + 2");
  ResidueField r2(parse_t_poly("T^2 + 1", f3));
  Poly red = reduce_mod_prime(f, r2);
  EXPECT_EQ(red.field()->order(), 9u);
  EXPECT_EQ(render_residue(red, r2), "y^8 + T*y^2 + T");
  YPoly drop = parse_y_poly("(T+1)*y^2 + y", f3);
  Poly d = reduce_mod_prime(drop, r1);
  EXPECT_EQ(d, Poly::variable(f3));
}

TEST(Splitting, ResidueFieldErrors) {
  auto f3 = make_prime_field(3);
  EXPECT_THROW(ResidueField(parse_t_poly("T^2 + 2", f3)), InputError);
  EXPECT_THROW(ResidueField(parse_t_poly("2*T + 1", f3)), InputError);
  EXPECT_THROW(ResidueField(Poly::one(f3)), InputError);
  YPoly f2poly = parse_y_poly("y + T", make_prime_field(2));
  EXPECT_THROW(reduce_mod_prime(f2poly, parse_t_poly("T + 1", f3)), FieldMismatch);
}

TEST(Splitting, PaperFactorizations) {
  auto pr = pair8();
  auto f3 = pr.field;
  ResidueField r1(parse_t_poly("T + 1", f3));
  auto sf1 = split_type(pr.f, r1, 0);
  auto sg1 = split_type(pr.g, r1, 0);
  ASSERT_TRUE(sf1.good());
  ASSERT_TRUE(sg1.good());
  EXPECT_EQ(render(sf1.type), "[8]");
  EXPECT_EQ(render(sg1.type), "[8]");
  EXPECT_EQ(rendered_factors(sf1, r1), (std::vector<std::string>{"y^8 + 2*y^2 + 2"}));
  EXPECT_EQ(rendered_factors(sg1, r1), (std::vector<std::string>{"y^8 + y^6 + 2*y^5 + 2*y^4 + y^3 + 1"}));

  ResidueField r2(parse_t_poly("T^2 + 1", f3));
  auto sf2 = split_type(pr.f, r2, 0);
  auto sg2 = split_type(pr.g, r2, 0);
  EXPECT_EQ(render(sf2.type), "[2,6]");
  EXPECT_EQ(render(sg2.type), "[2,6]");
  EXPECT_EQ(rendered_factors(sf2, r2),
            (std::vector<std::string>{"y^2 + T + 1", "y^6 + (2*T + 2)*y^4 + 2*T*y^2 + 2*T + 2"}));
  EXPECT_EQ(rendered_factors(sg2, r2),
            (std::vector<std::string>{"y^2 + (2*T + 1)*y + 2*T + 2",
                                      "y^6 + (T + 2)*y^5 + 2*T*y^4 + y^3 + (2*T + 2)*y + 2*T + 1"}));
}

TEST(Splitting, DefectsAreClassified) {
  auto f3 = make_prime_field(3);
  auto lead = split_type(parse_y_poly("(T+1)*y^2 + y", f3), parse_t_poly("T + 1", f3), 0);
  EXPECT_EQ(lead.defect, SideDefect::leading_coeff_vanishes);
  auto rep = split_type(parse_y_poly("y^2 + 2*T", f3), parse_t_poly("T", f3), 0);
  EXPECT_EQ(rep.defect, SideDefect::repeated_factor);
  EXPECT_TRUE(rep.type.degrees.empty());
  EXPECT_THROW(split_type(YPoly(f3, {Poly::variable(f3)}), parse_t_poly("T", f3), 0), InputError);
}

TEST(Splitting, ExhaustiveTwoOverPaperPair) {
  auto pr = pair8();
  auto rep = compare_split_types(pr.f, pr.g, Exhaustive{2}, 0);
  EXPECT_TRUE(rep.consistent());
  ASSERT_EQ(rep.verdicts.size(), 6u);
  std::vector<std::string> names;
  for (const auto& v : rep.verdicts) names.push_back(render(v.prime));
  EXPECT_EQ(names, (std::vector<std::string>{"T", "T + 1", "T + 2", "T^2 + 1", "T^2 + T + 2", "T^2 + 2*T + 2"}));
  EXPECT_EQ(render(rep.verdicts[1].f.type), "[8]");
  EXPECT_EQ(render(rep.verdicts[3].f.type), "[2,6]");
  EXPECT_EQ(render(rep.verdicts[3].g.type), "[2,6]");
}

TEST(Splitting, IdenticalInputsAreEqualEverywhere) {
  auto pr = pair8();
  auto rep = compare_split_types(pr.f, pr.f, Exhaustive{3}, 0);
  EXPECT_TRUE(rep.consistent());
  for (const auto& v : rep.verdicts) {
    if (v.good()) {
      EXPECT_TRUE(v.equal());
    }
  }
  EXPECT_EQ(rep.summary.unequal, 0u);
  EXPECT_EQ(rep.summary.good + rep.summary.bad, rep.verdicts.size());
}

TEST(Splitting, QuadraticPairIsRefuted) {
  // y^2 + 2T against y^2 + 2T + 2 over F_3. At T the first reduces to y^2
  // (bad); at T+1 the second reduces to y^2 (bad); T+2 is good for both and
  // the root-count oracle shows 2 roots versus none.
  auto f3 = make_prime_field(3);
  YPoly f = parse_y_poly("y^2 + 2*T", f3), g = parse_y_poly("y^2 + 2*T + 2", f3);
  const Poly p = parse_t_poly("T + 2", f3);
  EXPECT_EQ(oracle::count_roots(reduce_mod_prime(f, p)), 2u);
  EXPECT_EQ(oracle::count_roots(reduce_mod_prime(g, p)), 0u);

  auto rep = compare_split_types(f, g, Exhaustive{1}, 0);
  EXPECT_TRUE(rep.refuted);
  ASSERT_EQ(rep.verdicts.size(), 3u);
  EXPECT_FALSE(rep.verdicts[0].good());
  EXPECT_EQ(rep.verdicts[0].reasons(), (std::vector<BadReason>{BadReason::repeated_factor_f}));
  EXPECT_EQ(rep.verdicts[1].reasons(), (std::vector<BadReason>{BadReason::repeated_factor_g}));
  EXPECT_TRUE(rep.verdicts[2].good());
  EXPECT_FALSE(rep.verdicts[2].equal());
  EXPECT_EQ(render(rep.verdicts[2].f.type), "[1,1]");
  EXPECT_EQ(render(rep.verdicts[2].g.type), "[2]");
}

TEST(Splitting, Symmetry) {
  auto pr = pair8();
  auto fg = compare_split_types(pr.f, pr.g, Exhaustive{3}, 4);
  auto gf = compare_split_types(pr.g, pr.f, Exhaustive{3}, 4);
  ASSERT_EQ(fg.verdicts.size(), gf.verdicts.size());
  EXPECT_EQ(fg.refuted, gf.refuted);
  for (std::size_t i = 0; i < fg.verdicts.size(); ++i) {
    EXPECT_EQ(fg.verdicts[i].f.type, gf.verdicts[i].g.type);
    EXPECT_EQ(fg.verdicts[i].g.type, gf.verdicts[i].f.type);
    EXPECT_EQ(fg.verdicts[i].f.defect, gf.verdicts[i].g.defect);
  }
  auto f3 = make_prime_field(3);
  YPoly f = parse_y_poly("y^2 + 2*T", f3), g = parse_y_poly("y^2 + 2*T + 2", f3);
  EXPECT_EQ(compare_split_types(f, g, Exhaustive{2}, 0).refuted, compare_split_types(g, f, Exhaustive{2}, 0).refuted);
}

TEST(Splitting, DeterministicAcrossSeedsRunsAndJobs) {
  auto pr = pair8();
  const std::string a = render(compare_split_types(pr.f, pr.g, Exhaustive{3}, 9, 1, "x"));
  EXPECT_EQ(a, render(compare_split_types(pr.f, pr.g, Exhaustive{3}, 9, 1, "x")));
  EXPECT_EQ(a, render(compare_split_types(pr.f, pr.g, Exhaustive{3}, 9, 4, "x")));
  EXPECT_EQ(a, render(compare_split_types(pr.f, pr.g, Exhaustive{3}, 9, 64, "x")));
  // Split types do not depend on the seed either, only the factoring path.
  EXPECT_EQ(a.substr(a.find('\n')), [&] {
    auto b = render(compare_split_types(pr.f, pr.g, Exhaustive{3}, 12345, 2, "x"));
    return b.substr(b.find('\n'));
  }());
}

TEST(Splitting, SampledSelection) {
  auto pr = pair8();
  Sampled s{10, 3, 7};
  auto primes = select_primes(pr.field, s);
  EXPECT_LE(primes.size(), 10u);
  EXPECT_GE(primes.size(), 1u);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    EXPECT_EQ(primes[i].degree(), 3);
    EXPECT_TRUE(is_irreducible(primes[i]));
    if (i) {
      EXPECT_TRUE(canonical_compare(primes[i - 1], primes[i]) < 0);
    }
  }
  EXPECT_EQ(primes, select_primes(pr.field, s));
  auto rep = compare_split_types(pr.f, pr.g, s, 0);
  EXPECT_EQ(rep.verdicts.size(), primes.size());
  EXPECT_EQ(rep.selection, "sampled(count=10,degree=3,seed=7)");
}

TEST(Splitting, Errors) {
  auto pr = pair8();
  EXPECT_THROW(compare_split_types(pr.f, pr.g, Exhaustive{0}, 0), InputError);
  EXPECT_THROW(compare_split_types(pr.f, pr.g, Sampled{0, 1, 0}, 0), InputError);
  YPoly other = parse_y_poly("y^2 + T", make_prime_field(2));
  EXPECT_THROW(compare_split_types(pr.f, other, Exhaustive{1}, 0), FieldMismatch);
}

TEST(Splitting, BadIffInseparableOrDegreeDrop) {
  std::mt19937_64 rng(3);
  auto f3 = make_prime_field(3);
  std::vector<Poly> primes;
  for (unsigned d = 1; d <= 2; ++d) {
    auto l = monic_irreducibles(f3, d);
    primes.insert(primes.end(), l.begin(), l.end());
  }
  for (int i = 0; i < 60; ++i) {
    YPoly f = random_ypoly(f3, rng, 5, 2);
    for (const auto& p : primes) {
      const ResidueField r(p);
      const Poly red = reduce_mod_prime(f, r);
      const bool drop = red.degree() < f.degree();
      const bool insep = !drop && !gcd(red, red.derivative()).is_one();
      const auto s = split_type(f, r, 0);
      ASSERT_EQ(!s.good(), drop || insep) << render(f) << " mod " << render(p);
      if (s.good()) {
        unsigned sum = 0;
        for (auto d : s.type.degrees) sum += d;
        ASSERT_EQ(sum, static_cast<unsigned>(f.degree()));
      }
    }
  }
}

TEST(Splitting, DegreeOnePrimesMatchTrialDivision) {
  std::mt19937_64 rng(8);
  auto f3 = make_prime_field(3);
  for (int i = 0; i < 100; ++i) {
    YPoly f = random_ypoly(f3, rng, 6, 3);
    for (Elem c = 0; c < 3; ++c) {
      const Poly p(f3, {c, 1});
      const auto s = split_type(f, p, 0);
      // Reduce by evaluating every coefficient at T = -c.
      std::vector<Elem> red;
      for (const auto& a : f.coeffs()) red.push_back(a.eval(f3->neg(c)));
      while (!red.empty() && red.back() == 0) red.pop_back();
      if (red.size() < f.coeffs().size()) {
        ASSERT_EQ(s.defect, SideDefect::leading_coeff_vanishes);
        continue;
      }
      const Elem lead_inv = f3->inv(red.back());
      for (auto& e : red) e = f3->mul(e, lead_inv);
      const auto ref = oracle::trial_factor(*f3, red);
      bool repeated = false;
      std::vector<unsigned> degs;
      for (const auto& [fac, m] : ref) {
        repeated = repeated || m > 1;
        for (unsigned k = 0; k < m; ++k) degs.push_back(static_cast<unsigned>(fac.size() - 1));
      }
      std::sort(degs.begin(), degs.end());
      if (repeated) {
        ASSERT_EQ(s.defect, SideDefect::repeated_factor);
      } else {
        ASSERT_TRUE(s.good());
        ASSERT_EQ(s.type.degrees, degs);
        unsigned linear = 0;
        for (auto d : degs) linear += d == 1;
        ASSERT_EQ(linear, oracle::count_roots(Poly(f3, red)));
      }
    }
  }
}

TEST(Splitting, ReportRendering) {
  auto f3 = make_prime_field(3);
  YPoly f = parse_y_poly("y^2 + 2*T", f3), g = parse_y_poly("y^2 + 2*T + 2", f3);
  auto text = render(compare_split_types(f, g, Exhaustive{1}, 0, 1, "demo"));
  EXPECT_EQ(text,
            "# pair=demo primes=exhaustive(max_degree=1)\n"
            "T\t1\t-\t[1,1]\tbad:repeated_factor_f\n"
            "T + 1\t1\t[2]\t-\tbad:repeated_factor_g\n"
            "T + 2\t1\t[1,1]\t[2]\tUNEQUAL\n"
            "good=1 equal=0 unequal=1 bad=2 overall=refuted\n");
}

TEST(Splitting, PairTwoSmallPrimes) {
  auto pr = load_pair_file(std::string(FNEQ_PAIRS_DIR) + "/gl2_f4_deg15.pair");
  auto rep = compare_split_types(pr.f, pr.g, Exhaustive{3}, 0);
  EXPECT_TRUE(rep.consistent());
  EXPECT_EQ(rep.verdicts.size(), 5u);
}

TEST(PairFile, Parsing) {
  auto pf = parse_pair_file("# comment\np = 3\nf = y^2 + T\ng = y^2 + 2*T\ndescription = demo\n");
  EXPECT_EQ(pf.p, 3u);
  EXPECT_EQ(pf.f, "y^2 + T");
  EXPECT_EQ(pf.description, "demo");
  EXPECT_THROW(parse_pair_file("p = 3\nf = y\n"), InputError);
  EXPECT_THROW(parse_pair_file("p = 3\nf = y\ng = y\nh = 1\n"), InputError);
  EXPECT_THROW(parse_pair_file("p = x\nf = y\ng = y\n"), InputError);
  EXPECT_THROW(parse_pair_file("p = 3\nf y\n"), InputError);
  EXPECT_THROW(load_pair("p = 4\nf = y\ng = y\n"), InputError);
  EXPECT_THROW(load_pair_file("/nonexistent/file.pair"), InputError);
}

TEST(PairFile, ShippedFIsTheGeneratedTorsionPolynomial) {
  auto pr = pair8();
  DrinfeldModule rho(parse_twisted("tau^2 + T*tau + T", pr.field));
  EXPECT_EQ(pr.text.f, render(torsion_polynomial(rho, Poly::variable(pr.field), true)));
  auto pr2 = load_pair_file(std::string(FNEQ_PAIRS_DIR) + "/gl2_f4_deg15.pair");
  DrinfeldModule rho2(parse_twisted("tau^2 + tau + T", pr2.field));
  EXPECT_EQ(pr2.f, torsion_polynomial(rho2, parse_t_poly("T^2 + T + 1", pr2.field), true));
  EXPECT_EQ(pr2.g.degree(), 15);
}
