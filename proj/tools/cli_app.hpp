#pragma once

#include <CLI11.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fneq/fneq.hpp"

namespace fneq::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kInputError = 2 };

namespace detail {

/// F_p, or F_p[x]/(M) when an extension modulus in x is supplied.
inline FieldPtr field_from_flags(std::uint64_t p, const std::string& ext_modulus) {
  FieldPtr fp = make_prime_field(p);
  if (ext_modulus.empty()) return fp;
  return make_extension_field(fp, parse_t_poly(ext_modulus, fp, "x").coeffs());
}

/// An element of F_q written as a polynomial in x, e.g. "1" or "x + 1".
inline Elem element_from_text(const FieldPtr& field, const std::string& text) {
  FieldPtr fp = make_prime_field(field->characteristic());
  Poly v = parse_t_poly(text, fp, "x");
  if (!field->is_prime_field()) {
    v = v % Poly(fp, field->modulus());
  } else if (v.degree() > 0) {
    throw InputError("x is not defined over a prime field");
  }
  std::vector<Elem> digits(field->degree(), 0);
  for (std::size_t i = 0; i < v.coeffs().size(); ++i) digits[i] = v.coeffs()[i];
  return field->is_prime_field() ? digits[0] : field->pack(digits);
}

inline std::string expression_argument(const std::string& arg) {
  if (!arg.empty() && arg.front() == '@') return read_text_file(arg.substr(1));
  return arg;
}

}  // namespace detail

struct TorsionArgs {
  std::uint64_t p = 0;
  std::string ext_modulus;
  std::string rho;
  std::string a;
  bool strip = false;
};

inline int cmd_torsion(const TorsionArgs& args, std::ostream& out) {
  const FieldPtr field = detail::field_from_flags(args.p, args.ext_modulus);
  const DrinfeldModule rho(parse_twisted(args.rho, field));
  const Poly a = parse_t_poly(args.a, field);
  out << render(torsion_polynomial(rho, a, args.strip)) << '\n';
  return kOk;
}

struct FactorArgs {
  std::uint64_t p = 0;
  std::string prime;
  std::string poly;
  std::uint64_t seed = 0;
};

inline int cmd_factor(const FactorArgs& args, std::ostream& out) {
  const FieldPtr field = make_prime_field(args.p);
  const ResidueField residue(parse_t_poly(args.prime, field));
  const YPoly f = parse_y_poly(detail::expression_argument(args.poly), field);
  const Poly reduced = reduce_mod_prime(f, residue);
  out << "prime\t" << render(residue.prime()) << '\n';
  out << "reduction\t" << render_residue(reduced, residue) << '\n';
  if (reduced.degree() < 1) {
    out << "constant reduction, nothing to factor\n";
    return kOk;
  }
  const Factorization fz = factor(reduced, args.seed);
  out << "unit\t" << render_residue(Poly::constant(residue.field(), fz.unit), residue) << '\n';
  for (const auto& fa : fz.factors) {
    out << "factor\t" << render_residue(fa.poly, residue) << "\tdegree=" << fa.poly.degree()
        << "\tmultiplicity=" << fa.multiplicity << '\n';
  }
  out << "degrees\t" << render(SplitType{fz.degrees()}) << '\n';
  return kOk;
}

struct SplitCheckArgs {
  std::string pair;
  std::optional<unsigned> max_degree;
  std::optional<unsigned> samples;
  unsigned degree = 1;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

inline int cmd_split_check(const SplitCheckArgs& args, std::ostream& out) {
  const LoadedPair pair = load_pair_file(args.pair);
  PrimeSelection sel;
  if (args.max_degree && args.samples) throw InputError("--max-degree and --samples are mutually exclusive");
  if (args.samples) {
    sel = Sampled{*args.samples, args.degree, args.seed};
  } else {
    sel = Exhaustive{args.max_degree.value_or(1)};
  }
  const auto id = args.pair.substr(args.pair.find_last_of('/') + 1);
  const EquivalenceReport report = compare_split_types(pair.f, pair.g, sel, args.seed, args.jobs, id);
  out << render(report);
  return report.consistent() ? kOk : kNegative;
}

struct GassmannArgs {
  std::uint64_t p = 0;
  std::string ext_modulus;
  unsigned n = 2;
  std::string construction = "stabilizers";
  std::string scalar_subgroup = "1";
  std::size_t cap = MatGroup::kDefaultCap;
};

inline int cmd_gassmann(const GassmannArgs& args, std::ostream& out) {
  const FieldPtr field = detail::field_from_flags(args.p, args.ext_modulus);
  const Elem gen = detail::element_from_text(field, args.scalar_subgroup);
  std::optional<MatGroup> g;
  std::optional<std::pair<Subgroup, Subgroup>> pair;
  if (args.construction == "example1") {
    if (gen != 1) throw InputError("example1 uses the full group GL_2(F_p)");
    if (args.n != 2) throw InputError("example1 needs --n 2");
    if (!field->is_prime_field() || field->characteristic() <= 2) throw InputError("Example 1 needs F_p with p > 2");
    g = MatGroup::general_linear(field, 2, 1, args.cap);
    pair = example1_subgroups(*g);
  } else if (args.construction == "stabilizers") {
    g = MatGroup::general_linear(field, args.n, gen, args.cap);
    pair = stabilizer_pair(*g);
  } else {
    throw InputError("unknown construction '" + args.construction + "'");
  }
  const GassmannCertificate cert = verify_gassmann(*g, pair->first, pair->second);
  out << render(*g, cert);
  return cert.is_nontrivial ? kOk : kNegative;
}

struct PrimesArgs {
  std::uint64_t p = 0;
  std::string ext_modulus;
  unsigned degree = 1;
};

inline int cmd_primes(const PrimesArgs& args, std::ostream& out) {
  const FieldPtr field = detail::field_from_flags(args.p, args.ext_modulus);
  const auto primes = monic_irreducibles(field, args.degree);
  for (const auto& pr : primes) out << render(pr) << '\n';
  out << "count=" << primes.size() << '\n';
  return kOk;
}

/// Parses argv and dispatches. Data goes to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Drinfeld-module torsion fields and arithmetic equivalence checks", "fneq"};
  app.require_subcommand(1);

  TorsionArgs torsion;
  auto* c_torsion = app.add_subcommand("torsion", "Torsion polynomial of a Drinfeld module");
  c_torsion->add_option("--p", torsion.p, "Characteristic")->required();
  c_torsion->add_option("--ext-modulus", torsion.ext_modulus, "Modulus in x for F_q = F_p[x]/(M)");
  c_torsion->add_option("--rho", torsion.rho, "Image of T, e.g. \"tau^2 + T*tau + T\"")->required();
  c_torsion->add_option("--a", torsion.a, "Element a of F_q[T]")->required();
  c_torsion->add_flag("--strip", torsion.strip, "Divide out the root y = 0");

  FactorArgs fac;
  auto* c_factor = app.add_subcommand("factor", "Factor a y-polynomial modulo a prime of F_p[T]");
  c_factor->add_option("--p", fac.p, "Characteristic")->required();
  c_factor->add_option("--prime", fac.prime, "Monic irreducible P in T")->required();
  c_factor->add_option("--poly", fac.poly, "y-polynomial, or @file")->required();
  c_factor->add_option("--seed", fac.seed, "Seed for equal-degree splitting");

  SplitCheckArgs split;
  unsigned max_degree = 0, samples = 0;
  auto* c_split = app.add_subcommand("split-check", "Compare split types of a pair across primes");
  c_split->add_option("--pair", split.pair, "Pair file")->required();
  auto* o_max = c_split->add_option("--max-degree", max_degree, "All primes up to this degree");
  auto* o_samples = c_split->add_option("--samples", samples, "Number of random primes");
  o_max->excludes(o_samples);
  c_split->add_option("--degree", split.degree, "Degree of sampled primes");
  c_split->add_option("--seed", split.seed, "Seed");
  c_split->add_option("--jobs", split.jobs, "Worker threads; output is independent of this");

  GassmannArgs gas;
  auto* c_gas = app.add_subcommand("gassmann", "Certify a Gassmann triple in GL_n(F_q)/S");
  c_gas->add_option("--p", gas.p, "Characteristic")->required();
  c_gas->add_option("--ext-modulus", gas.ext_modulus, "Modulus in x for F_q = F_p[x]/(M)");
  c_gas->add_option("--n", gas.n, "Dimension");
  c_gas->add_option("--construction", gas.construction, "example1 | stabilizers")
      ->check(CLI::IsMember({"example1", "stabilizers"}));
  c_gas->add_option("--scalar-subgroup", gas.scalar_subgroup, "Generator of S as a polynomial in x, or 1");
  c_gas->add_option("--cap", gas.cap, "Enumeration cap");

  PrimesArgs primes;
  auto* c_primes = app.add_subcommand("primes", "List monic irreducibles of a given degree");
  c_primes->add_option("--p", primes.p, "Characteristic")->required();
  c_primes->add_option("--ext-modulus", primes.ext_modulus, "Modulus in x for F_q = F_p[x]/(M)");
  c_primes->add_option("--degree", primes.degree, "Degree")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (*c_torsion) return cmd_torsion(torsion, out);
    if (*c_factor) return cmd_factor(fac, out);
    if (*c_split) {
      if (o_max->count()) split.max_degree = max_degree;
      if (o_samples->count()) split.samples = samples;
      return cmd_split_check(split, out);
    }
    if (*c_gas) return cmd_gassmann(gas, out);
    if (*c_primes) return cmd_primes(primes, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace fneq::cli
