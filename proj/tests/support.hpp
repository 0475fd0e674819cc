#pragma once

#include <random>
#include <string>
#include <vector>

#include "heckefield/numutil.hpp"
#include "heckefield/subfield.hpp"

// Randomized property suites shared between the unit tests and the
// acceptance run.  Each runner returns the number of failing cases (0
// expected); the RNG is seeded so runs are reproducible.

namespace heckefield::testsupport {

inline std::mt19937_64 make_rng(uint64_t seed = 0x5eedc0ffee) { return std::mt19937_64(seed); }

inline Rat random_rat(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-12, 12), den(1, 9);
  Rat q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

// naive schoolbook product, independent of the CycElt multiplication path
inline std::vector<Rat> naive_poly_mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  std::vector<Rat> c(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

// reduce(M, P) must not see multiples of Phi_M: reduce(M, P + Phi_M * Q) is
// the same canonical vector.
inline long canonicality_failures(long cases) {
  auto rng = make_rng(11);
  std::uniform_int_distribution<long> mod_dist(1, 40), deg_dist(0, 12), qdeg_dist(0, 5);
  long bad = 0;
  for (long it = 0; it < cases; ++it) {
    long m = mod_dist(rng);
    std::vector<Rat> p(deg_dist(rng) + 1), q(qdeg_dist(rng) + 1);
    for (auto& c : p) c = random_rat(rng);
    for (auto& c : q) c = random_rat(rng);
    auto phi = cyclotomic_polynomial(m);
    std::vector<Rat> phi_q(phi.size(), Rat(0));
    for (size_t i = 0; i < phi.size(); ++i) phi_q[i] = Rat(phi[i]);
    auto shifted = naive_poly_mul(phi_q, q);
    std::vector<Rat> sum(std::max(p.size(), shifted.size()), Rat(0));
    for (size_t i = 0; i < p.size(); ++i) sum[i] += p[i];
    for (size_t i = 0; i < shifted.size(); ++i) sum[i] += shifted[i];
    if (!CycElt::from_poly(m, p).equals(CycElt::from_poly(m, sum))) ++bad;
  }
  return bad;
}

inline long field_axiom_failures(long cases) {
  auto rng = make_rng(12);
  std::uniform_int_distribution<long> mod_dist(1, 24), deg_dist(0, 6);
  auto random_elt = [&](long m) {
    std::vector<Rat> p(deg_dist(rng) + 1);
    for (auto& c : p) c = random_rat(rng);
    return CycElt::from_poly(m, p);
  };
  long bad = 0;
  for (long it = 0; it < cases; ++it) {
    CycElt a = random_elt(mod_dist(rng));
    CycElt b = random_elt(mod_dist(rng));
    CycElt c = random_elt(mod_dist(rng));
    if (!((a + b) + c).equals(a + (b + c))) ++bad;
    if (!(a * (b + c)).equals(a * b + a * c)) ++bad;
    if (!a.is_zero() && !(a / a).equals(CycElt::integer(1))) ++bad;
    if (!(a * b).equals(b * a)) ++bad;
  }
  return bad;
}

// Galois correspondence is antitone, and degree * |H| = phi(M).
inline long antitone_failures(long cases) {
  auto rng = make_rng(13);
  const std::vector<long> moduli = {5, 7, 8, 9, 12, 15, 16, 20, 21, 24, 36, 40};
  std::uniform_int_distribution<size_t> mi(0, moduli.size() - 1);
  std::uniform_int_distribution<long> deg_dist(0, 5), count_dist(0, 3);
  auto rng_elt = [&](long m) {
    std::vector<Rat> p(deg_dist(rng) + 1);
    for (auto& c : p) c = random_rat(rng);
    return CycElt::from_poly(m, p);
  };
  long bad = 0;
  for (long it = 0; it < cases; ++it) {
    long m = moduli[mi(rng)];
    std::vector<CycElt> small, big;
    for (long i = 0, n = count_dist(rng); i < n; ++i) small.push_back(rng_elt(m));
    big = small;
    for (long i = 0, n = count_dist(rng) + 1; i < n; ++i) big.push_back(rng_elt(m));
    Subfield fs = Subfield::fixing_group(small, m);
    Subfield fb = Subfield::fixing_group(big, m);
    // more generators -> smaller fixing group
    if (!std::includes(fs.fixing().begin(), fs.fixing().end(), fb.fixing().begin(),
                       fb.fixing().end()))
      ++bad;
    if (fs.degree() * static_cast<long>(fs.fixing().size()) != totient(m)) ++bad;
    if (fb.degree() * static_cast<long>(fb.fixing().size()) != totient(m)) ++bad;
  }
  return bad;
}

inline std::vector<Subfield> random_subfields(long count, std::mt19937_64& rng) {
  const std::vector<long> moduli = {5, 7, 8, 11, 12, 13, 15, 16, 20, 21, 24, 28, 36};
  std::uniform_int_distribution<size_t> mi(0, moduli.size() - 1);
  std::vector<Subfield> out;
  while (static_cast<long>(out.size()) < count) {
    long m = moduli[mi(rng)];
    auto units = unit_group(m);
    std::uniform_int_distribution<size_t> ui(0, units.size() - 1);
    std::vector<long> gens;
    std::uniform_int_distribution<int> ngen(0, 2);
    for (int i = 0, n = ngen(rng); i < n; ++i) gens.push_back(units[ui(rng)]);
    out.push_back(Subfield::from_fixing_group(m, subgroup_closure(m, gens)));
  }
  return out;
}

// splits_completely against the finite-field root-count oracle.
inline long splitting_oracle_failures(long cases) {
  auto rng = make_rng(14);
  auto primes = primes_below(1000);
  std::uniform_int_distribution<size_t> pi(0, primes.size() - 1);
  long done = 0, bad = 0;
  auto fields = random_subfields(60, rng);
  std::vector<std::vector<Int>> polys;
  polys.reserve(fields.size());
  for (const auto& f : fields) polys.push_back(f.min_poly());
  size_t fi = 0;
  while (done < cases) {
    const Subfield& f = fields[fi % fields.size()];
    const auto& poly = polys[fi % fields.size()];
    ++fi;
    long q = primes[pi(rng)];
    if (f.conductor() % q == 0) continue;
    ++done;
    bool split = f.splits_completely(q);
    bool oracle = count_roots_mod_q(poly, q) == f.degree();
    if (split != oracle) ++bad;
  }
  return bad;
}

// primitive_element has stabilizer exactly H, and min_poly vanishes on it
// with the right degree.
inline long min_poly_failures(long cases) {
  auto rng = make_rng(15);
  auto fields = random_subfields(cases, rng);
  long bad = 0;
  for (const auto& f : fields) {
    CycElt gen = f.primitive_element();
    long m = f.conductor();
    for (long t : unit_group(m)) {
      bool fixes = gen.galois(m == 1 ? 1 : t).equals(gen);
      if (fixes != sorted_contains(f.fixing_at_conductor(), t)) ++bad;
    }
    auto poly = f.min_poly();
    if (static_cast<long>(poly.size()) - 1 != f.degree()) ++bad;
    // evaluate at the generator
    CycElt acc = CycElt::integer(0).embedded(m);
    CycElt power = CycElt::integer(1).embedded(m);
    for (const auto& c : poly) {
      acc = acc + CycElt::rational(Rat(c)) * power;
      power = power * gen;
    }
    if (!acc.is_zero()) ++bad;
  }
  return bad;
}

}  // namespace heckefield::testsupport
