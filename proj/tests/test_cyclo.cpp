#include <doctest.h>

#include "heckefield/cyclo.hpp"
#include "heckefield/numutil.hpp"
#include "heckefield/subfield.hpp"
#include "support.hpp"

using namespace heckefield;

namespace {
CycElt zeta(long m, long k = 1) { return CycElt::root_of_unity(m, k); }

// independent reduction oracle: schoolbook division remainder by Phi_5
std::vector<long> mod_phi5(std::vector<long> v) {
  // Phi_5 = 1 + x + x^2 + x^3 + x^4
  while (v.size() > 4) {
    long lead = v.back();
    size_t top = v.size() - 1;
    v.pop_back();
    for (size_t i = top - 4; i < top; ++i) v[i] -= lead;
  }
  v.resize(4, 0);
  return v;
}
}  // namespace

TEST_SUITE_BEGIN("cyclo");

TEST_CASE("reduce lands in the canonical power basis") {
  // zeta_4^2 = -1
  std::vector<Rat> raw = {Rat(0), Rat(0), Rat(1)};
  CycElt a = CycElt::from_poly(4, raw);
  CHECK(a.coeffs() == std::vector<Rat>{Rat(-1), Rat(0)});

  // the full Phi_5 sum vanishes
  std::vector<Rat> ones(5, Rat(1));
  CHECK(CycElt::from_poly(5, ones).is_zero());

  // (zeta_8 + zeta_8^3)^2 expands to zeta^2 + 2 zeta^4 + zeta^6 = -2
  std::vector<Rat> sq = {Rat(0), Rat(0), Rat(1), Rat(0), Rat(2), Rat(0), Rat(1)};
  CHECK(CycElt::from_poly(8, sq).equals(CycElt::integer(-2)));
}

TEST_CASE("arithmetic embeds into the lcm modulus") {
  CHECK((zeta(3) * zeta(4)).equals(zeta(12, 7)));

  CycElt s5 = named_surd(Surd::Sqrt5);
  // oracle: schoolbook square of zeta - zeta^2 - zeta^3 + zeta^4 mod Phi_5
  std::vector<long> coeffs = {0, 1, -1, -1, 1};
  std::vector<long> conv(9, 0);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) conv[i + j] += coeffs[i] * coeffs[j];
  std::vector<long> reduced = mod_phi5(conv);
  CHECK(reduced == std::vector<long>{5, 0, 0, 0});
  CHECK((s5 * s5).equals(CycElt::integer(5)));

  CycElt mix = zeta(12, 5) + CycElt::rational(Rat(3, 7));
  CHECK((mix / mix).equals(CycElt::integer(1)));
  CHECK_THROWS_AS(mix / CycElt::integer(0), std::domain_error);
}

TEST_CASE("embedding is exponent scaling and round-trips") {
  CHECK(zeta(4).embedded(12).equals(zeta(12, 3)));
  CHECK(CycElt::integer(7).embedded(40).equals(CycElt::integer(7)));

  CycElt s5 = named_surd(Surd::Sqrt5).embedded(20);
  CHECK((s5 * s5).equals(CycElt::integer(5)));
  CHECK(s5.conductor() == 5);
  CHECK(s5.to_conductor().equals(named_surd(Surd::Sqrt5)));
  CHECK_THROWS_AS(zeta(8).embedded(12), std::invalid_argument);
}

TEST_CASE("named surds square to the advertised rationals") {
  CHECK((named_surd(Surd::Sqrt2) * named_surd(Surd::Sqrt2)).equals(CycElt::integer(2)));
  CHECK((named_surd(Surd::SqrtM2) * named_surd(Surd::SqrtM2)).equals(CycElt::integer(-2)));
  CHECK((named_surd(Surd::Sqrt5) * named_surd(Surd::Sqrt5)).equals(CycElt::integer(5)));
  CHECK((named_surd(Surd::SqrtM1) * named_surd(Surd::SqrtM1)).equals(CycElt::integer(-1)));
}

TEST_CASE("galois action and roots of unity") {
  CycElt s5 = named_surd(Surd::Sqrt5);
  CHECK(s5.galois(4).equals(s5));
  CHECK(s5.galois(2).equals(-s5));
  CHECK_THROWS_AS(zeta(8).galois(2), std::invalid_argument);

  auto r = (-zeta(12, 5)).as_root_of_unity();
  REQUIRE(r.has_value());
  CHECK(r->first == 12);
  CHECK(r->second == 11);
  CHECK(!s5.as_root_of_unity().has_value());
  CHECK(CycElt::integer(1).as_root_of_unity() == std::pair<long, long>{1, 0});
}

TEST_CASE("fixing groups realize the Galois correspondence") {
  std::vector<CycElt> gens = {zeta(12)};
  Subfield full = Subfield::fixing_group(gens, 12);
  CHECK(full.fixing() == std::vector<long>{1});
  CHECK(full.degree() == 4);

  // sigma_t(sqrt5) = sqrt5 exactly for t in {1, 4}: direct check
  CycElt s5 = named_surd(Surd::Sqrt5);
  std::vector<long> stab;
  for (long t : unit_group(5))
    if (s5.galois(t).equals(s5)) stab.push_back(t);
  CHECK(stab == std::vector<long>{1, 4});
  std::vector<CycElt> sg = {s5};
  CHECK(Subfield::fixing_group(sg, 5).fixing() == stab);

  Subfield rationals = Subfield::fixing_group({}, 12);
  CHECK(rationals.degree() == 1);
  CHECK(rationals.equals(Subfield::rationals()));
}

TEST_CASE("subfield equality normalizes to the conductor") {
  CHECK(Subfield::cyclotomic(3).equals(Subfield::cyclotomic(6)));

  Subfield sm2_z3 = Subfield::generated_by(named_surd(Surd::SqrtM2))
                        .join(Subfield::cyclotomic(3));
  CHECK(sm2_z3.degree() == 4);
  CHECK(Subfield::cyclotomic(24).degree() == 8);
  CHECK(!sm2_z3.equals(Subfield::cyclotomic(24)));

  Subfield z4_s5 = Subfield::cyclotomic(4).join(Subfield::generated_by(named_surd(Surd::Sqrt5)));
  CHECK(z4_s5.degree() == 4);
  CHECK(!z4_s5.equals(Subfield::cyclotomic(20)));
  CHECK(Subfield::cyclotomic(20).contains(z4_s5));
}

TEST_CASE("min_poly produces the orbit-product polynomial") {
  // orbit sum zeta_5 + zeta_5^4 has conjugate zeta_5^2 + zeta_5^3; the
  // product (x - a)(x - a') expands to x^2 + x - 1
  Subfield q_sqrt5 = Subfield::generated_by(named_surd(Surd::Sqrt5));
  CHECK(q_sqrt5.min_poly() == std::vector<Int>{Int(-1), Int(1), Int(1)});

  CHECK(Subfield::cyclotomic(8).min_poly() ==
        std::vector<Int>{Int(1), Int(0), Int(0), Int(0), Int(1)});

  Subfield rats = Subfield::fixing_group({}, 7);
  auto poly = rats.min_poly();
  CHECK(poly.size() == 2);  // degree 1
}

TEST_CASE("splitting law from the fixing group") {
  CHECK(Subfield::cyclotomic(5).splits_completely(11));
  CHECK(!Subfield::cyclotomic(5).splits_completely(7));
  CHECK(Subfield::generated_by(named_surd(Surd::Sqrt5)).splits_completely(19));
  CHECK(!Subfield::cyclotomic(8).splits_completely(5));
  CHECK_THROWS_AS(Subfield::cyclotomic(8).splits_completely(2), std::domain_error);
}

TEST_CASE("serialization round-trips") {
  CycElt x = zeta(12, 7) + CycElt::rational(Rat(-3, 2));
  CHECK(CycElt::from_json(x.to_json()).equals(x));
  Subfield f = Subfield::cyclotomic(4).join(Subfield::generated_by(named_surd(Surd::Sqrt5)));
  Subfield g = Subfield::from_json(f.to_json());
  CHECK(f.equals(g));
}

TEST_CASE("property: canonical form ignores multiples of Phi_M") {
  CHECK(testsupport::canonicality_failures(300) == 0);
}

TEST_CASE("property: field axioms on random samples") {
  CHECK(testsupport::field_axiom_failures(200) == 0);
}

TEST_CASE("property: Galois correspondence is antitone") {
  CHECK(testsupport::antitone_failures(300) == 0);
}

TEST_CASE("property: min_poly degree and stabilizer") {
  CHECK(testsupport::min_poly_failures(40) == 0);
}

TEST_CASE("property: splitting law matches the root-count oracle") {
  CHECK(testsupport::splitting_oracle_failures(300) == 0);
}

TEST_SUITE_END();
