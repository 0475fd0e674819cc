#include "heckefield/subfield.hpp"

#include <algorithm>
#include <stdexcept>

#include "heckefield/numutil.hpp"

namespace heckefield {

Subfield::Subfield(long ambient, std::vector<long> fixing)
    : ambient_(ambient), fixing_(std::move(fixing)) {
  std::sort(fixing_.begin(), fixing_.end());
  fixing_.erase(std::unique(fixing_.begin(), fixing_.end()), fixing_.end());
  if (fixing_.empty() || !sorted_contains(fixing_, 1 % ambient_))
    throw std::invalid_argument("Subfield: fixing group must contain the identity");
  for (long a : fixing_) {
    if (ambient_ > 1 && gcd64(a, ambient_) != 1)
      throw std::invalid_argument("Subfield: residue not a unit");
    for (long b : fixing_) {
      long prod = ambient_ == 1 ? 0 : mulmod(a, b, ambient_);
      if (!sorted_contains(fixing_, prod))
        throw std::invalid_argument("Subfield: residues not closed under multiplication");
    }
  }
  conductor_ = subgroup_conductor(ambient_, fixing_);
  fixing_at_conductor_ = reduce_subgroup(ambient_, fixing_, conductor_);
}

Subfield Subfield::rationals() { return Subfield(1, {0}); }

Subfield Subfield::cyclotomic(long n) {
  if (n < 1) throw std::invalid_argument("cyclotomic: modulus must be >= 1");
  return Subfield(n, {1 % n});
}

Subfield Subfield::from_fixing_group(long ambient, std::vector<long> fixing) {
  return Subfield(ambient, std::move(fixing));
}

Subfield Subfield::fixing_group(std::span<const CycElt> elts, long ambient) {
  if (ambient < 1) throw std::invalid_argument("fixing_group: bad ambient modulus");
  // Reduce every generator to its conductor once; the Galois action of
  // t in (Z/ambient)^x restricted to Q(zeta_c) is sigma_{t mod c}, so all
  // per-element tests happen in the small field.
  std::vector<CycElt> reduced;
  for (const auto& e : elts) {
    CycElt r = e.to_conductor();
    if (ambient % r.modulus() != 0)
      throw std::invalid_argument("fixing_group: element does not embed into the ambient field");
    if (!r.is_rational()) reduced.push_back(std::move(r));
  }
  std::vector<long> fix;
  for (long t : unit_group(ambient)) {
    bool ok = true;
    for (const auto& r : reduced) {
      if (!r.galois(t % r.modulus()).equals(r)) { ok = false; break; }
    }
    if (ok) fix.push_back(t);
  }
  return Subfield(ambient, std::move(fix));
}

Subfield Subfield::generated_by(const CycElt& x) {
  CycElt r = x.to_conductor();
  return fixing_group(std::span<const CycElt>(&r, 1), r.modulus());
}

long Subfield::degree() const {
  return totient(conductor_) / static_cast<long>(fixing_at_conductor_.size());
}

bool Subfield::equals(const Subfield& other) const {
  return conductor_ == other.conductor_ && fixing_at_conductor_ == other.fixing_at_conductor_;
}

bool Subfield::contains(const Subfield& other) const {
  long l = lcm64(conductor_, other.conductor_);
  auto mine = lift_subgroup(conductor_, fixing_at_conductor_, l);
  auto theirs = lift_subgroup(other.conductor_, other.fixing_at_conductor_, l);
  // F >= G exactly when Gal fixing F is inside Gal fixing G
  return std::includes(theirs.begin(), theirs.end(), mine.begin(), mine.end());
}

bool Subfield::contains(const CycElt& x) const {
  CycElt r = x.to_conductor();
  long l = lcm64(conductor_, r.modulus());
  for (long t : lift_subgroup(conductor_, fixing_at_conductor_, l))
    if (!r.galois(t % r.modulus()).equals(r)) return false;
  return true;
}

Subfield Subfield::join(const Subfield& other) const {
  long l = lcm64(conductor_, other.conductor_);
  auto mine = lift_subgroup(conductor_, fixing_at_conductor_, l);
  auto theirs = lift_subgroup(other.conductor_, other.fixing_at_conductor_, l);
  std::vector<long> inter;
  std::set_intersection(mine.begin(), mine.end(), theirs.begin(), theirs.end(),
                        std::back_inserter(inter));
  return Subfield(l, std::move(inter));
}

CycElt Subfield::primitive_element() const {
  long m = conductor_;
  const auto& H = fixing_at_conductor_;
  auto units = unit_group(m);

  auto orbit_sum = [&](const CycElt& gen) {
    CycElt s = CycElt::rational(Rat(0)).embedded(m);
    for (long h : H) s = s + gen.galois(m == 1 ? 1 : h);
    return s;
  };
  auto stabilizer_is_H = [&](const CycElt& x) {
    for (long t : units) {
      bool fixes = x.galois(m == 1 ? 1 : t).equals(x);
      if (fixes != sorted_contains(H, t)) return false;
    }
    return true;
  };

  CycElt gen = orbit_sum(CycElt::root_of_unity(m, 1));
  for (long k = 2; !stabilizer_is_H(gen); ++k) {
    if (k > 4 * m + 4)
      throw std::logic_error("primitive_element: generator search did not terminate");
    gen = orbit_sum(CycElt::root_of_unity(m, 1) + CycElt::root_of_unity(m, k % m));
  }
  return gen;
}

std::vector<Int> Subfield::min_poly() const {
  long m = conductor_;
  const auto& H = fixing_at_conductor_;
  auto units = unit_group(m);
  CycElt gen = primitive_element();

  // Galois-orbit product over one representative per coset of H.
  std::vector<long> reps;
  std::vector<char> seen(m + 1, 0);
  for (long t : units) {
    if (seen[t]) continue;
    reps.push_back(t);
    for (long h : H) seen[m == 1 ? 0 : mulmod(t, h, m)] = 1;
  }

  std::vector<CycElt> poly = {CycElt::integer(1).embedded(m)};
  for (long t : reps) {
    CycElt root = gen.galois(m == 1 ? 1 : t);
    // multiply by (x - root)
    std::vector<CycElt> next(poly.size() + 1, CycElt::rational(Rat(0)).embedded(m));
    for (size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] = next[i + 1] + poly[i];
      next[i] = next[i] - root * poly[i];
    }
    poly = std::move(next);
  }

  std::vector<Int> out;
  out.reserve(poly.size());
  for (const auto& c : poly) {
    if (!c.is_rational())
      throw std::logic_error("min_poly: orbit product has irrational coefficient");
    Rat v = c.rational_value();
    if (v.get_den() != 1)
      throw std::logic_error("min_poly: orbit product has non-integral coefficient");
    out.push_back(v.get_num());
  }
  return out;
}

bool Subfield::splits_completely(long q) const {
  if (conductor_ > 1 && q % conductor_ == 0)
    throw std::domain_error("splits_completely: prime divides the conductor");
  return sorted_contains(fixing_at_conductor_, q % conductor_);
}

std::string Subfield::describe() const {
  if (degree() == 1) return "Q";
  if (fixing_at_conductor_.size() == 1) return "Q(zeta_" + std::to_string(conductor_) + ")";
  if (degree() == 2) {
    // complete the square on the minimal polynomial x^2 + bx + c
    auto poly = min_poly();
    Int b = poly[1], c = poly[0];
    Int rest = b * b - 4 * c;
    for (Int f = 2; f * f <= abs(rest); ++f)
      while (rest % (f * f) == 0) rest /= f * f;
    return "Q(sqrt(" + rest.get_str() + "))";
  }
  return "degree-" + std::to_string(degree()) + " field of conductor " +
         std::to_string(conductor_);
}

nlohmann::json Subfield::to_json() const {
  return {{"ambient", ambient_}, {"fixing_group", fixing_}};
}

Subfield Subfield::from_json(const nlohmann::json& j) {
  return Subfield(j.at("ambient").get<long>(), j.at("fixing_group").get<std::vector<long>>());
}

long count_roots_mod_q(const std::vector<Int>& poly, long q) {
  if (q < 2) throw std::invalid_argument("count_roots_mod_q: q must be prime");
  // reduce the polynomial mod q
  std::vector<long> f;
  f.reserve(poly.size());
  for (const auto& c : poly) {
    Int r = c % q;
    long v = static_cast<long>(r.get_si());
    if (v < 0) v += q;
    f.push_back(v);
  }
  while (!f.empty() && f.back() == 0) f.pop_back();
  if (f.size() <= 1) return 0;

  auto polymod = [&](std::vector<long> a) {
    // a mod f over F_q (f has invertible leading coefficient)
    long lead_inv = invmod(f.back(), q);
    while (!a.empty() && a.back() == 0) a.pop_back();
    while (a.size() >= f.size()) {
      long s = mulmod(a.back(), lead_inv, q);
      size_t shift = a.size() - f.size();
      for (size_t i = 0; i < f.size(); ++i)
        a[shift + i] = ((a[shift + i] - mulmod(s, f[i], q)) % q + q) % q;
      while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a;
  };
  auto mulm = [&](const std::vector<long>& a, const std::vector<long>& b) {
    if (a.empty() || b.empty()) return std::vector<long>{};
    std::vector<long> c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (size_t j = 0; j < b.size(); ++j)
        c[i + j] = (c[i + j] + mulmod(a[i], b[j], q)) % q;
    }
    return polymod(std::move(c));
  };

  // x^q mod f
  std::vector<long> result = {1}, base = polymod({0, 1});
  long e = q;
  while (e > 0) {
    if (e & 1) result = mulm(result, base);
    base = mulm(base, base);
    e >>= 1;
  }
  // x^q - x
  std::vector<long> g = result;
  if (g.size() < 2) g.resize(2, 0);
  g[1] = ((g[1] - 1) % q + q) % q;
  while (!g.empty() && g.back() == 0) g.pop_back();

  // gcd(f, x^q - x): its degree counts distinct roots in F_q
  std::vector<long> a = f, b = g;
  while (!b.empty()) {
    // a mod b
    long lead_inv = invmod(b.back(), q);
    while (a.size() >= b.size() && !a.empty()) {
      long s = mulmod(a.back(), lead_inv, q);
      size_t shift = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i)
        a[shift + i] = ((a[shift + i] - mulmod(s, b[i], q)) % q + q) % q;
      while (!a.empty() && a.back() == 0) a.pop_back();
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : static_cast<long>(a.size()) - 1;
}

}  // namespace heckefield
