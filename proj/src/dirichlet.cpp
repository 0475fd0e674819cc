#include "heckefield/dirichlet.hpp"

#include <stdexcept>

#include "heckefield/numutil.hpp"

namespace heckefield {

namespace {

// Conrey generator for an odd prime power: the smallest primitive root
// mod p that stays primitive mod p^2 (then it is primitive mod every p^e).
long conrey_generator(long p, long pe) {
  long g = primitive_root(p);
  if (pe > p && mult_order(g, p * p) != totient(p * p)) g += p;
  return g;
}

}  // namespace

ConreyChar::ConreyChar(long modulus, long conrey_index)
    : modulus_(modulus), index_(((conrey_index % modulus) + modulus) % modulus) {
  if (modulus < 1) throw std::invalid_argument("ConreyChar: modulus must be positive");
  if (modulus_ == 1) index_ = 0;  // principal character mod 1
  if (modulus_ > 1 && gcd64(index_, modulus_) != 1)
    throw std::invalid_argument("ConreyChar: index not coprime to the modulus");

  for (auto [p, e] : factorize(modulus_)) {
    long pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    if (p == 2) {
      if (e == 1) continue;  // (Z/2)^x is trivial
      TwoComponent tc;
      tc.pe = pe;
      tc.eps.assign(pe, -1);
      tc.eta.assign(pe, -1);
      if (e == 2) {
        tc.eta_order = 1;
        tc.eps[1] = 0;
        tc.eps[3] = 1;
        tc.eta[1] = tc.eta[3] = 0;
      } else {
        tc.eta_order = pe / 4;
        long x = 1;
        for (long k = 0; k < tc.eta_order; ++k) {
          tc.eps[x] = 0;
          tc.eta[x] = k;
          tc.eps[pe - x] = 1;
          tc.eta[pe - x] = k;
          x = mulmod(x, 5, pe);
        }
      }
      tc.eps_index = tc.eps[index_ % pe];
      tc.eta_index = tc.eta[index_ % pe];
      two_ = std::move(tc);
      has_two_ = true;
    } else {
      OddComponent oc;
      oc.pe = pe;
      oc.phi = totient(pe);
      oc.gen = conrey_generator(p, pe);
      oc.dlog.assign(pe, -1);
      long x = 1;
      for (long k = 0; k < oc.phi; ++k) {
        oc.dlog[x] = k;
        x = mulmod(x, oc.gen, pe);
      }
      oc.index_dlog = oc.dlog[index_ % pe];
      odd_.push_back(std::move(oc));
    }
  }

  // order = lcm of the value orders on a generating set
  order_ = 1;
  for (const auto& oc : odd_)
    order_ = lcm64(order_, oc.phi / gcd64(oc.phi, oc.index_dlog == 0 ? oc.phi : oc.index_dlog));
  if (has_two_) {
    if (two_.eps_index == 1) order_ = lcm64(order_, 2);
    if (two_.eta_index != 0)
      order_ = lcm64(order_, two_.eta_order / gcd64(two_.eta_order, two_.eta_index));
  }

  parity_ = modulus_ <= 2 ? 1 : (value_fraction(modulus_ - 1).first == 0 ? 1 : -1);

  // conductor: smallest divisor through which the character factors
  conductor_ = modulus_;
  for (long m : divisors(modulus_)) {
    bool factors = true;
    for (long t : unit_group(modulus_)) {
      if (t % m == 1 % m && value_fraction(t).first != 0) { factors = false; break; }
    }
    if (factors) { conductor_ = m; break; }
  }
}

std::pair<long, long> ConreyChar::value_fraction(long x) const {
  x = ((x % modulus_) + modulus_) % modulus_;
  if (modulus_ > 1 && gcd64(x, modulus_) != 1)
    throw std::domain_error("character value at a non-unit argument");
  // accumulate num/den over the CRT components
  long num = 0, den = 1;
  auto accumulate = [&](long n, long d) {
    long l = lcm64(den, d);
    num = num * (l / den) + n * (l / d);
    den = l;
    num %= den;
    if (num < 0) num += den;
  };
  for (const auto& oc : odd_) {
    long b = oc.dlog[x % oc.pe];
    accumulate(mulmod(oc.index_dlog % oc.phi, b, oc.phi), oc.phi);
  }
  if (has_two_) {
    long e = two_.eps[x % two_.pe];
    long h = two_.eta[x % two_.pe];
    accumulate((two_.eps_index * e) % 2, 2);
    if (two_.eta_order > 1)
      accumulate(mulmod(two_.eta_index, h, two_.eta_order), two_.eta_order);
  }
  long g = gcd64(num, den);
  if (g == 0) return {0, 1};
  return {num / g, den / g};
}

long ConreyChar::value_exponent(long x) const {
  auto [num, den] = value_fraction(x);
  // rewrite over the full order d: chi(x) = zeta_d^(num * d / den)
  return num * (order_ / den) % order_;
}

CycElt ConreyChar::value(long x) const {
  return CycElt::root_of_unity(order_, value_exponent(x));
}

long ConreyChar::value_order(long x) const {
  auto [num, den] = value_fraction(x);
  (void)num;
  return den;
}

bool ConreyChar::membership_q(long m, long p) const {
  return value_order(p) % m == 0;
}

Rat ConreyChar::q_set_density(long m) const {
  long total = 0, good = 0;
  for (long t : unit_group(modulus_)) {
    ++total;
    if (value_order(t) % m == 0) ++good;
  }
  Rat d(good, total);
  d.canonicalize();
  return d;
}

std::string ConreyChar::label() const {
  return std::to_string(modulus_) + "." + std::to_string(modulus_ == 1 ? 1 : index_);
}

ConreyChar ConreyChar::parse_label(const std::string& label) {
  auto dot = label.find('.');
  if (dot == std::string::npos)
    throw std::invalid_argument("Conrey label must look like \"N.n\": " + label);
  long n = std::stol(label.substr(0, dot));
  long i = std::stol(label.substr(dot + 1));
  return ConreyChar(n, i);
}

ConreyChar ConreyChar::of_order(long d) {
  if (d < 1) throw std::invalid_argument("of_order: order must be positive");
  if (d == 1) return ConreyChar(1, 1);
  for (long p = d + 1; p < 200 * d + 200; p += d) {
    if (!is_prime(p)) continue;
    long g = primitive_root(p);
    long n = powmod(g, (p - 1) / d, p);
    ConreyChar chi(p, n);
    if (chi.order() == d) return chi;
  }
  return of_order_composite(d);
}

ConreyChar ConreyChar::of_order_composite(long d) {
  if (d < 1) throw std::invalid_argument("of_order_composite: order must be positive");
  if (d == 1) return ConreyChar(1, 1);
  // one prime p = 1 (mod l^e) per prime-power factor of d, glued by CRT
  long modulus = 1;
  std::vector<std::pair<long, long>> residues;  // (index mod p, p)
  for (auto [l, e] : factorize(d)) {
    long le = 1;
    for (int i = 0; i < e; ++i) le *= l;
    long p = 0;
    for (long cand = le + 1;; cand += le) {
      if (is_prime(cand) && modulus % cand != 0) { p = cand; break; }
    }
    long g = primitive_root(p);
    residues.emplace_back(powmod(g, (p - 1) / le, p), p);
    modulus *= p;
  }
  // CRT the per-factor Conrey indices
  long index = 0;
  for (auto [r, p] : residues) {
    long rest = modulus / p;
    index = (index + mulmod(mulmod(r, rest % modulus, modulus),
                            invmod(rest % p, p), modulus)) % modulus;
  }
  ConreyChar chi(modulus, index);
  if (chi.order() != d) throw std::logic_error("of_order_composite: order mismatch");
  return chi;
}

nlohmann::json ConreyChar::to_json() const {
  return {{"modulus", modulus_}, {"conrey_index", modulus_ == 1 ? 1 : index_}};
}

ConreyChar ConreyChar::from_json(const nlohmann::json& j) {
  return ConreyChar(j.at("modulus").get<long>(), j.at("conrey_index").get<long>());
}

}  // namespace heckefield
