#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

// Exact arithmetic in cyclotomic fields Q(zeta_M).  Elements are stored in
// the power basis 1, zeta, ..., zeta^(phi(M)-1) reduced modulo the M-th
// cyclotomic polynomial, so equality of coefficient vectors is equality of
// field elements.  All coefficients are exact rationals; there is no
// floating point anywhere in this module.

namespace heckefield {

using Rat = mpq_class;
using Int = mpz_class;

// Per-modulus data: phi(M), Phi_M, and the reduction table
// rows[k] = zeta^k expressed in the power basis, for 0 <= k < max(M, 2 phi - 1).
// Built once per modulus and shared read-only (thread safe).
class CycTables {
 public:
  long modulus;
  long phi;
  std::vector<Int> phi_poly;             // Phi_M, degree phi, monic
  std::vector<std::vector<Int>> rows;    // power reduction rows

  static const CycTables& get(long modulus);

 private:
  explicit CycTables(long m);
};

// Monic cyclotomic polynomial Phi_M over Z (Moebius product of x^d - 1
// factors, computed by exact division).
std::vector<Int> cyclotomic_polynomial(long m);

class CycElt {
 public:
  CycElt();  // zero over Q
  static CycElt rational(const Rat& q);
  static CycElt integer(long n);
  // Canonical representative of sum raw[k] * zeta_M^k (any length; exponents
  // are folded mod M first since zeta_M^M = 1).
  static CycElt from_poly(long modulus, std::span<const Rat> raw);
  // zeta_modulus^k
  static CycElt root_of_unity(long modulus, long k);

  long modulus() const { return modulus_; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  Rat rational_value() const;  // requires is_rational()

  // Same element of the larger field Q(zeta_target); modulus() must divide
  // target.
  CycElt embedded(long target) const;

  CycElt operator-() const;
  friend CycElt operator+(const CycElt& a, const CycElt& b);
  friend CycElt operator-(const CycElt& a, const CycElt& b);
  friend CycElt operator*(const CycElt& a, const CycElt& b);
  friend CycElt operator/(const CycElt& a, const CycElt& b);  // throws on b = 0
  CycElt inverse() const;
  CycElt pow(long e) const;

  // Strict comparison at a common modulus: embeds both operands into
  // Q(zeta_lcm) first.
  bool equals(const CycElt& other) const;
  bool operator==(const CycElt& other) const { return equals(other); }

  // Galois action sigma_t : zeta_M -> zeta_M^t, gcd(t, M) = 1.
  CycElt galois(long t) const;

  // Smallest M' | M with this element in Q(zeta_M'), and the element
  // rewritten over that modulus.
  long conductor() const;
  CycElt to_conductor() const;

  // If the element is a root of unity, returns (n, k) with value zeta_n^k,
  // n minimal.  Roots of unity in Q(zeta_M) have order dividing lcm(2, M).
  std::optional<std::pair<long, long>> as_root_of_unity() const;

  nlohmann::json to_json() const;
  static CycElt from_json(const nlohmann::json& j);

  size_t hash() const;

 private:
  long modulus_;
  std::vector<Rat> coeffs_;  // length phi(modulus_)

  CycElt(long modulus, std::vector<Rat> coeffs);
  friend class Subfield;
};

// Fixed Gauss-sum representatives; each squares to the advertised rational.
//   sqrt5  = zeta_5 - zeta_5^2 - zeta_5^3 + zeta_5^4      (M = 5)
//   sqrt2  = zeta_8 + zeta_8^-1                           (M = 8)
//   sqrtm2 = zeta_8 + zeta_8^3                            (M = 8)
//   sqrtm1 = zeta_4                                       (M = 4)
enum class Surd { Sqrt5, Sqrt2, SqrtM2, SqrtM1 };
CycElt named_surd(Surd which);

size_t hash_rat(const Rat& q);

}  // namespace heckefield
