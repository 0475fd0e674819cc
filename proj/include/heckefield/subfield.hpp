#pragma once

#include <span>
#include <string>
#include <vector>

#include "cyclo.hpp"

// Subfields of Q(zeta_M) represented through the Galois correspondence: a
// field is the sorted list of residues t in (Z/M)^x whose automorphisms
// sigma_t fix it.  Equality is decided by normalizing both sides to their
// conductors, so values over different ambient moduli compare correctly.

namespace heckefield {

class Subfield {
 public:
  // Q, represented over ambient modulus 1.
  static Subfield rationals();
  // Q(zeta_n).
  static Subfield cyclotomic(long n);
  // Fixed field of the subgroup H <= (Z/M)^x (H is closed under
  // multiplication and contains 1; verified).
  static Subfield from_fixing_group(long ambient, std::vector<long> fixing);
  // Q(elts): the stabilizer of every element, computed over each element's
  // own conductor.  Every element must embed into Q(zeta_ambient).
  static Subfield fixing_group(std::span<const CycElt> elts, long ambient);
  // Q(x).
  static Subfield generated_by(const CycElt& x);

  long ambient_modulus() const { return ambient_; }
  const std::vector<long>& fixing() const { return fixing_; }
  long conductor() const { return conductor_; }
  const std::vector<long>& fixing_at_conductor() const { return fixing_at_conductor_; }
  long degree() const;

  bool equals(const Subfield& other) const;
  bool operator==(const Subfield& other) const { return equals(other); }
  bool contains(const Subfield& other) const;
  bool contains(const CycElt& x) const;
  // Compositum.
  Subfield join(const Subfield& other) const;

  // An element generating the field: the H-orbit sum of zeta_M, retrying
  // with orbit sums of zeta_M + zeta_M^k for k = 2, 3, ... until the sum's
  // stabilizer is exactly H.
  CycElt primitive_element() const;
  // Monic irreducible polynomial of primitive_element() (the Galois orbit
  // product over the cosets of the fixing group).
  std::vector<Int> min_poly() const;

  // Frobenius at q is trivial, i.e. q splits completely; q must be a prime
  // not dividing the conductor.
  bool splits_completely(long q) const;

  // "Q", "Q(zeta_n)", or "degree-k field" with conductor info.
  std::string describe() const;

  nlohmann::json to_json() const;
  static Subfield from_json(const nlohmann::json& j);

 private:
  long ambient_;
  std::vector<long> fixing_;               // sorted subgroup of (Z/ambient)^x
  long conductor_;
  std::vector<long> fixing_at_conductor_;  // canonical form

  Subfield(long ambient, std::vector<long> fixing);
};

// Number of roots of f modulo the prime q (gcd of x^q - x with f over F_q);
// the independent splitting-law oracle used against Subfield::splits_completely.
long count_roots_mod_q(const std::vector<Int>& poly, long q);

}  // namespace heckefield
