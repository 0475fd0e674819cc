#pragma once

#include <string>
#include <vector>

#include "cyclo.hpp"

// Dirichlet characters mod N in the Conrey parametrization chi_N(n, .).
// Values are tracked as exact root-of-unity exponents (discrete logs on the
// CRT factors of (Z/N)^x), so orders and densities are integer arithmetic.

namespace heckefield {

class ConreyChar {
 public:
  ConreyChar(long modulus, long conrey_index);

  long modulus() const { return modulus_; }
  long conrey_index() const { return index_; }
  long order() const { return order_; }
  int parity() const { return parity_; }  // chi(-1), +1 or -1
  long conductor() const { return conductor_; }

  // chi(x) as the exact fraction k/d of a full turn: chi(x) = zeta_d^k with
  // d = order().  Throws when gcd(x, N) != 1.
  long value_exponent(long x) const;
  // chi(x) as a root of unity in Q(zeta_d).
  CycElt value(long x) const;
  // order of chi(x) in the value group
  long value_order(long x) const;

  // m divides ord(chi(p)); coprimality error otherwise.
  bool membership_q(long m, long p) const;
  // Exact density of { t in (Z/N)^x : m | ord(chi(t)) } by full enumeration.
  Rat q_set_density(long m) const;

  // Conrey label "N.n".
  std::string label() const;
  static ConreyChar parse_label(const std::string& label);

  // A character of order exactly d mod the smallest prime N = 1 (mod d);
  // falls back to a CRT composite modulus if no such prime is found below
  // the search bound.
  static ConreyChar of_order(long d);
  // The composite-modulus construction directly (one prime per prime-power
  // factor of d).
  static ConreyChar of_order_composite(long d);

  nlohmann::json to_json() const;
  static ConreyChar from_json(const nlohmann::json& j);

 private:
  long modulus_;
  long index_;
  long order_;
  int parity_;
  long conductor_;

  // CRT components of (Z/N)^x with precomputed discrete logs.
  struct OddComponent {
    long pe;                  // odd prime power
    long phi;
    long gen;                 // Conrey generator (primitive root, stable mod p^2)
    std::vector<long> dlog;   // dlog[x mod pe], -1 for non-units
    long index_dlog;          // dlog of the Conrey index
  };
  struct TwoComponent {
    long pe = 1;              // 2^e, e >= 2 when active
    long eps_index = 0;       // component of the index along -1
    long eta_index = 0;       // component of the index along 5
    long eta_order = 1;       // 2^(e-2) for e >= 3
    std::vector<long> eps;    // per residue
    std::vector<long> eta;
  };
  std::vector<OddComponent> odd_;
  TwoComponent two_;
  bool has_two_ = false;

  // exponent of chi(x) as a fraction num/den of a full turn, reduced
  std::pair<long, long> value_fraction(long x) const;
};

}  // namespace heckefield
