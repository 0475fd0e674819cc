#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

// Elementary integer routines shared by all modules. Everything here is
// exact 64-bit arithmetic on moduli small enough for trial division.

namespace heckefield {

inline long gcd64(long a, long b) { return std::gcd(a, b); }
inline long lcm64(long a, long b) { return std::lcm(a, b); }

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

inline std::vector<std::pair<long, int>> factorize(long n) {
  std::vector<std::pair<long, int>> out;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) { n /= p; ++e; }
      out.emplace_back(p, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline long totient(long n) {
  long phi = 1;
  for (auto [p, e] : factorize(n)) {
    long pe = 1;
    for (int i = 1; i < e; ++i) pe *= p;
    phi *= pe * (p - 1);
  }
  return phi;
}

inline std::vector<long> divisors(long n) {
  std::vector<long> out;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d != n / d) out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline int mobius(long n) {
  int mu = 1;
  for (auto [p, e] : factorize(n)) {
    (void)p;
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

inline long mulmod(long a, long b, long m) {
  return static_cast<long>((static_cast<__int128>(a) * b) % m);
}

inline long powmod(long a, long e, long m) {
  long r = 1 % m;
  a %= m;
  if (a < 0) a += m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

inline long invmod(long a, long m) {
  long g = m, x = 0, x1 = 1, a1 = ((a % m) + m) % m;
  while (a1 != 0) {
    long q = g / a1;
    std::tie(g, a1) = std::pair<long, long>(a1, g - q * a1);
    std::tie(x, x1) = std::pair<long, long>(x1, x - q * x1);
  }
  if (g != 1) throw std::domain_error("invmod: element not invertible");
  return ((x % m) + m) % m;
}

inline std::vector<long> primes_below(long bound) {
  std::vector<bool> sieve(std::max<long>(bound, 2), true);
  std::vector<long> out;
  for (long p = 2; p < bound; ++p) {
    if (!sieve[p]) continue;
    out.push_back(p);
    for (long q = p * p; q < bound; q += p) sieve[q] = false;
  }
  return out;
}

// Multiplicative order of a modulo m (gcd(a, m) = 1).
inline long mult_order(long a, long m) {
  if (m == 1) return 1;
  long phi = totient(m);
  long ord = phi;
  for (long d : divisors(phi))
    if (powmod(a, d, m) == 1) { ord = d; break; }
  return ord;
}

// Smallest generator of the cyclic group (Z/p^e)^x for odd p (or p^e = 2, 4).
inline long primitive_root(long pe) {
  if (pe == 1) return 1;
  if (pe == 2) return 1;
  if (pe == 4) return 3;
  long phi = totient(pe);
  auto fac = factorize(phi);
  for (long g = 2; g < pe; ++g) {
    if (gcd64(g, pe) != 1) continue;
    bool ok = true;
    for (auto [q, e] : fac) {
      (void)e;
      if (powmod(g, phi / q, pe) == 1) { ok = false; break; }
    }
    if (ok) return g;
  }
  throw std::logic_error("primitive_root: no generator found");
}

// ------------------------------------------------------------------
// Residue subgroups of (Z/M)^x, used for the Galois correspondence.
// Convention: for M = 1 the unit group is the single residue {0}.
// ------------------------------------------------------------------

inline std::vector<long> unit_group(long m) {
  if (m == 1) return {0};
  std::vector<long> out;
  for (long t = 1; t < m; ++t)
    if (gcd64(t, m) == 1) out.push_back(t);
  return out;
}

inline bool sorted_contains(const std::vector<long>& v, long x) {
  return std::binary_search(v.begin(), v.end(), x);
}

// Closure of the given residues under multiplication mod m; always
// contains the identity.
inline std::vector<long> subgroup_closure(long m, std::vector<long> gens) {
  std::vector<long> elems{1 % m};
  std::vector<long> queue = elems;
  auto add = [&](long x) {
    if (std::find(elems.begin(), elems.end(), x) == elems.end()) {
      elems.push_back(x);
      queue.push_back(x);
    }
  };
  for (long g : gens) add(((g % m) + m) % m);
  while (!queue.empty()) {
    long x = queue.back();
    queue.pop_back();
    for (size_t i = 0; i < elems.size(); ++i) add(m == 1 ? 0 : mulmod(x, elems[i], m));
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

// Image of a subgroup H <= (Z/M)^x under reduction mod a divisor m of M.
inline std::vector<long> reduce_subgroup(long M, const std::vector<long>& H, long m) {
  std::vector<long> out;
  for (long t : H) out.push_back(t % m);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Preimage of a subgroup H <= (Z/m)^x in (Z/M)^x, m | M.
inline std::vector<long> lift_subgroup(long m, const std::vector<long>& H, long M) {
  std::vector<long> out;
  for (long t : unit_group(M))
    if (sorted_contains(H, t % m)) out.push_back(t);
  return out;
}

// Smallest divisor m of M such that the reduction kernel {t = 1 mod m}
// is contained in H.  This is the conductor of the fixed field of H.
inline long subgroup_conductor(long M, const std::vector<long>& H) {
  for (long m : divisors(M)) {
    bool ok = true;
    for (long t : unit_group(M)) {
      if (t % m == 1 % m && !sorted_contains(H, t)) { ok = false; break; }
    }
    if (ok) return m;
  }
  throw std::logic_error("subgroup_conductor: unreachable");
}

}  // namespace heckefield
