#include "heckefield/cyclo.hpp"

#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

#include "heckefield/numutil.hpp"

namespace heckefield {

namespace {

// Exact division of integer polynomials, num / den with den monic-led
// (used only where divisibility is guaranteed).
std::vector<Int> poly_div_exact(std::vector<Int> num, const std::vector<Int>& den) {
  if (den.empty() || den.back() == 0) throw std::logic_error("poly_div_exact: bad divisor");
  std::vector<Int> quot(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, 0);
  for (long i = static_cast<long>(num.size()) - 1;
       i >= static_cast<long>(den.size()) - 1; --i) {
    if (num[i] == 0) continue;
    Int q = num[i] / den.back();
    if (q * den.back() != num[i]) throw std::logic_error("poly_div_exact: inexact");
    quot[i - (den.size() - 1)] = q;
    for (size_t j = 0; j < den.size(); ++j) num[i - (den.size() - 1) + j] -= q * den[j];
  }
  for (const auto& c : num)
    if (c != 0) throw std::logic_error("poly_div_exact: nonzero remainder");
  while (quot.size() > 1 && quot.back() == 0) quot.pop_back();
  return quot;
}

std::map<long, std::vector<Int>>& phi_cache() {
  static std::map<long, std::vector<Int>> cache;
  return cache;
}
std::mutex& phi_mutex() {
  static std::mutex m;
  return m;
}

std::vector<Int> cyclotomic_polynomial_locked(long m) {
  auto it = phi_cache().find(m);
  if (it != phi_cache().end()) return it->second;
  std::vector<Int> poly;
  if (m == 1) {
    poly = {Int(-1), Int(1)};
  } else {
    // (x^m - 1) / prod_{d | m, d < m} Phi_d
    poly.assign(m + 1, 0);
    poly[0] = -1;
    poly[m] = 1;
    for (long d : divisors(m))
      if (d < m) poly = poly_div_exact(std::move(poly), cyclotomic_polynomial_locked(d));
  }
  phi_cache()[m] = poly;
  return poly;
}

std::map<long, std::shared_ptr<const CycTables>>& table_cache() {
  static std::map<long, std::shared_ptr<const CycTables>> cache;
  return cache;
}
std::mutex& table_mutex() {
  static std::mutex m;
  return m;
}

size_t hash_int(const Int& z) {
  size_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](size_t v) {
    h ^= v;
    h *= 0x100000001b3ull;
  };
  mix(static_cast<size_t>(mpz_sgn(z.get_mpz_t())));
  size_t n = mpz_size(z.get_mpz_t());
  mix(n);
  for (size_t i = 0; i < n; ++i) mix(mpz_getlimbn(z.get_mpz_t(), i));
  return h;
}

}  // namespace

size_t hash_rat(const Rat& q) {
  return hash_int(q.get_num()) * 1000003u ^ hash_int(q.get_den());
}

std::vector<Int> cyclotomic_polynomial(long m) {
  if (m < 1) throw std::invalid_argument("cyclotomic_polynomial: modulus must be >= 1");
  std::lock_guard<std::mutex> lock(phi_mutex());
  return cyclotomic_polynomial_locked(m);
}

CycTables::CycTables(long m) : modulus(m) {
  phi_poly = cyclotomic_polynomial(m);
  phi = static_cast<long>(phi_poly.size()) - 1;
  // rows[k] = zeta^k in the power basis; the table covers every exponent a
  // product of two reduced elements or a Galois permutation can produce.
  long extent = std::max<long>(m, 2 * phi - 1);
  rows.resize(extent);
  for (long k = 0; k < std::min<long>(phi, extent); ++k) {
    rows[k].assign(phi, 0);
    rows[k][k] = 1;
  }
  for (long k = phi; k < extent; ++k) {
    const auto& prev = rows[k - 1];
    std::vector<Int> cur(phi, 0);
    const Int& top = prev[phi - 1];
    for (long j = phi - 1; j >= 1; --j) cur[j] = prev[j - 1];
    cur[0] = 0;
    if (top != 0) {
      // x^phi = -(lower part of Phi_M)
      for (long j = 0; j < phi; ++j) cur[j] -= top * phi_poly[j];
    }
    rows[k] = std::move(cur);
  }
}

const CycTables& CycTables::get(long modulus) {
  std::lock_guard<std::mutex> lock(table_mutex());
  auto& cache = table_cache();
  auto it = cache.find(modulus);
  if (it == cache.end())
    it = cache.emplace(modulus, std::shared_ptr<const CycTables>(new CycTables(modulus))).first;
  return *it->second;
}

CycElt::CycElt() : modulus_(1), coeffs_(1, Rat(0)) {}

CycElt::CycElt(long modulus, std::vector<Rat> coeffs)
    : modulus_(modulus), coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
}

CycElt CycElt::rational(const Rat& q) {
  Rat c = q;
  c.canonicalize();
  return CycElt(1, {c});
}

CycElt CycElt::integer(long n) { return rational(Rat(n)); }

CycElt CycElt::from_poly(long modulus, std::span<const Rat> raw) {
  if (modulus < 1) throw std::invalid_argument("from_poly: modulus must be >= 1");
  const CycTables& t = CycTables::get(modulus);
  std::vector<Rat> out(t.phi, Rat(0));
  for (size_t k = 0; k < raw.size(); ++k) {
    if (raw[k] == 0) continue;
    long e = static_cast<long>(k) % modulus;  // zeta^M = 1
    const auto& row = t.rows[e];
    for (long j = 0; j < t.phi; ++j)
      if (row[j] != 0) out[j] += raw[k] * Rat(row[j]);
  }
  return CycElt(modulus, std::move(out));
}

CycElt CycElt::root_of_unity(long modulus, long k) {
  if (modulus < 1) throw std::invalid_argument("root_of_unity: modulus must be >= 1");
  k %= modulus;
  if (k < 0) k += modulus;
  std::vector<Rat> raw(k + 1, Rat(0));
  raw[k] = 1;
  return from_poly(modulus, raw);
}

bool CycElt::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool CycElt::is_rational() const {
  for (size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

Rat CycElt::rational_value() const {
  if (!is_rational()) throw std::domain_error("rational_value: element is not rational");
  return coeffs_[0];
}

CycElt CycElt::embedded(long target) const {
  if (target == modulus_) return *this;
  if (target % modulus_ != 0)
    throw std::invalid_argument("embedded: current modulus must divide the target");
  const CycTables& t = CycTables::get(target);
  long stride = target / modulus_;
  std::vector<Rat> out(t.phi, Rat(0));
  for (size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0) continue;
    const auto& row = t.rows[(static_cast<long>(k) * stride) % target];
    for (long j = 0; j < t.phi; ++j)
      if (row[j] != 0) out[j] += coeffs_[k] * Rat(row[j]);
  }
  return CycElt(target, std::move(out));
}

CycElt CycElt::operator-() const {
  std::vector<Rat> out(coeffs_);
  for (auto& c : out) c = -c;
  return CycElt(modulus_, std::move(out));
}

namespace {
std::pair<CycElt, CycElt> to_common(const CycElt& a, const CycElt& b) {
  long l = lcm64(a.modulus(), b.modulus());
  return {a.embedded(l), b.embedded(l)};
}
}  // namespace

CycElt operator+(const CycElt& a, const CycElt& b) {
  auto [x, y] = to_common(a, b);
  std::vector<Rat> out(x.coeffs());
  for (size_t i = 0; i < out.size(); ++i) out[i] += y.coeffs()[i];
  return CycElt::from_poly(x.modulus(), out);
}

CycElt operator-(const CycElt& a, const CycElt& b) { return a + (-b); }

CycElt operator*(const CycElt& a, const CycElt& b) {
  auto [x, y] = to_common(a, b);
  long m = x.modulus();
  const CycTables& t = CycTables::get(m);
  std::vector<Rat> conv(2 * t.phi - 1, Rat(0));
  for (size_t i = 0; i < x.coeffs().size(); ++i) {
    if (x.coeffs()[i] == 0) continue;
    for (size_t j = 0; j < y.coeffs().size(); ++j) {
      if (y.coeffs()[j] == 0) continue;
      conv[i + j] += x.coeffs()[i] * y.coeffs()[j];
    }
  }
  std::vector<Rat> out(t.phi, Rat(0));
  for (size_t k = 0; k < conv.size(); ++k) {
    if (conv[k] == 0) continue;
    const auto& row = t.rows[k];
    for (long j = 0; j < t.phi; ++j)
      if (row[j] != 0) out[j] += conv[k] * Rat(row[j]);
  }
  return CycElt(m, std::move(out));
}

namespace {

// Polynomial arithmetic over Q for the extended Euclid behind inversion.
using QPoly = std::vector<Rat>;

void qtrim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly qsub_scaled(QPoly a, const QPoly& b, const Rat& s, size_t shift) {
  if (a.size() < b.size() + shift) a.resize(b.size() + shift, Rat(0));
  for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= s * b[i];
  qtrim(a);
  return a;
}

// Remainder and quotient of a by b (b nonzero).
std::pair<QPoly, QPoly> qdivrem(QPoly a, const QPoly& b) {
  QPoly q;
  qtrim(a);
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rat(0));
  while (a.size() >= b.size() && !a.empty()) {
    Rat s = a.back() / b.back();
    size_t shift = a.size() - b.size();
    q[shift] = s;
    a = qsub_scaled(std::move(a), b, s, shift);
  }
  return {q, a};
}

}  // namespace

CycElt CycElt::inverse() const {
  if (is_zero()) throw std::domain_error("inverse: division by zero");
  const CycTables& t = CycTables::get(modulus_);
  // extended Euclid: u * this + v * Phi_M = gcd = constant
  QPoly r0(t.phi_poly.size());
  for (size_t i = 0; i < t.phi_poly.size(); ++i) r0[i] = Rat(t.phi_poly[i]);
  QPoly r1(coeffs_);
  qtrim(r1);
  QPoly s0 = {}, s1 = {Rat(1)};  // coefficients of `this`
  while (true) {
    qtrim(r1);
    if (r1.size() <= 1) break;
    auto [q, r] = qdivrem(r0, r1);
    QPoly s2 = s0;
    // s2 = s0 - q * s1
    for (size_t i = 0; i < q.size(); ++i) {
      if (q[i] == 0) continue;
      if (s2.size() < s1.size() + i) s2.resize(s1.size() + i, Rat(0));
      for (size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
    }
    qtrim(s2);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) throw std::logic_error("inverse: gcd degenerated (Phi_M not coprime?)");
  Rat g = r1[0];
  std::vector<Rat> inv(s1.size(), Rat(0));
  for (size_t i = 0; i < s1.size(); ++i) inv[i] = s1[i] / g;
  return from_poly(modulus_, inv);
}

CycElt operator/(const CycElt& a, const CycElt& b) {
  auto [x, y] = to_common(a, b);
  return x * y.inverse();
}

CycElt CycElt::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycElt result = CycElt::integer(1).embedded(modulus_);
  CycElt base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

bool CycElt::equals(const CycElt& other) const {
  if (modulus_ == other.modulus_) return coeffs_ == other.coeffs_;
  auto [x, y] = to_common(*this, other);
  return x.coeffs() == y.coeffs();
}

CycElt CycElt::galois(long t) const {
  long m = modulus_;
  t %= m;
  if (t < 0) t += m;
  if (m == 1) return *this;
  if (gcd64(t, m) != 1) throw std::invalid_argument("galois: exponent not coprime to modulus");
  const CycTables& tab = CycTables::get(m);
  std::vector<Rat> out(tab.phi, Rat(0));
  for (size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0) continue;
    const auto& row = tab.rows[(t * static_cast<long>(k)) % m];
    for (long j = 0; j < tab.phi; ++j)
      if (row[j] != 0) out[j] += coeffs_[k] * Rat(row[j]);
  }
  return CycElt(m, std::move(out));
}

long CycElt::conductor() const {
  if (is_rational()) return 1;
  // stabilizer of the element inside (Z/M)^x, then the smallest divisor
  // whose reduction kernel sits inside it
  std::vector<long> stab;
  for (long t : unit_group(modulus_))
    if (galois(t).coeffs() == coeffs_) stab.push_back(t);
  return subgroup_conductor(modulus_, stab);
}

CycElt CycElt::to_conductor() const {
  long c = conductor();
  if (c == modulus_) return *this;
  if (c == 1) return CycElt::rational(coeffs_[0]);
  // Solve for coordinates over the power basis of Q(zeta_c) embedded in
  // Q(zeta_M): small exact Gaussian elimination.
  const CycTables& tc = CycTables::get(c);
  long stride = modulus_ / c;
  const CycTables& tm = CycTables::get(modulus_);
  long rowsn = tm.phi, colsn = tc.phi;
  std::vector<std::vector<Rat>> aug(rowsn, std::vector<Rat>(colsn + 1, Rat(0)));
  for (long j = 0; j < colsn; ++j) {
    const auto& row = tm.rows[(j * stride) % modulus_];
    for (long i = 0; i < rowsn; ++i) aug[i][j] = Rat(row[i]);
  }
  for (long i = 0; i < rowsn; ++i) aug[i][colsn] = coeffs_[i];
  // forward elimination
  long r = 0;
  std::vector<long> pivot_col;
  for (long cidx = 0; cidx < colsn && r < rowsn; ++cidx) {
    long piv = -1;
    for (long i = r; i < rowsn; ++i)
      if (aug[i][cidx] != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(aug[piv], aug[r]);
    for (long i = 0; i < rowsn; ++i) {
      if (i == r || aug[i][cidx] == 0) continue;
      Rat f = aug[i][cidx] / aug[r][cidx];
      for (long j = cidx; j <= colsn; ++j) aug[i][j] -= f * aug[r][j];
    }
    pivot_col.push_back(cidx);
    ++r;
  }
  std::vector<Rat> sol(colsn, Rat(0));
  for (long i = 0; i < r; ++i) sol[pivot_col[i]] = aug[i][colsn] / aug[i][pivot_col[i]];
  for (long i = r; i < rowsn; ++i)
    if (aug[i][colsn] != 0) throw std::logic_error("to_conductor: inconsistent system");
  return CycElt(c, std::move(sol));
}

std::optional<std::pair<long, long>> CycElt::as_root_of_unity() const {
  if (is_zero()) return std::nullopt;
  long bound = lcm64(2, modulus_);
  if (!pow(bound).equals(CycElt::integer(1))) return std::nullopt;
  long order = bound;
  for (long d : divisors(bound))
    if (pow(d).equals(CycElt::integer(1))) { order = d; break; }
  for (long k = 0; k < order; ++k) {
    if (gcd64(k, order) != 1 && !(k == 0 && order == 1)) continue;
    if (equals(root_of_unity(order, k))) return std::make_pair(order, k);
  }
  throw std::logic_error("as_root_of_unity: order found but no exponent matched");
}

size_t CycElt::hash() const {
  size_t h = static_cast<size_t>(modulus_) * 0x9e3779b97f4a7c15ull;
  for (const auto& c : coeffs_) h = h * 1099511628211ull ^ hash_rat(c);
  return h;
}

nlohmann::json CycElt::to_json() const {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : coeffs_)
    coeffs.push_back({c.get_num().get_str(), c.get_den().get_str()});
  return {{"modulus", modulus_}, {"coeffs", coeffs}};
}

CycElt CycElt::from_json(const nlohmann::json& j) {
  long m = j.at("modulus").get<long>();
  std::vector<Rat> coeffs;
  for (const auto& pair : j.at("coeffs")) {
    Int num(pair.at(0).get<std::string>());
    Int den(pair.at(1).get<std::string>());
    if (den == 0) throw std::invalid_argument("CycElt::from_json: zero denominator");
    coeffs.emplace_back(num, den);
  }
  if (static_cast<long>(coeffs.size()) != totient(m))
    throw std::invalid_argument("CycElt::from_json: coefficient count != phi(modulus)");
  return from_poly(m, coeffs);
}

CycElt named_surd(Surd which) {
  switch (which) {
    case Surd::Sqrt5: {
      std::vector<Rat> raw = {Rat(0), Rat(1), Rat(-1), Rat(-1), Rat(1)};
      return CycElt::from_poly(5, raw);
    }
    case Surd::Sqrt2:
      return CycElt::root_of_unity(8, 1) + CycElt::root_of_unity(8, 7);
    case Surd::SqrtM2:
      return CycElt::root_of_unity(8, 1) + CycElt::root_of_unity(8, 3);
    case Surd::SqrtM1:
      return CycElt::root_of_unity(4, 1);
  }
  throw std::invalid_argument("named_surd: unknown kind");
}

}  // namespace heckefield
