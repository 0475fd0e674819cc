#include "heckefield/exotic_groups.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "heckefield/numutil.hpp"

namespace heckefield {

std::string to_string(GroupKind k) {
  switch (k) {
    case GroupKind::TwoA4: return "2A4";
    case GroupKind::TwoO: return "2O";
    case GroupKind::Gl23: return "GL23";
    case GroupKind::TwoA5: return "2A5";
    case GroupKind::Gl23C4: return "GL23C4";
  }
  return "?";
}

std::string to_string(ProjType t) {
  switch (t) {
    case ProjType::A4: return "A4";
    case ProjType::S4: return "S4";
    case ProjType::A5: return "A5";
  }
  return "?";
}

GroupKind group_kind_from_string(const std::string& s) {
  if (s == "2A4") return GroupKind::TwoA4;
  if (s == "2O") return GroupKind::TwoO;
  if (s == "GL23") return GroupKind::Gl23;
  if (s == "2A5") return GroupKind::TwoA5;
  if (s == "GL23C4") return GroupKind::Gl23C4;
  throw std::invalid_argument("unknown matrix group kind: " + s);
}

ProjType proj_type_of(GroupKind k) {
  switch (k) {
    case GroupKind::TwoA4: return ProjType::A4;
    case GroupKind::TwoO:
    case GroupKind::Gl23:
    case GroupKind::Gl23C4: return ProjType::S4;
    case GroupKind::TwoA5: return ProjType::A5;
  }
  throw std::logic_error("proj_type_of: bad kind");
}

Mat2 Mat2::mul(const Mat2& o) const {
  return Mat2{{e[0] * o.e[0] + e[1] * o.e[2], e[0] * o.e[1] + e[1] * o.e[3],
               e[2] * o.e[0] + e[3] * o.e[2], e[2] * o.e[1] + e[3] * o.e[3]}};
}

Mat2 Mat2::inverse() const {
  CycElt d = det();
  if (d.is_zero()) throw std::domain_error("Mat2::inverse: singular matrix");
  CycElt di = d.inverse();
  return Mat2{{e[3] * di, -(e[1] * di), -(e[2] * di), e[0] * di}};
}

Mat2 Mat2::scaled(const CycElt& z) const {
  return Mat2{{z * e[0], z * e[1], z * e[2], z * e[3]}};
}

bool Mat2::is_scalar() const {
  return e[1].is_zero() && e[2].is_zero() && e[0].equals(e[3]);
}

bool Mat2::operator==(const Mat2& o) const {
  for (int i = 0; i < 4; ++i)
    if (!e[i].equals(o.e[i])) return false;
  return true;
}

size_t Mat2::hash() const {
  size_t h = 0x9e3779b97f4a7c15ull;
  for (const auto& x : e) h = h * 0x100000001b3ull ^ x.hash();
  return h;
}

Mat2 Mat2::proj_normalized() const {
  for (const auto& x : e) {
    if (!x.is_zero()) {
      CycElt inv = x.inverse();
      return scaled(inv);
    }
  }
  throw std::domain_error("proj_normalized: zero matrix");
}

CycElt c_value(const Mat2& g) {
  CycElt d = g.det();
  if (d.is_zero()) throw std::domain_error("c_value: singular matrix");
  CycElt t = g.trace();
  return t * t / d;
}

namespace {

struct MatHash {
  size_t operator()(const Mat2& m) const { return m.hash(); }
};

Rat half() { return Rat(1, 2); }

// quaternion a + bi + cj + dk as a 2x2 matrix over Q(zeta_M), M divisible by 4
Mat2 quat(long m, const CycElt& a, const CycElt& b, const CycElt& c, const CycElt& d) {
  CycElt i = CycElt::root_of_unity(m, m / 4);
  return Mat2{{(a + b * i).embedded(m), (c + d * i).embedded(m),
               ((-c) + d * i).embedded(m), (a - b * i).embedded(m)}};
}

std::vector<Mat2> generators(GroupKind kind, long m) {
  CycElt one = CycElt::integer(1);
  CycElt zero = CycElt::integer(0);
  CycElt h = CycElt::rational(half());
  Mat2 qi = quat(m, zero, one, zero, zero);
  Mat2 qj = quat(m, zero, zero, one, zero);
  Mat2 qw = quat(m, h, h, h, h);  // (1 + i + j + k)/2, projective order 3
  switch (kind) {
    case GroupKind::TwoA4:
      return {qi, qj, qw};
    case GroupKind::TwoO: {
      // diag(zeta_8, zeta_8^-1): projective 4-cycle with det 1, trace sqrt(2)
      Mat2 u{{CycElt::root_of_unity(8, 1).embedded(m), zero.embedded(m),
              zero.embedded(m), CycElt::root_of_unity(8, 7).embedded(m)}};
      return {qi, qj, qw, u};
    }
    case GroupKind::Gl23: {
      // diag(zeta_8^3, zeta_8): det -1, trace sqrt(-2)
      Mat2 v{{CycElt::root_of_unity(8, 3).embedded(m), zero.embedded(m),
              zero.embedded(m), CycElt::root_of_unity(8, 1).embedded(m)}};
      return {qi, qj, qw, v};
    }
    case GroupKind::Gl23C4: {
      // diag(-1, zeta_4): det of order 4 with det^2 = sgn
      Mat2 w{{(-one).embedded(m), zero.embedded(m), zero.embedded(m),
              CycElt::root_of_unity(4, 1).embedded(m)}};
      return {qi, qj, qw, w};
    }
    case GroupKind::TwoA5: {
      // golden quaternion (phi + phi^-1 i + j)/2 of unit norm,
      // projective order 5
      CycElt sqrt5 = named_surd(Surd::Sqrt5).embedded(m);
      CycElt phi = (one.embedded(m) + sqrt5) * h.embedded(m);
      CycElt phinv = phi - one.embedded(m);  // 1/phi = phi - 1
      Mat2 s = quat(m, phi * h.embedded(m), phinv * h.embedded(m), h.embedded(m),
                    zero.embedded(m));
      return {qi, qj, qw, s};
    }
  }
  throw std::logic_error("generators: bad kind");
}

long expected_order(GroupKind kind) {
  switch (kind) {
    case GroupKind::TwoA4: return 24;
    case GroupKind::TwoO: return 48;
    case GroupKind::Gl23: return 48;
    case GroupKind::TwoA5: return 120;
    case GroupKind::Gl23C4: return 96;
  }
  return 0;
}

long expected_proj_order(GroupKind kind) {
  switch (kind) {
    case GroupKind::TwoA4: return 12;
    case GroupKind::TwoO: return 24;
    case GroupKind::Gl23: return 24;
    case GroupKind::TwoA5: return 60;
    case GroupKind::Gl23C4: return 24;
  }
  return 0;
}

long kind_modulus(GroupKind kind) {
  switch (kind) {
    case GroupKind::TwoA4: return 4;
    case GroupKind::TwoO:
    case GroupKind::Gl23:
    case GroupKind::Gl23C4: return 8;
    case GroupKind::TwoA5: return 20;
  }
  return 0;
}

}  // namespace

MatGroup::MatGroup(GroupKind kind) : kind_(kind), modulus_(kind_modulus(kind)) {
  auto gens = generators(kind, modulus_);
  long expected = expected_order(kind);

  // worklist closure; exceeding the expected order means a bad generator set
  std::unordered_map<Mat2, long, MatHash> index;
  std::vector<Mat2> worklist;
  auto add = [&](const Mat2& g) {
    if (index.emplace(g, static_cast<long>(elements_.size())).second) {
      elements_.push_back(g);
      worklist.push_back(g);
      if (static_cast<long>(elements_.size()) > expected)
        throw std::logic_error("MatGroup closure exceeded the expected order for " +
                               to_string(kind));
    }
  };
  CycElt one = CycElt::integer(1).embedded(modulus_);
  CycElt zero = CycElt::integer(0).embedded(modulus_);
  add(Mat2{{one, zero, zero, one}});
  for (const auto& g : gens) add(g);
  while (!worklist.empty()) {
    Mat2 x = worklist.back();
    worklist.pop_back();
    for (const auto& g : gens) add(x.mul(g));
  }
  if (static_cast<long>(elements_.size()) != expected)
    throw std::logic_error("MatGroup closure has wrong order for " + to_string(kind));

  // projective classes
  std::unordered_map<Mat2, long, MatHash> proj_index;
  elt_class_.resize(elements_.size());
  for (size_t i = 0; i < elements_.size(); ++i) {
    Mat2 n = elements_[i].proj_normalized();
    auto it = proj_index.find(n);
    if (it == proj_index.end()) {
      it = proj_index.emplace(n, static_cast<long>(proj_reps_.size())).first;
      proj_reps_.push_back(n);
    }
    elt_class_[i] = it->second;
  }
  if (static_cast<long>(proj_reps_.size()) != expected_proj_order(kind))
    throw std::logic_error("MatGroup projective image has wrong order for " + to_string(kind));

  // projective orders
  Mat2 id{{one, zero, zero, one}};
  proj_order_.resize(proj_reps_.size());
  for (size_t c = 0; c < proj_reps_.size(); ++c) {
    Mat2 acc = proj_reps_[c];
    long ord = 1;
    while (!(acc == id)) {
      acc = acc.mul(proj_reps_[c]).proj_normalized();
      ++ord;
      if (ord > 60) throw std::logic_error("projective order runaway");
    }
    proj_order_[c] = ord;
  }

  // commutator subgroup of the projective image: close the set of
  // commutators under projective multiplication
  std::unordered_map<Mat2, long, MatHash> cgen_index;
  std::vector<Mat2> cgens;
  for (const auto& a : proj_reps_)
    for (const auto& b : proj_reps_) {
      Mat2 c = a.mul(b).mul(a.inverse()).mul(b.inverse()).proj_normalized();
      if (cgen_index.emplace(c, 1).second) cgens.push_back(c);
    }
  std::unordered_map<Mat2, long, MatHash> comm;
  std::vector<Mat2> cwork;
  auto cadd = [&](const Mat2& g) {
    if (comm.emplace(g, 1).second) {
      cwork.push_back(g);
      if (comm.size() > proj_reps_.size()) throw std::logic_error("commutator runaway");
    }
  };
  cadd(id);
  for (const auto& g : cgens) cadd(g);
  while (!cwork.empty()) {
    Mat2 x = cwork.back();
    cwork.pop_back();
    for (const auto& g : cgens) cadd(x.mul(g).proj_normalized());
  }
  proj_in_commutator_.resize(proj_reps_.size());
  for (size_t c = 0; c < proj_reps_.size(); ++c)
    proj_in_commutator_[c] = comm.count(proj_reps_[c]) > 0;
}

const MatGroup& MatGroup::get(GroupKind kind) {
  static std::mutex mu;
  static std::map<GroupKind, std::unique_ptr<MatGroup>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(kind);
  if (it == cache.end())
    it = cache.emplace(kind, std::unique_ptr<MatGroup>(new MatGroup(kind))).first;
  return *it->second;
}

long MatGroup::proj_index_of(const Mat2& normalized) const {
  for (size_t c = 0; c < proj_reps_.size(); ++c)
    if (proj_reps_[c] == normalized) return static_cast<long>(c);
  return -1;
}

long MatGroup::proj_class_of(const Mat2& g) const {
  long idx = proj_index_of(g.proj_normalized());
  if (idx < 0) throw std::domain_error("matrix is not an element of the group");
  return idx;
}

long MatGroup::proj_order_of(const Mat2& g) const { return proj_order_[proj_class_of(g)]; }

int MatGroup::sgn_of_class(long cls) const {
  if (proj_type() != ProjType::S4)
    throw std::domain_error("sgn is only defined for S4-type groups");
  return proj_in_commutator_[cls] ? 1 : -1;
}

int MatGroup::sgn_of(const Mat2& g) const { return sgn_of_class(proj_class_of(g)); }

CValueReport MatGroup::verify_c_values() const {
  CValueReport rep;
  rep.kind = kind_;
  std::map<long, long> order_count;
  std::vector<CycElt> distinct;
  for (size_t i = 0; i < elements_.size(); ++i) {
    const Mat2& g = elements_[i];
    long n = proj_order_[elt_class_[i]];
    ++order_count[n];
    CycElt c = c_value(g);
    bool matched = false;
    for (long k = 1; k <= n; ++k) {
      if (gcd64(k, n) != 1) continue;
      CycElt cand = CycElt::integer(2) + CycElt::root_of_unity(n, k) +
                    CycElt::root_of_unity(n, n - k);
      if (c.equals(cand)) { matched = true; break; }
    }
    if (!matched) {
      rep.pass = false;
      rep.failures.push_back("element " + std::to_string(i) + " of " + to_string(kind_) +
                             ": c-value is not 2 + zeta_n + zeta_n^-1 for n = " +
                             std::to_string(n));
    }
    // invariance under every scalar lift available in the ambient field
    for (long s = 0; s < modulus_; ++s) {
      CycElt z = CycElt::root_of_unity(modulus_, s);
      if (!c_value(g.scaled(z)).equals(c)) {
        rep.pass = false;
        rep.failures.push_back("element " + std::to_string(i) +
                               ": c-value changed under scalar zeta^" + std::to_string(s));
      }
    }
    bool seen = false;
    for (const auto& d : distinct)
      if (d.equals(c)) { seen = true; break; }
    if (!seen) distinct.push_back(c);
  }
  for (auto [n, cnt] : order_count) rep.per_order.emplace_back(n, cnt);
  for (const auto& d : distinct) {
    CycElt r = d.to_conductor();
    if (r.is_rational())
      rep.c_values.push_back(r.rational_value().get_str());
    else
      rep.c_values.push_back("(3" + std::string(r.equals((CycElt::integer(3) +
                             named_surd(Surd::Sqrt5)) / CycElt::integer(2)) ? "+" : "-") +
                             "sqrt(5))/2");
  }
  return rep;
}

std::set<long> MatGroup::cyclic_subgroup_orders(ProjType t) {
  GroupKind rep_kind = t == ProjType::A4   ? GroupKind::TwoA4
                       : t == ProjType::S4 ? GroupKind::TwoO
                                           : GroupKind::TwoA5;
  const MatGroup& g = get(rep_kind);
  std::set<long> orders;
  for (long c = 0; c < g.proj_class_count(); ++c) orders.insert(g.proj_order_[c]);
  return orders;
}

nlohmann::json CValueReport::to_json() const {
  nlohmann::json per;
  for (auto [n, cnt] : per_order) per[std::to_string(n)] = cnt;
  return {{"group", to_string(kind)},
          {"pass", pass},
          {"c_values", c_values},
          {"elements_by_proj_order", per},
          {"failures", failures}};
}

}  // namespace heckefield
