#pragma once

#include <array>
#include <set>
#include <string>
#include <vector>

#include "cyclo.hpp"

// Finite subgroups of GL2 over cyclotomic fields: the binary polyhedral
// double covers used as exact models of the projective images A4, S4, A5.
// Five fixed generator sets; correctness is enforced after closure by hard
// order and invariant checks rather than trusted.

namespace heckefield {

enum class GroupKind {
  TwoA4,   // binary tetrahedral, order 24, over Q(zeta_4), det = 1
  TwoO,    // binary octahedral, order 48, over Q(zeta_8), det = 1
  Gl23,    // GL(2,3)-type cover of S4, order 48, over Q(zeta_8), det = sgn
  TwoA5,   // binary icosahedral, order 120, over Q(zeta_20), det = 1
  Gl23C4,  // central product C4 . GL(2,3), order 96, over Q(zeta_8), det^2 = sgn
};

enum class ProjType { A4, S4, A5 };

std::string to_string(GroupKind k);
std::string to_string(ProjType t);
GroupKind group_kind_from_string(const std::string& s);
ProjType proj_type_of(GroupKind k);

struct Mat2 {
  // row-major entries over a common modulus
  std::array<CycElt, 4> e;

  CycElt trace() const { return e[0] + e[3]; }
  CycElt det() const { return e[0] * e[3] - e[1] * e[2]; }
  Mat2 mul(const Mat2& o) const;
  Mat2 inverse() const;  // throws on det = 0
  Mat2 scaled(const CycElt& z) const;
  bool is_scalar() const;
  bool operator==(const Mat2& o) const;
  size_t hash() const;
  // Scale so the first nonzero entry is 1: canonical representative of the
  // class in PGL2.
  Mat2 proj_normalized() const;
};

// trace^2 / det: depends only on the image in PGL2.  Throws on det = 0.
CycElt c_value(const Mat2& g);

struct CValueReport {
  GroupKind kind;
  bool pass = true;
  std::vector<std::string> c_values;           // distinct values, printed
  std::vector<std::pair<long, long>> per_order;  // (projective order, element count)
  std::vector<std::string> failures;
  nlohmann::json to_json() const;
};

class MatGroup {
 public:
  // Cached closure of the fixed generators; hard failure if the closure
  // does not land exactly on the expected order.
  static const MatGroup& get(GroupKind kind);

  GroupKind kind() const { return kind_; }
  long field_modulus() const { return modulus_; }
  ProjType proj_type() const { return proj_type_of(kind_); }
  const std::vector<Mat2>& elements() const { return elements_; }
  long proj_class_count() const { return static_cast<long>(proj_reps_.size()); }

  // projective class id of g; throws if g is not in the group
  long proj_class_of(const Mat2& g) const;
  long proj_order_of(const Mat2& g) const;
  long proj_order_of_class(long cls) const { return proj_order_[cls]; }
  bool class_in_commutator(long cls) const { return proj_in_commutator_[cls]; }

  // +1 exactly when the projective class lies in the commutator subgroup of
  // the projective image (index-2, the A4 part); S4 kinds only.
  int sgn_of(const Mat2& g) const;
  int sgn_of_class(long cls) const;

  // element index -> projective class
  const std::vector<long>& element_class() const { return elt_class_; }

  // c(g) = 2 + zeta + zeta^-1 for a primitive root of unity of the
  // projective order, checked for every element, plus invariance of c under
  // every scalar rescaling by a root of unity of the ambient field.
  CValueReport verify_c_values() const;

  // Orders of cyclic subgroups of the projective image (= the set of
  // projective element orders).
  static std::set<long> cyclic_subgroup_orders(ProjType t);

 private:
  explicit MatGroup(GroupKind kind);

  GroupKind kind_;
  long modulus_;
  std::vector<Mat2> elements_;
  std::vector<Mat2> proj_reps_;
  std::vector<long> elt_class_;
  std::vector<long> proj_order_;
  std::vector<bool> proj_in_commutator_;

  long proj_index_of(const Mat2& normalized) const;
};

}  // namespace heckefield
