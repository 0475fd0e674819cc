#pragma once

#include <optional>
#include <set>
#include <vector>

#include "exotic_groups.hpp"
#include "report.hpp"
#include "subfield.hpp"

// Twisted representations rho(g, c) = zeta_m^c * g on B x Z/m for a base
// group B, with exact Chebotarev-style counting over the full element set,
// the nebentypus-order prediction of the trace field, and exhaustive
// verification that enumerated trace fields match the prediction.

namespace heckefield {

enum class S4Branch { SgnEqual, SgnDistinct };
std::string to_string(S4Branch b);
S4Branch s4_branch_from_string(const std::string& s);

struct DensityReport {
  GroupKind base;
  long twist_order = 1;
  ProjType type;
  std::vector<std::pair<long, Rat>> by_order;  // projective order -> exact density
  bool base_twist_agree = true;  // same densities over B and over B x Z/m
  bool order_sum_is_one = true;
  // S4-type with even determinant-character order only:
  std::optional<Rat> r2_plus, r2_minus;    // order-2 split by sgn
  std::optional<Rat> q2k;                  // density of 2^k | ord(chi), k = ord_2(d)
  std::optional<bool> q2k_is_r2minus_r4;   // exact set identity
  std::optional<Rat> q2k_meet_sgn_plus;    // density of Q_{2^k} on the sgn = +1 part
  nlohmann::json to_json() const;
};

struct ApFieldReport {
  bool pass = true;
  long elements_checked = 0;
  std::vector<std::string> mismatches;
};

struct TheoremVerdict {
  GroupKind base;
  long twist_order = 1;
  long d = 0;
  ProjType type;
  std::optional<S4Branch> branch;
  CheckStatus status = CheckStatus::Pass;  // Pass / Fail / OutOfHypothesis
  std::optional<Subfield> trace_field;
  std::optional<Subfield> predicted;
  bool branch_routes_agree = true;  // character route vs set-identity route
  nlohmann::json to_json() const;
};

class SyntheticRep {
 public:
  SyntheticRep(GroupKind base, long twist_order);

  GroupKind base_kind() const { return base_; }
  long twist_order() const { return m_; }
  ProjType proj_type() const { return group_->proj_type(); }
  long det_char_order() const { return d_; }
  long ambient_modulus() const { return ambient_; }
  long element_count() const;  // |B| * m

  const MatGroup& base_group() const { return *group_; }

  // chi(g, c) = det(g) * zeta_m^(2c) as a reduced root-of-unity fraction
  // (exponent, order).
  std::pair<long, long> det_char_value(long elt_index, long c) const;
  long det_char_value_order(long elt_index, long c) const;

  // Q({ traces of rho }) inside Q(zeta_ambient).  The trace of (1, 1) is
  // 2 zeta_m and every trace is zeta_m^c times a base trace, so the trace
  // set generates the same field as the base traces together with zeta_m.
  Subfield trace_field() const;

  DensityReport densities() const;

  // Requires S4 type and even d.
  S4Branch refinement_branch() const;
  // both routes: (character equality test, set identity test)
  std::pair<S4Branch, S4Branch> refinement_branch_routes() const;

  // Q(trace of rho(g, c)) as a subfield of Q(zeta_ambient).
  Subfield ap_field(long elt_index, long c) const;

  // Every element's trace field against the projective-order case formula:
  //   order 1, 3 -> Q(sqrt(chi));  order 2 -> Q;
  //   order 4    -> Q(sqrt(2 chi));  order 5 -> Q(sqrt(5), sqrt(chi)).
  ApFieldReport verify_ap_fields() const;

  TheoremVerdict verify() const;

 private:
  GroupKind base_;
  long m_;
  const MatGroup* group_;
  long ambient_;
  long d_;
  long det_den_;                  // common order of base determinant values
  std::vector<long> det_exp_;     // det(g_i) = zeta_det_den^exp
  std::vector<CycElt> trace_values_;  // distinct base traces, conductor-reduced
  std::vector<long> trace_idx_;       // per element

  friend struct RepTestAccess;
};

// The field generated by u * tau for u = zeta_n^k and tau in Q(zeta_tau_mod),
// computed as an exact stabilizer inside (Z/ambient)^x.  tau must be
// conductor-reduced; both moduli must divide the ambient.
Subfield product_field(const CycElt& tau, long n, long k, long ambient);

// Trace field predicted from the projective type and the nebentypus order d
// (d even).  The branch argument is required exactly for S4 with
// ord_2(d) <= 2.
Subfield predicted_field(ProjType type, long d, std::optional<S4Branch> branch = {});

// Candidate nebentypus orders over a square-free level, derived from the
// cyclic-subgroup orders of the projective image: lcms of subsets, filtered
// to even values; for A4 a ramified cubic subextension forces 3 | d.
std::set<long> allowed_squarefree_orders(ProjType type);

struct SweepOptions {
  long max_twist = 60;
  bool parallel = false;
  int jobs = 0;  // 0 = hardware concurrency
  bool check_ap_fields = true;
  bool include_extended_s4_cover = true;  // include the det^2 = sgn model
};

struct SweepReport {
  std::vector<TheoremVerdict> verdicts;  // ordered by (base kind, twist order)
  std::vector<ApFieldReport> ap_reports;
  bool all_pass = true;        // every even-d rep verified
  bool ap_fields_pass = true;  // criterion: per-element formula everywhere
  bool branch_routes_pass = true;
  // realized (type, d [, branch]) combinations
  std::set<std::pair<ProjType, long>> realized;
  std::set<std::tuple<ProjType, long, S4Branch>> realized_s4;
  nlohmann::json to_json() const;
};

SweepReport sweep_theorems(const SweepOptions& options);

}  // namespace heckefield
