#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dirichlet.hpp"
#include "rep_engine.hpp"
#include "subfield.hpp"

// Ingested newform data: exact trace fixtures and census metadata.
// Classification reads the exact fingerprint c_p = a_p^2 / chi(p); the
// projective type determines which c-values can occur, and the nebentypus
// order then predicts the Hecke field.

namespace heckefield {

struct NewformRecord {
  std::string label;
  long level = 0;
  ConreyChar character{1, 1};
  long ambient = 1;                                // a_p live in Q(zeta_ambient)
  std::vector<std::pair<long, CycElt>> ap;         // sorted by prime
  std::optional<std::vector<Int>> field_poly;      // coefficient field, optional

  // throws on malformed data: p | N, wrong parity, non-embeddable a_p
  void validate() const;

  nlohmann::json to_json() const;
  static NewformRecord from_json(const nlohmann::json& j);
};

struct MetadataRecord {
  std::string label;
  long level = 0;
  long char_order = 0;
  ProjType proj_type = ProjType::A4;
  bool twist_minimal = false;
  bool squarefree = false;
  long hecke_degree = 0;
  std::optional<std::string> hecke_field_tag;

  nlohmann::json to_json() const;
  static MetadataRecord from_json(const nlohmann::json& j);
};

enum class TypeVerdict { A4, S4, A5, DihedralSuspected, Inconclusive };
std::string to_string(TypeVerdict v);

struct ClassificationResult {
  TypeVerdict verdict = TypeVerdict::Inconclusive;
  long d = 0;                     // nebentypus order
  Rat confidence = Rat(0);        // exact lower bound under equidistribution
  bool dihedral_caveat = false;   // small dihedral images can mimic the fingerprint
  std::optional<S4Branch> branch;
  std::optional<Subfield> predicted;
  std::string verified = "unchecked";  // pass | fail | unchecked
  std::vector<std::string> notes;

  nlohmann::json to_json() const;
};

// Decision rule on the exact c_p values; requires at least 20 usable primes.
// n_min gates the A4 call (its witness is the absence of other values).
ClassificationResult classify_type(const NewformRecord& rec, long n_min = 20);

struct TraceFieldResult {
  Subfield field;
  bool stable;  // unchanged when the last quarter of the primes is dropped
};
TraceFieldResult hecke_field_from_traces(const NewformRecord& rec);

struct PredictionCheck {
  bool pass = false;
  bool field_match = false;
  std::optional<bool> poly_degree_match;
  std::optional<bool> splitting_corroborated;
  std::string computed_field;
  std::string predicted_field;
  std::vector<std::string> notes;
  nlohmann::json to_json() const;
};
// Compares the enumerated trace field with the prediction; with a stored
// field polynomial additionally corroborates by degree and by the splitting
// law over the first 500 usable primes.  Updates res.verified.
PredictionCheck check_prediction(const NewformRecord& rec, ClassificationResult& res);

// ---------------------------------------------------------------------
// census tables
// ---------------------------------------------------------------------

struct CensusTable {
  std::string name;
  std::vector<long> columns;  // d values
  std::vector<std::pair<std::string, std::map<long, long>>> rows;

  long cell(const std::string& row_label, long d) const;
};

struct TableSet {
  long level_bound = 0;
  std::vector<CensusTable> tables;

  const CensusTable& table(const std::string& name) const;
  nlohmann::json to_json() const;
  std::string render_text() const;
};

// Counts of twist-minimal records by type, nebentypus order, square-free
// flag and (for S4) the Hecke-field alternative.  A pure fold: permuting
// the input never changes the output.
TableSet build_tables(const std::vector<MetadataRecord>& records, long level_bound);

// canonical S4 Hecke-field tags used by the metadata fixtures
std::string s4_field_tag(long d, S4Branch branch);

std::vector<NewformRecord> load_newform_jsonl(const std::string& path);
std::vector<MetadataRecord> load_metadata_jsonl(const std::string& path);
void save_newform_jsonl(const std::string& path, const std::vector<NewformRecord>& recs);
void save_metadata_jsonl(const std::string& path, const std::vector<MetadataRecord>& recs);

}  // namespace heckefield
