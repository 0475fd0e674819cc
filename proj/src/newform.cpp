#include "heckefield/newform.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "heckefield/numutil.hpp"

namespace heckefield {

namespace {

bool is_squarefree(long n) {
  for (auto [p, e] : factorize(n)) {
    (void)p;
    if (e > 1) return false;
  }
  return true;
}

// the five possible fingerprints: c = 4, 0, 1, 2 and (3 +- sqrt(5))/2
struct Fingerprints {
  CycElt four = CycElt::integer(4);
  CycElt zero = CycElt::integer(0);
  CycElt one = CycElt::integer(1);
  CycElt two = CycElt::integer(2);
  CycElt golden_plus =
      (CycElt::integer(3) + named_surd(Surd::Sqrt5)) / CycElt::integer(2);
  CycElt golden_minus =
      (CycElt::integer(3) - named_surd(Surd::Sqrt5)) / CycElt::integer(2);
};

enum class CClass { R1, R2, R3, R4, R5, Other };

CClass classify_c(const CycElt& c, const Fingerprints& f) {
  if (c.equals(f.four)) return CClass::R1;
  if (c.equals(f.zero)) return CClass::R2;
  if (c.equals(f.one)) return CClass::R3;
  if (c.equals(f.two)) return CClass::R4;
  if (c.equals(f.golden_plus) || c.equals(f.golden_minus)) return CClass::R5;
  return CClass::Other;
}

}  // namespace

void NewformRecord::validate() const {
  if (level < 1) throw std::invalid_argument(label + ": level must be positive");
  if (character.parity() != -1)
    throw std::invalid_argument(label + ": nebentypus must be odd (chi(-1) = -1)");
  for (const auto& [p, a] : ap) {
    if (!is_prime(p)) throw std::invalid_argument(label + ": non-prime index " + std::to_string(p));
    if (level % p == 0)
      throw std::invalid_argument(label + ": stored prime divides the level");
    if (character.modulus() % p == 0 && character.modulus() > 1)
      throw std::invalid_argument(label + ": stored prime divides the character modulus");
    if (ambient % a.modulus() != 0)
      throw std::invalid_argument(label + ": a_p does not embed into the stated field");
  }
}

nlohmann::json NewformRecord::to_json() const {
  nlohmann::json apj = nlohmann::json::object();
  for (const auto& [p, a] : ap) apj[std::to_string(p)] = a.to_json();
  nlohmann::json j{{"label", label},
                   {"level", level},
                   {"char", character.to_json()},
                   {"ambient", ambient},
                   {"ap", apj}};
  if (field_poly) {
    nlohmann::json poly = nlohmann::json::array();
    for (const auto& c : *field_poly) poly.push_back(c.get_str());
    j["field_poly"] = poly;
  }
  return j;
}

NewformRecord NewformRecord::from_json(const nlohmann::json& j) {
  NewformRecord rec;
  rec.label = j.at("label").get<std::string>();
  rec.level = j.at("level").get<long>();
  rec.character = ConreyChar::from_json(j.at("char"));
  rec.ambient = j.at("ambient").get<long>();
  for (const auto& [key, value] : j.at("ap").items())
    rec.ap.emplace_back(std::stol(key), CycElt::from_json(value));
  std::sort(rec.ap.begin(), rec.ap.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  if (j.contains("field_poly")) {
    std::vector<Int> poly;
    for (const auto& c : j.at("field_poly")) {
      if (c.is_string())
        poly.emplace_back(c.get<std::string>());
      else
        poly.emplace_back(c.get<long>());
    }
    rec.field_poly = std::move(poly);
  }
  rec.validate();
  return rec;
}

nlohmann::json MetadataRecord::to_json() const {
  nlohmann::json j{{"label", label},
                   {"level", level},
                   {"char_order", char_order},
                   {"proj_type", to_string(proj_type)},
                   {"twist_minimal", twist_minimal},
                   {"squarefree", squarefree},
                   {"hecke_degree", hecke_degree}};
  if (hecke_field_tag) j["hecke_field"] = *hecke_field_tag;
  return j;
}

MetadataRecord MetadataRecord::from_json(const nlohmann::json& j) {
  MetadataRecord rec;
  rec.label = j.at("label").get<std::string>();
  rec.level = j.at("level").get<long>();
  rec.char_order = j.at("char_order").get<long>();
  std::string t = j.at("proj_type").get<std::string>();
  if (t == "A4") rec.proj_type = ProjType::A4;
  else if (t == "S4") rec.proj_type = ProjType::S4;
  else if (t == "A5") rec.proj_type = ProjType::A5;
  else throw std::invalid_argument(rec.label + ": projective type must be A4, S4 or A5");
  rec.twist_minimal = j.at("twist_minimal").get<bool>();
  rec.squarefree = j.at("squarefree").get<bool>();
  rec.hecke_degree = j.at("hecke_degree").get<long>();
  if (j.contains("hecke_field")) rec.hecke_field_tag = j.at("hecke_field").get<std::string>();
  if (rec.char_order % 2 != 0)
    throw std::invalid_argument(rec.label + ": nebentypus order must be even");
  if (rec.squarefree != is_squarefree(rec.level))
    throw std::invalid_argument(rec.label + ": square-free flag contradicts the level");
  return rec;
}

std::string to_string(TypeVerdict v) {
  switch (v) {
    case TypeVerdict::A4: return "A4";
    case TypeVerdict::S4: return "S4";
    case TypeVerdict::A5: return "A5";
    case TypeVerdict::DihedralSuspected: return "dihedral-suspected";
    case TypeVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

nlohmann::json ClassificationResult::to_json() const {
  nlohmann::json j{{"type", to_string(verdict)},
                   {"d", d},
                   {"confidence", confidence.get_str()},
                   {"dihedral_caveat", dihedral_caveat},
                   {"verified", verified},
                   {"notes", notes}};
  if (branch) j["branch"] = to_string(*branch);
  if (predicted) {
    j["predicted_field"] = predicted->to_json();
    j["predicted_field_name"] = predicted->describe();
  }
  return j;
}

ClassificationResult classify_type(const NewformRecord& rec, long n_min) {
  rec.validate();
  if (static_cast<long>(rec.ap.size()) < 20)
    throw std::invalid_argument(rec.label + ": classification needs at least 20 usable primes");

  Fingerprints f;
  ClassificationResult res;
  res.d = rec.character.order();

  long n = static_cast<long>(rec.ap.size());
  bool a4_ok = true, s4_ok = true, a5_ok = true;
  bool saw_r4 = false, saw_r5 = false;
  std::vector<CClass> classes;
  classes.reserve(rec.ap.size());
  for (const auto& [p, a] : rec.ap) {
    CycElt chi = rec.character.value(p);
    if (!chi.as_root_of_unity())
      throw std::invalid_argument(rec.label + ": chi(p) is not a root of unity");
    CycElt c = a * a / chi;
    // exact restatement of the defining relation
    if (!(a * a).equals(c * chi))
      throw std::logic_error(rec.label + ": a_p^2 != c_p chi(p)");
    CClass cls = classify_c(c, f);
    classes.push_back(cls);
    switch (cls) {
      case CClass::R1:
      case CClass::R2:
      case CClass::R3:
        break;
      case CClass::R4:
        a4_ok = false;
        a5_ok = false;
        saw_r4 = true;
        break;
      case CClass::R5:
        a4_ok = false;
        s4_ok = false;
        saw_r5 = true;
        break;
      case CClass::Other:
        a4_ok = s4_ok = a5_ok = false;
        break;
    }
  }

  if (!a4_ok && !s4_ok && !a5_ok) {
    res.verdict = TypeVerdict::DihedralSuspected;
    res.notes.push_back("a c-value lies outside every exotic fingerprint set");
    return res;
  }
  if (saw_r5 && a5_ok) {
    res.verdict = TypeVerdict::A5;
    res.confidence = Rat(1);
    res.dihedral_caveat = true;  // D_n with 5 | n shares the golden c-values
  } else if (saw_r4 && s4_ok) {
    res.verdict = TypeVerdict::S4;
    res.confidence = Rat(1);
    res.dihedral_caveat = true;  // D_n with 4 | n shares the value 2
  } else if (a4_ok && n >= n_min) {
    res.verdict = TypeVerdict::A4;
    // probability that an S4 form would show no order-4 witness among n
    // equidistributed primes: (18/24)^n
    Rat miss(18, 24);
    miss.canonicalize();
    Rat acc(1);
    for (long i = 0; i < n; ++i) acc *= miss;
    res.confidence = Rat(1) - acc;
    res.dihedral_caveat = true;
    res.notes.push_back("confidence bound is heuristic (equidistribution of Frobenius)");
  } else {
    res.verdict = TypeVerdict::Inconclusive;
    res.notes.push_back("no decisive witness among the stored primes");
    return res;
  }

  if (res.d % 2 != 0) {
    res.notes.push_back("nebentypus order is odd; no field prediction");
    return res;
  }

  if (res.verdict == TypeVerdict::S4) {
    long k = 0;
    for (long x = res.d; x % 2 == 0; x /= 2) ++k;
    // sgn(Frob_p) is pinned on the order-1, 3, 4 classes: +1, +1, -1.
    // Any disagreement with chi^(d/2) settles the branch as distinct.
    bool mismatch = false, witness = false;
    for (size_t i = 0; i < rec.ap.size(); ++i) {
      int expected_sgn = 0;
      if (classes[i] == CClass::R1 || classes[i] == CClass::R3) expected_sgn = 1;
      if (classes[i] == CClass::R4) expected_sgn = -1;
      if (expected_sgn == 0) continue;
      witness = true;
      long e = rec.character.value_exponent(rec.ap[i].first);
      int chi_half = (e * (res.d / 2)) % res.d == 0 ? 1 : -1;
      if (chi_half != expected_sgn) { mismatch = true; break; }
    }
    if (!witness) {
      res.notes.push_back("no prime outside the order-2 classes; branch undetermined");
      return res;
    }
    res.branch = mismatch ? S4Branch::SgnDistinct : S4Branch::SgnEqual;
    if (!mismatch)
      res.notes.push_back("branch sgn_equal is heuristic: no mismatch witnessed");
    res.predicted = predicted_field(ProjType::S4, res.d, res.branch);
  } else {
    res.predicted = predicted_field(
        res.verdict == TypeVerdict::A4 ? ProjType::A4 : ProjType::A5, res.d);
  }
  return res;
}

TraceFieldResult hecke_field_from_traces(const NewformRecord& rec) {
  std::vector<CycElt> traces;
  traces.reserve(rec.ap.size());
  for (const auto& [p, a] : rec.ap) traces.push_back(a);
  Subfield full = Subfield::fixing_group(traces, rec.ambient);
  size_t prefix = rec.ap.size() - rec.ap.size() / 4;
  std::vector<CycElt> head(traces.begin(), traces.begin() + prefix);
  Subfield partial = Subfield::fixing_group(head, rec.ambient);
  return {full, partial.equals(full)};
}

nlohmann::json PredictionCheck::to_json() const {
  nlohmann::json j{{"pass", pass},
                   {"field_match", field_match},
                   {"computed_field", computed_field},
                   {"predicted_field", predicted_field},
                   {"notes", notes}};
  if (poly_degree_match) j["poly_degree_match"] = *poly_degree_match;
  if (splitting_corroborated) j["splitting_corroborated"] = *splitting_corroborated;
  return j;
}

PredictionCheck check_prediction(const NewformRecord& rec, ClassificationResult& res) {
  PredictionCheck out;
  if (!res.predicted) {
    out.pass = false;
    out.notes.push_back("no prediction available for this record");
    res.verified = "fail";
    return out;
  }
  auto traced = hecke_field_from_traces(rec);
  out.computed_field = traced.field.describe();
  out.predicted_field = res.predicted->describe();
  out.field_match = traced.field.equals(*res.predicted);
  if (!traced.stable)
    out.notes.push_back("trace field had not stabilized over the first 3/4 of the primes");
  out.pass = out.field_match;

  if (rec.field_poly) {
    const auto& poly = *rec.field_poly;
    long deg = static_cast<long>(poly.size()) - 1;
    out.poly_degree_match = (deg == traced.field.degree());
    if (!*out.poly_degree_match) {
      out.pass = false;
      out.splitting_corroborated = false;
    } else {
      // splitting-law agreement over the first 500 usable primes: for an
      // abelian field, complete splitting matches a full root count mod q
      long cond = traced.field.conductor();
      long checked = 0;
      bool agree = true;
      for (long q = 2; checked < 500; ++q) {
        if (!is_prime(q)) continue;
        if (cond % q == 0 || rec.level % q == 0) continue;
        if (rec.character.modulus() > 1 && rec.character.modulus() % q == 0) continue;
        ++checked;
        bool split = traced.field.splits_completely(q);
        bool full_roots = count_roots_mod_q(poly, q) == deg;
        if (split != full_roots) { agree = false; break; }
      }
      out.splitting_corroborated = agree;
      if (!agree) out.pass = false;
    }
  }
  res.verified = out.pass ? "pass" : "fail";
  return out;
}

// ---------------------------------------------------------------------

std::string s4_field_tag(long d, S4Branch branch) {
  long k = 0;
  for (long x = d; x > 0 && x % 2 == 0; x /= 2) ++k;
  if (k == 1) return branch == S4Branch::SgnEqual ? "Q(zeta_d,sqrt(-2))" : "Q(zeta_4d)";
  if (k == 2) return branch == S4Branch::SgnEqual ? "Q(zeta_d)" : "Q(zeta_2d)";
  return "Q(zeta_2d)";
}

long CensusTable::cell(const std::string& row_label, long d) const {
  for (const auto& [label, counts] : rows) {
    if (label != row_label) continue;
    auto it = counts.find(d);
    return it == counts.end() ? 0 : it->second;
  }
  throw std::out_of_range("no table row named " + row_label);
}

const CensusTable& TableSet::table(const std::string& name) const {
  for (const auto& t : tables)
    if (t.name == name) return t;
  throw std::out_of_range("no table named " + name);
}

nlohmann::json TableSet::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : tables) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [label, counts] : t.rows) {
      nlohmann::json cj = nlohmann::json::object();
      for (auto [d, c] : counts) cj[std::to_string(d)] = c;
      rows.push_back({{"label", label}, {"counts", cj}});
    }
    arr.push_back({{"name", t.name}, {"columns", t.columns}, {"rows", rows}});
  }
  return {{"level_bound", level_bound}, {"tables", arr}};
}

std::string TableSet::render_text() const {
  std::ostringstream os;
  os << "twist-minimal exotic newforms, level <= " << level_bound << "\n";
  for (const auto& t : tables) {
    os << "\n" << t.name << "\n";
    size_t width = 0;
    for (const auto& [label, counts] : t.rows) width = std::max(width, label.size());
    os << std::string(width, ' ') << "  d:";
    for (long d : t.columns) os << "\t" << d;
    os << "\n";
    for (const auto& [label, counts] : t.rows) {
      os << label << std::string(width - label.size(), ' ') << "    ";
      for (long d : t.columns) {
        auto it = counts.find(d);
        os << "\t" << (it == counts.end() ? 0 : it->second);
      }
      os << "\n";
    }
  }
  return os.str();
}

TableSet build_tables(const std::vector<MetadataRecord>& records, long level_bound) {
  TableSet out;
  out.level_bound = level_bound;

  auto add = [](CensusTable& t, const std::string& row, long d) {
    for (auto& [label, counts] : t.rows)
      if (label == row) {
        ++counts[d];
        return;
      }
    throw std::logic_error("unknown row " + row);
  };

  CensusTable a4{"A4", {}, {{"general level", {}}, {"square-free level", {}}}};
  CensusTable a5{"A5", {}, {{"general level", {}}, {"square-free level", {}}}};
  CensusTable s4k1{"S4 ord2(d)=1",
                   {},
                   {{"general level, Q(zeta_d,sqrt(-2))", {}},
                    {"square-free level, Q(zeta_d,sqrt(-2))", {}},
                    {"general level, Q(zeta_4d)", {}},
                    {"square-free level, Q(zeta_4d)", {}}}};
  CensusTable s4k2{"S4 ord2(d)=2",
                   {},
                   {{"general level, Q(zeta_d)", {}},
                    {"square-free level, Q(zeta_d)", {}},
                    {"general level, Q(zeta_2d)", {}},
                    {"square-free level, Q(zeta_2d)", {}}}};
  CensusTable s4k3{"S4 ord2(d)>=3",
                   {},
                   {{"general level, Q(zeta_2d)", {}}, {"square-free level, Q(zeta_2d)", {}}}};

  for (const auto& rec : records) {
    if (!rec.twist_minimal || rec.level > level_bound) continue;
    long d = rec.char_order;
    switch (rec.proj_type) {
      case ProjType::A4:
        add(a4, "general level", d);
        if (rec.squarefree) add(a4, "square-free level", d);
        break;
      case ProjType::A5:
        add(a5, "general level", d);
        if (rec.squarefree) add(a5, "square-free level", d);
        break;
      case ProjType::S4: {
        long k = 0;
        for (long x = d; x > 0 && x % 2 == 0; x /= 2) ++k;
        std::string tag = rec.hecke_field_tag.value_or("unspecified");
        CensusTable& t = k == 1 ? s4k1 : (k == 2 ? s4k2 : s4k3);
        std::string general = "general level, " + tag;
        std::string sqfree = "square-free level, " + tag;
        if (k >= 3) {
          general = "general level, Q(zeta_2d)";
          sqfree = "square-free level, Q(zeta_2d)";
        }
        add(t, general, d);
        if (rec.squarefree) add(t, sqfree, d);
        break;
      }
    }
  }

  for (CensusTable* t : {&a4, &a5, &s4k1, &s4k2, &s4k3}) {
    std::set<long> cols;
    for (const auto& [label, counts] : t->rows)
      for (auto [d, c] : counts)
        if (c > 0) cols.insert(d);
    t->columns.assign(cols.begin(), cols.end());
    out.tables.push_back(*t);
  }
  return out;
}

// ---------------------------------------------------------------------

namespace {
nlohmann::json parse_line(const std::string& line, const std::string& path, long num) {
  try {
    return nlohmann::json::parse(line);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ":" + std::to_string(num) + ": bad JSON: " + e.what());
  }
}
}  // namespace

std::vector<NewformRecord> load_newform_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<NewformRecord> out;
  std::string line;
  long num = 0;
  while (std::getline(in, line)) {
    ++num;
    if (line.empty()) continue;
    out.push_back(NewformRecord::from_json(parse_line(line, path, num)));
  }
  return out;
}

std::vector<MetadataRecord> load_metadata_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<MetadataRecord> out;
  std::string line;
  long num = 0;
  while (std::getline(in, line)) {
    ++num;
    if (line.empty()) continue;
    out.push_back(MetadataRecord::from_json(parse_line(line, path, num)));
  }
  return out;
}

void save_newform_jsonl(const std::string& path, const std::vector<NewformRecord>& recs) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& r : recs) out << r.to_json().dump() << "\n";
}

void save_metadata_jsonl(const std::string& path, const std::vector<MetadataRecord>& recs) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& r : recs) out << r.to_json().dump() << "\n";
}

}  // namespace heckefield
