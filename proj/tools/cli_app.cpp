#include "cli_app.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "heckefield/lmfdb.hpp"
#include "heckefield/newform.hpp"
#include "heckefield/rep_engine.hpp"
#include "heckefield/report.hpp"

namespace heckefield {

namespace {

struct GlobalOpts {
  std::string format = "text";
  int jobs = 0;
  bool serial = false;
  bool no_timestamp = false;
  std::string config_path;
};

std::string iso_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void emit(const SuiteReport& report, const GlobalOpts& g, std::ostream& out) {
  if (g.format == "json") {
    nlohmann::json j = report.to_json();
    if (!g.no_timestamp) j["generated_at"] = iso_now();
    out << j.dump(2) << "\n";
  } else {
    out << report.render_text();
  }
}

Check check_of(const std::string& name, bool pass, nlohmann::json detail = {}) {
  return Check{name, pass ? CheckStatus::Pass : CheckStatus::Fail, std::move(detail)};
}

SuiteReport run_lemma_bl() {
  SuiteReport rep;
  rep.suite = "lemma-bl";
  for (GroupKind k : {GroupKind::TwoA4, GroupKind::TwoO, GroupKind::Gl23, GroupKind::TwoA5,
                      GroupKind::Gl23C4}) {
    auto r = MatGroup::get(k).verify_c_values();
    rep.checks.push_back(check_of("c-values over " + to_string(k), r.pass, r.to_json()));
  }
  return rep;
}

SuiteReport run_densities() {
  SuiteReport rep;
  rep.suite = "densities";
  struct Expected {
    GroupKind kind;
    std::vector<std::pair<long, Rat>> by_order;
  };
  const std::vector<Expected> table = {
      {GroupKind::TwoA4, {{1, Rat(1, 12)}, {2, Rat(3, 12)}, {3, Rat(8, 12)}}},
      {GroupKind::TwoO,
       {{1, Rat(1, 24)}, {2, Rat(9, 24)}, {3, Rat(8, 24)}, {4, Rat(6, 24)}}},
      {GroupKind::Gl23,
       {{1, Rat(1, 24)}, {2, Rat(9, 24)}, {3, Rat(8, 24)}, {4, Rat(6, 24)}}},
      {GroupKind::TwoA5,
       {{1, Rat(1, 60)}, {2, Rat(15, 60)}, {3, Rat(20, 60)}, {5, Rat(24, 60)}}},
  };
  for (const auto& exp : table) {
    SyntheticRep r(exp.kind, 1);
    auto d = r.densities();
    bool ok = d.order_sum_is_one && d.base_twist_agree;
    std::vector<std::pair<long, Rat>> expected = exp.by_order;
    std::sort(expected.begin(), expected.end());
    auto actual = d.by_order;
    std::sort(actual.begin(), actual.end());
    for (auto& [o, den] : expected) den.canonicalize();
    if (actual.size() != expected.size()) ok = false;
    for (size_t i = 0; ok && i < actual.size(); ++i)
      if (actual[i].first != expected[i].first || actual[i].second != expected[i].second)
        ok = false;
    if (proj_type_of(exp.kind) == ProjType::S4) {
      Rat p(3, 24), m(6, 24);
      p.canonicalize();
      m.canonicalize();
      if (!d.r2_plus || *d.r2_plus != p || !d.r2_minus || *d.r2_minus != m) ok = false;
    }
    rep.checks.push_back(
        check_of("projective order densities over " + to_string(exp.kind), ok, d.to_json()));
  }
  return rep;
}

SuiteReport run_squarefree_orders() {
  SuiteReport rep;
  rep.suite = "squarefree-orders";
  const std::vector<std::pair<ProjType, std::set<long>>> expected = {
      {ProjType::A4, {6}},
      {ProjType::S4, {2, 4, 6, 12}},
      {ProjType::A5, {2, 6, 10, 30}},
  };
  for (const auto& [type, want] : expected) {
    auto got = allowed_squarefree_orders(type);
    nlohmann::json detail{{"derived", std::vector<long>(got.begin(), got.end())},
                          {"expected", std::vector<long>(want.begin(), want.end())}};
    rep.checks.push_back(
        check_of("nebentypus orders over square-free level, " + to_string(type), got == want,
                 detail));
  }
  return rep;
}

SuiteReport run_theorems(long max_twist, bool parallel, int jobs) {
  SweepOptions opts;
  opts.max_twist = max_twist;
  opts.parallel = parallel;
  opts.jobs = jobs;
  SweepReport sweep = sweep_theorems(opts);
  SuiteReport rep;
  rep.suite = "theorems";
  for (const auto& v : sweep.verdicts) {
    Check c;
    c.name = to_string(v.base) + " m=" + std::to_string(v.twist_order);
    c.status = v.status;
    c.detail = v.to_json();
    rep.checks.push_back(std::move(c));
  }
  rep.checks.push_back(check_of("per-element trace-field formula", sweep.ap_fields_pass));
  rep.checks.push_back(
      check_of("sgn-branch routes agree (character vs set identity)", sweep.branch_routes_pass));
  return rep;
}

SuiteReport run_classify(const std::string& path, long n_min) {
  auto records = load_newform_jsonl(path);
  SuiteReport rep;
  rep.suite = "classify";
  for (const auto& rec : records) {
    auto res = classify_type(rec, n_min);
    nlohmann::json detail{{"classification", res.to_json()}};
    bool pass = false;
    if (res.predicted) {
      auto chk = check_prediction(rec, res);
      detail["prediction_check"] = chk.to_json();
      detail["classification"] = res.to_json();  // verified field updated
      pass = chk.pass;
    }
    rep.checks.push_back(check_of(rec.label, pass, detail));
  }
  return rep;
}

SuiteReport run_tables(const std::string& path, long level_bound, const GlobalOpts& g,
                       std::ostream& out) {
  auto records = load_metadata_jsonl(path);
  TableSet tables = build_tables(records, level_bound);
  SuiteReport rep;
  rep.suite = "tables";
  rep.checks.push_back(check_of("census tables", true, tables.to_json()));
  if (g.format == "text") out << tables.render_text();
  return rep;
}

std::string pretty_prediction_name(ProjType type, long d, std::optional<S4Branch> branch) {
  auto z = [](long n) { return "Q(zeta_" + std::to_string(n) + ")"; };
  switch (type) {
    case ProjType::A4: return z(2 * d);
    case ProjType::A5: return "Q(zeta_" + std::to_string(2 * d) + ", sqrt(5))";
    case ProjType::S4: {
      long k = 0;
      for (long x = d; x % 2 == 0; x /= 2) ++k;
      if (k >= 3) return z(2 * d);
      if (k == 1) {
        if (*branch == S4Branch::SgnDistinct) return z(4 * d);
        return d == 2 ? "Q(sqrt(-2))" : "Q(zeta_" + std::to_string(d) + ", sqrt(-2))";
      }
      return *branch == S4Branch::SgnDistinct ? z(2 * d) : z(d);
    }
  }
  return "?";
}

SuiteReport run_predict(const std::string& type_str, long d, const std::string& branch_str) {
  ProjType type;
  if (type_str == "a4" || type_str == "A4") type = ProjType::A4;
  else if (type_str == "s4" || type_str == "S4") type = ProjType::S4;
  else if (type_str == "a5" || type_str == "A5") type = ProjType::A5;
  else throw CLI::ValidationError("--type must be a4, s4 or a5");

  std::optional<S4Branch> branch;
  if (!branch_str.empty()) branch = s4_branch_from_string(branch_str);
  Subfield field = predicted_field(type, d, branch);
  SuiteReport rep;
  rep.suite = "predict";
  nlohmann::json detail{{"formula", pretty_prediction_name(type, d, branch)},
                        {"canonical", field.describe()},
                        {"conductor", field.conductor()},
                        {"degree", field.degree()},
                        {"field", field.to_json()}};
  rep.checks.push_back(check_of("predicted Hecke field for " + to_string(type) +
                                    ", d = " + std::to_string(d),
                                true, detail));
  return rep;
}

SuiteReport run_fetch(const std::string& out_path, long level_bound, const LmfdbConfig& cfg) {
  LmfdbClient client(cfg);
  auto records = client.fetch_metadata(level_bound);
  save_metadata_jsonl(out_path, records);
  SuiteReport rep;
  rep.suite = "fetch";
  rep.checks.push_back(check_of("fetched metadata",
                                true,
                                {{"records", records.size()}, {"output", out_path}}));
  return rep;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact verification and classification of exotic weight-one Hecke fields"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--jobs", g.jobs, "parallelism degree (0 = hardware)");
  app.add_flag("--serial", g.serial, "force single-threaded execution");
  app.add_flag("--no-timestamp", g.no_timestamp, "omit the timestamp from JSON reports");
  app.add_option("--config", g.config_path, "optional JSON config file (flags win)");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->require_subcommand(1);
  auto* v_bl = verify->add_subcommand("lemma-bl", "c-values over the matrix groups");
  auto* v_den = verify->add_subcommand("densities", "projective order densities");
  auto* v_sqf = verify->add_subcommand("squarefree-orders", "nebentypus orders, square-free level");
  auto* v_thm = verify->add_subcommand("theorems", "trace field vs prediction sweep");
  long max_twist = 60;
  v_thm->add_option("--max-twist", max_twist, "largest twist order in the sweep");

  auto* classify = app.add_subcommand("classify", "classify exact-trace newform fixtures");
  std::string classify_path;
  long n_min = 20;
  classify->add_option("fixture", classify_path, "JSONL fixture path")->required();
  classify->add_option("--n-min", n_min, "primes needed for an A4 call");

  auto* tables = app.add_subcommand("tables", "census tables from metadata records");
  std::string tables_path;
  long level_bound = 4000;
  tables->add_option("metadata", tables_path, "JSONL metadata path")->required();
  tables->add_option("--level-bound", level_bound, "count levels up to this bound");

  auto* predict = app.add_subcommand("predict", "predicted Hecke field from type and d");
  std::string p_type, p_branch;
  long p_d = 0;
  predict->add_option("--type", p_type, "a4 | s4 | a5")->required();
  predict->add_option("--d", p_d, "nebentypus order (even)")->required();
  predict->add_option("--branch", p_branch, "sgn_equal | sgn_distinct (S4, ord_2(d) <= 2)");

  auto* fetch = app.add_subcommand("fetch", "refresh metadata from the LMFDB API");
  std::string fetch_out, base_url, cache_dir;
  long fetch_bound = 4000;
  fetch->add_option("--out", fetch_out, "output JSONL path")->required();
  fetch->add_option("--level-bound", fetch_bound, "level bound");
  fetch->add_option("--base-url", base_url, "LMFDB base URL (or env LMFDB_BASE_URL)");
  fetch->add_option("--cache-dir", cache_dir, "response cache directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  // optional config file: fills values the flags left at defaults
  if (!g.config_path.empty()) {
    std::ifstream in(g.config_path);
    if (!in) {
      err << "cannot open config file " << g.config_path << "\n";
      return 3;
    }
    nlohmann::json cfg = nlohmann::json::parse(in, nullptr, false);
    if (cfg.is_discarded()) {
      err << "config file is not valid JSON\n";
      return 3;
    }
    if (cfg.contains("format") && !app.count("--format"))
      g.format = cfg["format"].get<std::string>();
    if (cfg.contains("jobs") && !app.count("--jobs")) g.jobs = cfg["jobs"].get<int>();
    if (cfg.contains("lmfdb_base_url") && base_url.empty())
      base_url = cfg["lmfdb_base_url"].get<std::string>();
    if (cfg.contains("cache_dir") && cache_dir.empty())
      cache_dir = cfg["cache_dir"].get<std::string>();
  }

  try {
    SuiteReport report;
    if (v_bl->parsed()) report = run_lemma_bl();
    else if (v_den->parsed()) report = run_densities();
    else if (v_sqf->parsed()) report = run_squarefree_orders();
    else if (v_thm->parsed()) report = run_theorems(max_twist, !g.serial, g.jobs);
    else if (classify->parsed()) report = run_classify(classify_path, n_min);
    else if (tables->parsed()) report = run_tables(tables_path, level_bound, g, out);
    else if (predict->parsed()) report = run_predict(p_type, p_d, p_branch);
    else if (fetch->parsed()) {
      LmfdbConfig cfg;
      if (const char* env = std::getenv("LMFDB_BASE_URL")) cfg.base_url = env;
      if (!base_url.empty()) cfg.base_url = base_url;
      if (!cache_dir.empty()) cfg.cache_dir = cache_dir;
      report = run_fetch(fetch_out, fetch_bound, cfg);
    }
    if (!(tables->parsed() && g.format == "text")) emit(report, g, out);
    return report.all_passed() ? 0 : 1;
  } catch (const CLI::ValidationError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace heckefield
