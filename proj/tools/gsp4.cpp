// gsp4: character tables of GSp(4,q) and Bessel-model dimensions.
//
//   gsp4 chartab --q 3 --cache .cache
//   gsp4 table   --q 3 --model N --format csv
//   gsp4 table   --q 3 --model R --a 1 --b 0 --c 1
//   gsp4 verify  --q 3 --suite all
//
// Every option can also be set through an environment variable GSP4_<NAME>,
// e.g. GSP4_Q=3 or GSP4_THREADS=4; command-line values take precedence.
//
// Exit status: 0 success, 1 a verification failed, 2 invalid input,
// 3 refused by the memory budget, 4 I/O or cache failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "gsp4/bessel.hpp"
#include "gsp4/parallel.hpp"
#include "gsp4/report.hpp"

using namespace gsp4;

namespace {

enum Exit { kOk = 0, kFailed = 1, kInvalid = 2, kBudget = 3, kIo = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int q = 0, p = 0, n = 0;
  std::string format = "text";
  std::string out;
  std::string cache;
  unsigned threads = 0;
  std::uint64_t seed = 0;
  std::string mem_budget = "1G";
  // table
  std::string model = "N";
  std::optional<int> a, b, c;
  std::optional<std::size_t> chi;
  // verify
  std::string suite = "all";
};

std::size_t parse_bytes(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("bad memory budget '" + s + "'");
  }
  const std::string unit = s.substr(used);
  double scale = 1;
  if (unit == "K" || unit == "KiB") scale = 1024.0;
  else if (unit == "M" || unit == "MiB") scale = 1024.0 * 1024;
  else if (unit == "G" || unit == "GiB") scale = 1024.0 * 1024 * 1024;
  else if (!unit.empty() && unit != "B") throw UsageError("bad memory budget unit '" + unit + "'");
  if (v <= 0) throw UsageError("memory budget must be positive");
  return static_cast<std::size_t>(v * scale);
}

std::shared_ptr<const Field> make_field(const RunConfig& cfg) {
  int p = cfg.p, n = cfg.n;
  if (cfg.q) {
    p = 0;
    for (int d = 2; d <= cfg.q; ++d)
      if (cfg.q % d == 0) {
        p = d;
        break;
      }
    n = 0;
    int rest = cfg.q;
    while (p && rest % p == 0) rest /= p, ++n;
    if (!p || rest != 1) throw UsageError("q = " + std::to_string(cfg.q) + " is not a prime power");
  }
  if (!p || !n) throw UsageError("give --q, or --p and --n");
  if (cfg.q && ((cfg.p && cfg.p != p) || (cfg.n && cfg.n != n)))
    throw UsageError("--q disagrees with --p/--n");
  try {
    return std::make_shared<const Field>(Field::make(p, n, {.max_order = 256, .xi_override = std::nullopt}));
  } catch (const FieldError& e) {
    throw UsageError(e.what());
  }
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void require_format(const RunConfig& cfg, bool csv_allowed) {
  if (cfg.format == "csv" && !csv_allowed) throw UsageError("this command has no CSV form");
}

TableOptions table_options(const RunConfig& cfg) {
  TableOptions opts;
  opts.enumeration.mem_budget_bytes = parse_bytes(cfg.mem_budget);
  return opts;
}

std::shared_ptr<const CharacterTable> get_table(const RunConfig& cfg, std::shared_ptr<const Field> f) {
  std::optional<std::filesystem::path> dir;
  if (!cfg.cache.empty()) dir = cfg.cache;
  CachedTable t = load_or_compute_table(std::move(f), dir, table_options(cfg));
  if (!t.rejected_reason.empty()) std::cerr << "discarded cache " << t.path->string() << ": " << t.rejected_reason << '\n';
  if (t.path) std::cerr << (t.loaded ? "loaded " : "wrote ") << t.path->string() << '\n';
  return t.table;
}

// ---------------------------------------------------------------------------

int cmd_chartab(const RunConfig& cfg) {
  require_format(cfg, false);
  auto f = make_field(cfg);
  auto table = get_table(cfg, f);
  const ClassData& cd = *table->classes;
  std::map<std::int64_t, int> multiset;
  for (auto d : table->degrees) ++multiset[d];

  Output out(cfg.out);
  if (cfg.format == "json") {
    Json degrees = Json::array();
    for (auto [d, m] : multiset) degrees.push_back(Json{{"degree", d}, {"multiplicity", m}});
    Json j{{"report", "chartab"},
           {"q", f->q()},
           {"field", field_json(*f)},
           {"group_order", cd.group_order()},
           {"classes", cd.num_classes()},
           {"irreducibles", table->num_rows()},
           {"degrees", degrees},
           {"conductor", table->conductor},
           {"prime", table->prime}};
    out.stream() << j.dump(2) << '\n';
  } else {
    out.stream() << "q = " << f->q() << ", |G| = " << cd.group_order() << "\n"
                 << "classes: " << cd.num_classes() << ", irreducibles: " << table->num_rows() << "\n"
                 << "conductor: " << table->conductor << ", prime: " << table->prime << "\n"
                 << "degrees:";
    for (auto [d, m] : multiset) out.stream() << ' ' << d << (m > 1 ? "^" + std::to_string(m) : "");
    out.stream() << '\n';
  }
  return kOk;
}

int cmd_table(const RunConfig& cfg) {
  auto f = make_field(cfg);
  const bool model_r = cfg.model == "R";
  std::vector<BesselDatum> data;
  if (model_r) {
    const int given = int(cfg.a.has_value()) + int(cfg.b.has_value()) + int(cfg.c.has_value());
    if (given == 3) {
      for (int v : {*cfg.a, *cfg.b, *cfg.c})
        if (v < 0 || v >= f->q()) throw UsageError("datum entries are field indices in [0, q)");
      const BesselDatum d = classify_datum(*f, *cfg.a, *cfg.b, *cfg.c);
      if (!d.nondegenerate()) throw UsageError("the Bessel model R requires b^2 - 4ac != 0");
      data.push_back(d);
    } else if (given == 0) {
      data = nondegenerate_data(*f);
    } else {
      throw UsageError("give all of --a, --b, --c or none (sweep)");
    }
  } else if (cfg.a || cfg.b || cfg.c || cfg.chi) {
    throw UsageError("--a/--b/--c/--chi apply to --model R only");
  }

  auto table = get_table(cfg, f);
  BesselEngine engine(table);
  Output out(cfg.out);
  if (!model_r) {
    const HomDimReportN rep = engine.report_N();
    if (cfg.format == "json") out.stream() << to_json(*f, rep).dump(2) << '\n';
    else if (cfg.format == "csv") out.stream() << to_csv(rep);
    else out.stream() << to_text(rep);
    return kOk;
  }

  std::vector<HomDimReportR> reports;
  for (const BesselDatum& d : data) {
    HomDimReportR rep = engine.report_R(d);
    if (cfg.chi) {
      std::erase_if(rep.records, [&](const HomRRecord& r) { return r.chi != *cfg.chi; });
      if (rep.records.empty()) throw UsageError("--chi " + std::to_string(*cfg.chi) + " is out of range");
    }
    reports.push_back(std::move(rep));
  }
  if (cfg.format == "csv") {
    out.stream() << to_csv(reports);
  } else if (cfg.format == "json") {
    if (reports.size() == 1) {
      out.stream() << to_json(*f, reports.front()).dump(2) << '\n';
    } else {
      Json arr = Json::array();
      for (const auto& r : reports) arr.push_back(to_json(*f, r));
      out.stream() << arr.dump(2) << '\n';
    }
  } else {
    for (const auto& r : reports) out.stream() << to_text(r) << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct SuiteResult {
  std::string name;
  bool passed = true;
  Json details = Json::object();
  std::string failure;
};

SuiteResult from_check(std::string name, const CheckReport& c) {
  SuiteResult r{std::move(name), c.passed, Json{{"checks", c.checks}}, c.failure};
  return r;
}

int cmd_verify(const RunConfig& cfg) {
  require_format(cfg, false);
  static const std::vector<std::string> all = {"lemmas", "canonical-forms", "types", "table-n", "table-r", "corollary"};
  std::vector<std::string> suites = cfg.suite == "all" ? all : std::vector<std::string>{cfg.suite};
  auto f = make_field(cfg);

  std::shared_ptr<const CharacterTable> table;
  std::optional<BesselEngine> engine;
  std::optional<TableNVerification> table_n;
  auto need_engine = [&]() -> const BesselEngine& {
    if (!engine) {
      table = get_table(cfg, f);
      engine.emplace(table);
    }
    return *engine;
  };
  auto need_table_n = [&]() -> const TableNVerification& {
    if (!table_n) table_n = verify_table_N(need_engine());
    return *table_n;
  };

  std::vector<SuiteResult> results;
  for (const auto& s : suites) {
    if (s == "lemmas") {
      CheckReport c = verify_lemmas(*f);
      const CheckReport counting = verify_counting_facts(*f);
      c.checks += counting.checks;
      if (!counting.passed) c.fail(counting.failure);
      results.push_back(from_check(s, c));
    } else if (s == "canonical-forms") {
      const CanonicalFormReport c = check_canonical_forms(*f, cfg.seed);
      results.push_back({s, c.passed, Json{{"orbits", c.orbits}, {"random_moves", c.random_moves}}, c.failure});
    } else if (s == "types") {
      const auto& classes = *need_engine().table().classes;
      const TypeSoundnessReport c = check_type_soundness(classes);
      results.push_back({s, c.passed,
                         Json{{"labelled_elements", c.labelled_elements},
                              {"distinct_labels", c.distinct_labels},
                              {"classes_hit", c.classes_hit}},
                         c.failure});
    } else if (s == "table-n") {
      const TableNVerification& v = need_table_n();
      SuiteResult r = from_check(s, v.check);
      Json matches = Json::array();
      for (const auto& m : v.matches) matches.push_back(Json{{"row", m.row}, {"candidates", m.candidates}});
      r.details["rows"] = v.report.rows.size();
      r.details["matches"] = matches;
      results.push_back(std::move(r));
    } else if (s == "table-r") {
      const TableRVerification v = verify_table_R(need_engine(), need_table_n());
      SuiteResult r = from_check(s, v.check);
      r.details["data"] = v.data;
      r.details["records"] = v.records;
      r.details["theta_rows_checked"] = v.theta_rows_checked;
      results.push_back(std::move(r));
    } else if (s == "corollary") {
      const TableRVerification v = verify_corollary(need_engine());
      SuiteResult r = from_check(s, v.check);
      r.details["two_chi_rows"] = v.two_chi_rows;
      r.details["dim_two_records"] = v.dim_two_records;
      results.push_back(std::move(r));
    } else {
      throw UsageError("unknown suite '" + s + "'");
    }
  }

  bool passed = true;
  for (const auto& r : results) passed = passed && r.passed;
  Output out(cfg.out);
  if (cfg.format == "json") {
    Json arr = Json::array();
    for (const auto& r : results) {
      Json j{{"suite", r.name}, {"passed", r.passed}, {"details", r.details}};
      if (!r.passed) j["counterexample"] = r.failure;
      arr.push_back(std::move(j));
    }
    out.stream() << Json{{"report", "verify"}, {"q", f->q()}, {"passed", passed}, {"suites", arr}}.dump(2) << '\n';
  } else {
    for (const auto& r : results)
      out.stream() << r.name << ": " << (r.passed ? "PASS" : "FAIL") << ' ' << r.details.dump() << '\n';
  }
  for (const auto& r : results)
    if (!r.passed)
      std::cerr << Json{{"suite", r.name}, {"q", f->q()}, {"counterexample", r.failure}}.dump() << '\n';
  return passed ? kOk : kFailed;
}

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--q", cfg.q, "field order (prime power)")->envname("GSP4_Q");
  cmd->add_option("--p", cfg.p, "field characteristic")->envname("GSP4_P");
  cmd->add_option("--n", cfg.n, "extension degree")->envname("GSP4_N");
  cmd->add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->envname("GSP4_FORMAT");
  cmd->add_option("--out", cfg.out, "output file (default stdout)")->envname("GSP4_OUT");
  cmd->add_option("--cache", cfg.cache, "character-table cache directory")->envname("GSP4_CACHE");
  cmd->add_option("--threads", cfg.threads, "worker threads (0 = all cores)")->envname("GSP4_THREADS");
  cmd->add_option("--seed", cfg.seed, "seed for sampled checks")->envname("GSP4_SEED");
  cmd->add_option("--mem-budget", cfg.mem_budget, "memory budget for group enumeration, e.g. 512M, 2G")
      ->envname("GSP4_MEM_BUDGET");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Character tables of GSp(4,q) and Bessel-model dimensions"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* chartab = app.add_subcommand("chartab", "compute (or load) the character table and summarize it");
  add_common(chartab, cfg);

  auto* table = app.add_subcommand("table", "Hom dimensions for the Siegel radical N or a Bessel subgroup R");
  add_common(table, cfg);
  table->add_option("--model", cfg.model, "N or R")->check(CLI::IsMember({"N", "R"}))->envname("GSP4_MODEL");
  table->add_option("--a", cfg.a, "datum entry a (field index)");
  table->add_option("--b", cfg.b, "datum entry b (field index)");
  table->add_option("--c", cfg.c, "datum entry c (field index)");
  table->add_option("--chi", cfg.chi, "only this torus character (index in the sweep)");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  add_common(verify, cfg);
  verify->add_option("--suite", cfg.suite, "suite to run")
      ->check(CLI::IsMember({"lemmas", "canonical-forms", "types", "table-n", "table-r", "corollary", "all"}))
      ->envname("GSP4_SUITE");

  CLI11_PARSE(app, argc, argv);
  set_thread_count(cfg.threads);

  try {
    if (chartab->parsed()) return cmd_chartab(cfg);
    if (table->parsed()) return cmd_table(cfg);
    return cmd_verify(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const BudgetExceeded& e) {
    std::cerr << "refused: " << e.what() << " (raise --mem-budget to override)\n";
    return kBudget;
  } catch (const CacheError& e) {
    std::cerr << "cache error: " << e.what() << '\n';
    return kIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const OrthogonalityError& e) {
    std::cerr << "character table failed validation: " << e.what() << '\n';
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
}
