#include "gsp4/report.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace gsp4 {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> lines;
  for (auto& line : split(text, '\n'))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

void expect_header(const std::vector<std::string>& lines, const std::string& header) {
  if (lines.empty() || lines.front() != header) throw ParseError("unexpected CSV header, want: " + header);
}

std::int64_t to_int(const std::string& s) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw ParseError("not an integer: '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("not an integer: '" + s + "'");
  }
}

bool to_bool(const std::string& s) {
  if (s == "1" || s == "true") return true;
  if (s == "0" || s == "false") return false;
  throw ParseError("not a boolean: '" + s + "'");
}

std::string rational_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(to_int(s));
  const std::int64_t den = to_int(s.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator: '" + s + "'");
  return Rational(to_int(s.substr(0, slash)), den);
}

std::string join_indices(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ";" : "") + std::to_string(v[i]);
  return out;
}

std::vector<int> split_indices(const std::string& s) {
  std::vector<int> out;
  if (s.empty()) return out;
  for (const auto& part : split(s, ';')) out.push_back(static_cast<int>(to_int(part)));
  return out;
}

template <class T>
T get(const Json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad value for '") + key + "': " + e.what());
  }
}

int element_index(const Json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
  return get<int>(j.at(key), "index");
}

Json datum_json(const Field& f, const BesselDatum& d) {
  return Json{{"a", element_json(f, d.a)},
              {"b", element_json(f, d.b)},
              {"c", element_json(f, d.c)},
              {"rank_class", to_string(d.rank_class)},
              {"split", d.split}};
}

BesselDatum datum_from_json(const Json& j) {
  BesselDatum d;
  d.a = element_index(j, "a");
  d.b = element_index(j, "b");
  d.c = element_index(j, "c");
  d.rank_class = rank_class_from_string(get<std::string>(j, "rank_class"));
  d.split = get<bool>(j, "split");
  return d;
}

Json cyclotomic_json(const Cyclotomic& v, int conductor) {
  return v.conductor() == conductor ? Json(v.coefficients()) : Json(v.promote(conductor).coefficients());
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

Json element_json(const Field& f, int x) { return Json{{"index", x}, {"poly", f.to_string(x)}}; }

Json field_json(const Field& f) {
  const FieldRecord r = f.record();
  return Json{{"p", r.p},
              {"n", r.n},
              {"q", f.q()},
              {"modulus", r.modulus},
              {"generator", element_json(f, r.generator)},
              {"xi", element_json(f, r.xi)}};
}

FieldRecord field_record_from_json(const Json& j) {
  FieldRecord r;
  r.p = get<int>(j, "p");
  r.n = get<int>(j, "n");
  r.modulus = get<std::vector<int>>(j, "modulus");
  r.generator = element_index(j, "generator");
  r.xi = element_index(j, "xi");
  return r;
}

const char* to_string(TorusKind k) { return k == TorusKind::split ? "split" : "nonsplit"; }

RankClass rank_class_from_string(const std::string& s) {
  for (RankClass r : {RankClass::rank0, RankClass::rank1, RankClass::rank2_square, RankClass::rank2_nonsquare,
                      RankClass::all_zero, RankClass::b_zero_ac_nonzero, RankClass::b_nonzero_eps_plus,
                      RankClass::b_nonzero_eps_minus})
    if (s == to_string(r)) return r;
  throw ParseError("unknown rank class '" + s + "'");
}

TorusKind torus_kind_from_string(const std::string& s) {
  if (s == "split") return TorusKind::split;
  if (s == "nonsplit") return TorusKind::nonsplit;
  throw ParseError("unknown torus kind '" + s + "'");
}

// ---------------------------------------------------------------------------

Json to_json(const Field& f, const HomDimReportN& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back(Json{{"row", row.row},
                        {"degree", row.degree},
                        {"dims", row.dims},
                        {"generic", row.generic},
                        {"cuspidal", row.cuspidal}});
  return Json{{"report", "hom_n"}, {"q", r.q}, {"field", field_json(f)}, {"rows", rows}};
}

Json to_json(const Field& f, const HomDimReportR& r) {
  Json records = Json::array();
  for (const auto& rec : r.records)
    records.push_back(Json{{"row", rec.row},
                           {"degree", rec.degree},
                           {"chi", rec.chi},
                           {"chi_index", rec.chi_index},
                           {"central_match", rec.central_match},
                           {"dim", rec.dim},
                           {"s1", rational_string(rec.s1)},
                           {"s2", rational_string(rec.s2)}});
  return Json{{"report", "hom_r"},
              {"q", r.q},
              {"field", field_json(f)},
              {"datum", datum_json(f, r.datum)},
              {"kind", to_string(r.kind)},
              {"records", records}};
}

HomDimReportN report_n_from_json(const Json& j) {
  if (get<std::string>(j, "report") != "hom_n") throw ParseError("not a hom_n report");
  HomDimReportN r;
  r.q = get<int>(j, "q");
  for (const auto& row : get<Json>(j, "rows")) {
    HomNRow x;
    x.row = get<std::size_t>(row, "row");
    x.degree = get<std::int64_t>(row, "degree");
    x.dims = get<std::array<std::int64_t, 4>>(row, "dims");
    x.generic = get<bool>(row, "generic");
    x.cuspidal = get<bool>(row, "cuspidal");
    r.rows.push_back(x);
  }
  return r;
}

HomDimReportR report_r_from_json(const Json& j) {
  if (get<std::string>(j, "report") != "hom_r") throw ParseError("not a hom_r report");
  HomDimReportR r;
  r.q = get<int>(j, "q");
  r.datum = datum_from_json(get<Json>(j, "datum"));
  r.kind = torus_kind_from_string(get<std::string>(j, "kind"));
  for (const auto& rec : get<Json>(j, "records")) {
    HomRRecord x;
    x.row = get<std::size_t>(rec, "row");
    x.degree = get<std::int64_t>(rec, "degree");
    x.chi = get<std::size_t>(rec, "chi");
    x.chi_index = get<std::vector<int>>(rec, "chi_index");
    x.central_match = get<bool>(rec, "central_match");
    x.dim = get<std::int64_t>(rec, "dim");
    x.s1 = parse_rational(get<std::string>(rec, "s1"));
    x.s2 = parse_rational(get<std::string>(rec, "s2"));
    r.records.push_back(std::move(x));
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {
const char* const kHeaderN = "q,row,degree,dim0,dim1,dim2,dim3,generic,cuspidal";
const char* const kHeaderR = "q,a,b,c,rank_class,kind,row,degree,chi,chi_index,central_match,dim,s1,s2";
}  // namespace

std::string to_csv(const HomDimReportN& r) {
  std::ostringstream out;
  out << kHeaderN << '\n';
  for (const auto& row : r.rows) {
    out << r.q << ',' << row.row << ',' << row.degree;
    for (auto d : row.dims) out << ',' << d;
    out << ',' << int(row.generic) << ',' << int(row.cuspidal) << '\n';
  }
  return out.str();
}

std::string to_csv(const std::vector<HomDimReportR>& reports) {
  std::ostringstream out;
  out << kHeaderR << '\n';
  for (const auto& r : reports)
    for (const auto& rec : r.records)
      out << r.q << ',' << r.datum.a << ',' << r.datum.b << ',' << r.datum.c << ',' << to_string(r.datum.rank_class)
          << ',' << to_string(r.kind) << ',' << rec.row << ',' << rec.degree << ',' << rec.chi << ','
          << join_indices(rec.chi_index) << ',' << int(rec.central_match) << ',' << rec.dim << ','
          << rational_string(rec.s1) << ',' << rational_string(rec.s2) << '\n';
  return out.str();
}

HomDimReportN report_n_from_csv(const std::string& text) {
  const auto lines = csv_lines(text);
  expect_header(lines, kHeaderN);
  HomDimReportN r;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split(lines[i], ',');
    if (f.size() != 9) throw ParseError("line " + std::to_string(i + 1) + ": expected 9 fields");
    r.q = static_cast<int>(to_int(f[0]));
    HomNRow row;
    row.row = static_cast<std::size_t>(to_int(f[1]));
    row.degree = to_int(f[2]);
    for (int k = 0; k < 4; ++k) row.dims[k] = to_int(f[3 + k]);
    row.generic = to_bool(f[7]);
    row.cuspidal = to_bool(f[8]);
    r.rows.push_back(row);
  }
  return r;
}

std::vector<HomDimReportR> reports_r_from_csv(const std::string& text) {
  const auto lines = csv_lines(text);
  expect_header(lines, kHeaderR);
  std::vector<HomDimReportR> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split(lines[i], ',');
    if (f.size() != 14) throw ParseError("line " + std::to_string(i + 1) + ": expected 14 fields");
    BesselDatum d;
    d.a = static_cast<int>(to_int(f[1]));
    d.b = static_cast<int>(to_int(f[2]));
    d.c = static_cast<int>(to_int(f[3]));
    d.rank_class = rank_class_from_string(f[4]);
    const TorusKind kind = torus_kind_from_string(f[5]);
    d.split = kind == TorusKind::split;
    const int q = static_cast<int>(to_int(f[0]));
    if (out.empty() || out.back().q != q || !(out.back().datum == d)) {
      HomDimReportR r;
      r.q = q;
      r.datum = d;
      r.kind = kind;
      out.push_back(std::move(r));
    }
    HomRRecord rec;
    rec.row = static_cast<std::size_t>(to_int(f[6]));
    rec.degree = to_int(f[7]);
    rec.chi = static_cast<std::size_t>(to_int(f[8]));
    rec.chi_index = split_indices(f[9]);
    rec.central_match = to_bool(f[10]);
    rec.dim = to_int(f[11]);
    rec.s1 = parse_rational(f[12]);
    rec.s2 = parse_rational(f[13]);
    out.back().records.push_back(std::move(rec));
  }
  return out;
}

std::string to_text(const HomDimReportN& r) {
  static const char* const odd_cols[] = {"rank0", "rank1", "sq", "nonsq"};
  static const char* const even_cols[] = {"zero", "b=0", "eps+", "eps-"};
  const bool even = r.q % 2 == 0;
  std::ostringstream out;
  out << "Hom_N dimensions, q = " << r.q << ", " << r.rows.size() << " irreducible characters\n";
  out << std::setw(5) << "row" << std::setw(9) << "degree";
  for (int k = 0; k < 4; ++k) out << std::setw(7) << (even ? even_cols[k] : odd_cols[k]);
  out << "  generic cuspidal\n";
  for (const auto& row : r.rows) {
    out << std::setw(5) << row.row << std::setw(9) << row.degree;
    for (auto d : row.dims) out << std::setw(7) << d;
    out << std::setw(9) << (row.generic ? "yes" : "no") << std::setw(9) << (row.cuspidal ? "yes" : "no") << '\n';
  }
  return out.str();
}

std::string to_text(const HomDimReportR& r) {
  std::ostringstream out;
  out << "Hom_R dimensions, q = " << r.q << ", datum (" << r.datum.a << "," << r.datum.b << "," << r.datum.c
      << "), " << to_string(r.kind) << " torus\n";
  out << std::setw(5) << "row" << std::setw(9) << "degree" << std::setw(6) << "chi" << std::setw(10) << "index"
      << std::setw(6) << "dim" << std::setw(10) << "S1" << std::setw(10) << "S2" << '\n';
  for (const auto& rec : r.records) {
    if (!rec.central_match) continue;
    out << std::setw(5) << rec.row << std::setw(9) << rec.degree << std::setw(6) << rec.chi << std::setw(10)
        << join_indices(rec.chi_index) << std::setw(6) << rec.dim << std::setw(10) << rational_string(rec.s1)
        << std::setw(10) << rational_string(rec.s2) << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------

std::string field_hash(const Field& f) {
  const FieldRecord r = f.record();
  const Json j{{"p", r.p}, {"n", r.n}, {"modulus", r.modulus}, {"generator", r.generator}, {"xi", r.xi}};
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(j.dump())));
  return buf;
}

std::filesystem::path cache_path(const std::filesystem::path& dir, const Field& f) {
  return dir / ("chartab-q" + std::to_string(f.q()) + "-" + field_hash(f) + ".json");
}

Json table_to_json(const CharacterTable& ct) {
  const ClassData& cd = *ct.classes;
  const MatrixArith& arith = cd.arith();
  Json classes = Json::array();
  for (std::size_t k = 0; k < cd.num_classes(); ++k)
    classes.push_back(Json{{"representative", arith.pack(cd.representative(k))},
                           {"size", cd.class_size(k)},
                           {"order", cd.element_order(k)}});
  Json chars = Json::array();
  for (const auto& row : ct.chars) {
    Json values = Json::array();
    for (std::size_t k = 0; k < row.size(); ++k) values.push_back(cyclotomic_json(row[k], cd.element_order(k)));
    chars.push_back(std::move(values));
  }
  return Json{{"format", "gsp4-character-table"},
              {"version", 1},
              {"field", field_json(cd.field())},
              {"group_order", cd.group_order()},
              {"classes", classes},
              {"conductor", ct.conductor},
              {"prime", ct.prime},
              {"degrees", ct.degrees},
              {"characters", chars}};
}

CharacterTable table_from_json(const Json& j, std::shared_ptr<const ClassData> classes) {
  const ClassData& cd = *classes;
  if (get<std::string>(j, "format") != "gsp4-character-table" || get<int>(j, "version") != 1)
    throw CacheError("unrecognized cache format");
  if (field_record_from_json(get<Json>(j, "field")) != cd.field().record())
    throw CacheError("cache was written for a different field");
  if (get<std::uint64_t>(j, "group_order") != cd.group_order()) throw CacheError("group order mismatch");
  const Json& cls = get<Json>(j, "classes");
  if (cls.size() != cd.num_classes()) throw CacheError("class count mismatch");
  const MatrixArith& arith = cd.arith();
  for (std::size_t k = 0; k < cd.num_classes(); ++k) {
    if (get<std::uint64_t>(cls[k], "representative") != arith.pack(cd.representative(k)) ||
        get<std::uint64_t>(cls[k], "size") != cd.class_size(k) || get<int>(cls[k], "order") != cd.element_order(k))
      throw CacheError("class " + std::to_string(k) + " differs from the recomputed class data");
  }
  CharacterTable ct;
  ct.classes = std::move(classes);
  ct.conductor = get<int>(j, "conductor");
  if (ct.conductor != cd.exponent()) throw CacheError("conductor differs from the group exponent");
  ct.prime = get<std::uint64_t>(j, "prime");
  ct.degrees = get<std::vector<std::int64_t>>(j, "degrees");
  const Json& chars = get<Json>(j, "characters");
  if (chars.size() != cd.num_classes() || ct.degrees.size() != cd.num_classes())
    throw CacheError("table is not square");
  for (const auto& row : chars) {
    if (row.size() != cd.num_classes()) throw CacheError("row length mismatch");
    std::vector<Cyclotomic> values;
    values.reserve(row.size());
    for (std::size_t k = 0; k < row.size(); ++k) {
      try {
        values.push_back(Cyclotomic::from_coefficients(cd.element_order(k), row[k].get<std::vector<std::int64_t>>()));
      } catch (const std::exception& e) {
        throw CacheError(std::string("bad character value: ") + e.what());
      }
    }
    ct.chars.push_back(std::move(values));
  }
  for (std::size_t r = 0; r < ct.num_rows(); ++r)
    if (ct.chars[r][cd.identity_class()].to_integer() != ct.degrees[r])
      throw CacheError("stored degree differs from the value at the identity");
  verify_orthogonality(ct);
  return ct;
}

CachedTable load_or_compute_table(std::shared_ptr<const Field> f, const std::optional<std::filesystem::path>& dir,
                                  const TableOptions& opts) {
  CachedTable out;
  auto classes = compute_group_classes(f, opts.enumeration);
  if (dir) {
    out.path = cache_path(*dir, *f);
    if (std::filesystem::exists(*out.path)) {
      try {
        std::ifstream in(*out.path);
        const Json j = Json::parse(in);
        out.table = std::make_shared<const CharacterTable>(table_from_json(j, classes));
        out.loaded = true;
        return out;
      } catch (const std::exception& e) {
        out.rejected_reason = e.what();
      }
    }
  }
  CharacterTable ct = classes->is_center_product() ? even_q_assembly(dixon_schneider(classes->base()))
                                                   : dixon_schneider(classes);
  verify_orthogonality(ct);
  out.table = std::make_shared<const CharacterTable>(std::move(ct));
  if (dir) {
    std::filesystem::create_directories(*dir);
    const auto tmp = std::filesystem::path(out.path->string() + ".tmp");
    {
      std::ofstream o(tmp);
      if (!o) throw CacheError("cannot write " + tmp.string());
      o << table_to_json(*out.table).dump() << '\n';
    }
    std::filesystem::rename(tmp, *out.path);
  }
  return out;
}

}  // namespace gsp4
