#pragma once

// JSON and CSV forms of the Hom-dimension reports, and the on-disk cache of
// character tables.

#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gsp4/bessel.hpp"

namespace gsp4 {

using Json = nlohmann::ordered_json;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"index": x, "poly": "..."}
Json element_json(const Field& f, int x);
Json field_json(const Field& f);
FieldRecord field_record_from_json(const Json& j);

const char* to_string(TorusKind k);
RankClass rank_class_from_string(const std::string& s);
TorusKind torus_kind_from_string(const std::string& s);

Json to_json(const Field& f, const HomDimReportN& r);
Json to_json(const Field& f, const HomDimReportR& r);
HomDimReportN report_n_from_json(const Json& j);
HomDimReportR report_r_from_json(const Json& j);

/// Columns: q,row,degree,dim0,dim1,dim2,dim3,generic,cuspidal
std::string to_csv(const HomDimReportN& r);
/// Columns: q,a,b,c,rank_class,kind,row,degree,chi,chi_index,central_match,dim,s1,s2
/// (chi_index components joined by ';', s1 and s2 as n/d).
std::string to_csv(const std::vector<HomDimReportR>& reports);
HomDimReportN report_n_from_csv(const std::string& text);
std::vector<HomDimReportR> reports_r_from_csv(const std::string& text);

std::string to_text(const HomDimReportN& r);
std::string to_text(const HomDimReportR& r);

// ---------------------------------------------------------------------------
// Character-table cache.

/// 16 hex digits of FNV-1a over the serialized field record.
std::string field_hash(const Field& f);
std::filesystem::path cache_path(const std::filesystem::path& dir, const Field& f);

Json table_to_json(const CharacterTable& ct);
/// Rebuilds a table over freshly computed classes. Throws CacheError when the
/// stored field or class data disagree, OrthogonalityError when the values fail.
CharacterTable table_from_json(const Json& j, std::shared_ptr<const ClassData> classes);

struct CachedTable {
  std::shared_ptr<const CharacterTable> table;
  std::optional<std::filesystem::path> path;
  bool loaded = false;         // came from a valid cache file
  std::string rejected_reason;  // why an existing cache file was discarded
};

/// Loads and revalidates a cached table when dir is given, otherwise (or when
/// the cache is missing or invalid) computes it and writes the cache.
CachedTable load_or_compute_table(std::shared_ptr<const Field> f, const std::optional<std::filesystem::path>& dir,
                                  const TableOptions& opts = {});

}  // namespace gsp4
