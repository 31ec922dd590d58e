#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "qpw/classifier.hpp"

namespace qpw {

inline constexpr int kCatalogSchemaVersion = 1;
inline constexpr const char* kToolVersion = "qpw 1.0.0";

struct CatalogFile {
  int schema_version = kCatalogSchemaVersion;
  std::string generated_with = kToolVersion;
  std::vector<ClassificationRecord> models;  // sorted by mask
  bool operator==(const CatalogFile&) const = default;
};

/// Keys are the ClassificationRecord field names. Every value is exact:
/// steps as compass tokens, group orders as {"finite", "value"}.
nlohmann::json record_to_json(const ClassificationRecord& r);
/// Throws ParseError on a missing key or an unknown enumerator.
ClassificationRecord record_from_json(const nlohmann::json& j);

/// Classifies every census survivor and sorts the records by mask.
CatalogFile build_catalog(int n_max = 15);

/// Two-space indented JSON followed by a newline.
std::string serialize(const CatalogFile& c);
/// Throws ParseError.
CatalogFile parse_catalog(const std::string& text);

struct CatalogSummary {
  int models = 0;
  int finite = 0;
  int exceeds_bound = 0;
  int order4 = 0;
  int order6 = 0;
  int order8 = 0;
  int algebraic = 0;
  int holonomic_nonalgebraic = 0;
  int not_covered = 0;
};
CatalogSummary summarize(const CatalogFile& c);

/// "finite:23 infinite-or-exceeds-bound:56", "algebraic:4 holonomic-nonalgebraic:19",
/// "order4:16 order6:5 order8:2", in that order, preceded by the model count.
std::vector<std::string> summary_lines(const CatalogSummary& s);

}  // namespace qpw
