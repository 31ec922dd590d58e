#include "qpw/catalog.hpp"

#include <algorithm>

#include "qpw/errors.hpp"

namespace qpw {

namespace {

using nlohmann::json;

json order_to_json(const GroupOrder& o) { return {{"finite", o.finite}, {"value", o.value}}; }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing key ") + key);
  return j.at(key);
}

template <class T>
T typed(const json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad value for ") + key + ": " + e.what());
  }
}

GroupOrder order_from_json(const json& j, const char* key) {
  const json& o = field(j, key);
  return GroupOrder{typed<bool>(o, "finite"), typed<int>(o, "value")};
}

}  // namespace

json record_to_json(const ClassificationRecord& r) {
  json j;
  j["steps"] = r.steps.to_string();
  j["order_W"] = order_to_json(r.order_W);
  j["order_H"] = order_to_json(r.order_H);
  j["norm_ok"] = r.norm_ok;
  j["cns"] = r.cns;
  j["cns_tilde"] = r.cns_tilde;
  j["nature"] = to_string(r.nature);
  j["closed_form_tag"] = to_string(r.closed_form_tag);
  j["closed_form_parameter"] = r.closed_form_parameter;
  j["note"] = r.note;
  return j;
}

ClassificationRecord record_from_json(const json& j) {
  ClassificationRecord r;
  r.steps = StepSet::parse(typed<std::string>(j, "steps"));
  r.order_W = order_from_json(j, "order_W");
  r.order_H = order_from_json(j, "order_H");
  r.norm_ok = typed<bool>(j, "norm_ok");
  r.cns = typed<bool>(j, "cns");
  r.cns_tilde = typed<bool>(j, "cns_tilde");
  const auto nature = nature_from_string(typed<std::string>(j, "nature"));
  if (!nature) throw ParseError("unknown nature");
  r.nature = *nature;
  const auto tag = closed_form_tag_from_string(typed<std::string>(j, "closed_form_tag"));
  if (!tag) throw ParseError("unknown closed_form_tag");
  r.closed_form_tag = *tag;
  r.closed_form_parameter = typed<std::string>(j, "closed_form_parameter");
  r.note = typed<std::string>(j, "note");
  return r;
}

CatalogFile build_catalog(int n_max) {
  CatalogFile c;
  for (StepSet s : census_models()) c.models.push_back(classify(s, n_max));
  std::sort(c.models.begin(), c.models.end(),
            [](const ClassificationRecord& a, const ClassificationRecord& b) { return a.steps < b.steps; });
  return c;
}

std::string serialize(const CatalogFile& c) {
  json j;
  j["schema_version"] = c.schema_version;
  j["generated_with"] = c.generated_with;
  json models = json::array();
  for (const ClassificationRecord& r : c.models) models.push_back(record_to_json(r));
  j["models"] = std::move(models);
  return j.dump(2) + "\n";
}

CatalogFile parse_catalog(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  CatalogFile c;
  c.schema_version = typed<int>(j, "schema_version");
  if (c.schema_version != kCatalogSchemaVersion) {
    throw ParseError("unsupported schema_version " + std::to_string(c.schema_version));
  }
  c.generated_with = typed<std::string>(j, "generated_with");
  const json& models = field(j, "models");
  if (!models.is_array()) throw ParseError("models is not an array");
  for (const json& m : models) c.models.push_back(record_from_json(m));
  return c;
}

CatalogSummary summarize(const CatalogFile& c) {
  CatalogSummary s;
  for (const ClassificationRecord& r : c.models) {
    ++s.models;
    if (r.order_H.finite) {
      ++s.finite;
      s.order4 += r.order_H.value == 4;
      s.order6 += r.order_H.value == 6;
      s.order8 += r.order_H.value == 8;
    } else {
      ++s.exceeds_bound;
    }
    switch (r.nature) {
      case Nature::Algebraic: ++s.algebraic; break;
      case Nature::HolonomicNonAlgebraic: ++s.holonomic_nonalgebraic; break;
      case Nature::NotCovered: ++s.not_covered; break;
    }
  }
  return s;
}

std::vector<std::string> summary_lines(const CatalogSummary& s) {
  auto n = [](int v) { return std::to_string(v); };
  return {
      "models:" + n(s.models),
      "finite:" + n(s.finite) + " infinite-or-exceeds-bound:" + n(s.exceeds_bound),
      "algebraic:" + n(s.algebraic) + " holonomic-nonalgebraic:" + n(s.holonomic_nonalgebraic),
      "order4:" + n(s.order4) + " order6:" + n(s.order6) + " order8:" + n(s.order8),
  };
}

}  // namespace qpw
