#include "dqtk/quality.hpp"

#include "dqtk/dataset.hpp"

namespace dqtk {

std::string to_string(MetricId id) {
  switch (id) {
    case MetricId::ClassOverlap: return "class_overlap";
    case MetricId::LabelPurity: return "label_purity";
    case MetricId::ClassParity: return "class_parity";
    case MetricId::FeatureRelevance: return "feature_relevance";
    case MetricId::DataHomogeneity: return "data_homogeneity";
    case MetricId::DataFairness: return "data_fairness";
    case MetricId::CorrelationDetection: return "correlation_detection";
    case MetricId::DataCompleteness: return "data_completeness";
    case MetricId::OutlierDetection: return "outlier_detection";
    case MetricId::DataDuplicates: return "data_duplicates";
  }
  throw Error("bad metric id");
}

MetricId metric_from_string(const std::string& s) {
  for (MetricId id : kAllMetrics) {
    if (to_string(id) == s) return id;
  }
  throw Error("unknown metric_id '" + s + "'");
}

bool metric_requires_target(MetricId id) {
  switch (id) {
    case MetricId::ClassOverlap:
    case MetricId::LabelPurity:
    case MetricId::ClassParity:
    case MetricId::DataFairness:
      return true;
    default:
      return false;
  }
}

Json Recommendation::to_json() const {
  return Json{{"action_text", action_text},
              {"remediation_op_id", remediation_op_id},
              {"parameter_hints", parameter_hints}};
}

Recommendation Recommendation::from_json(const Json& j) {
  Recommendation r;
  r.action_text = j.at("action_text").get<std::string>();
  r.remediation_op_id = j.at("remediation_op_id").get<std::string>();
  r.parameter_hints = j.value("parameter_hints", Json::object());
  return r;
}

Json QualityResult::to_json() const {
  Json recs = Json::array();
  for (const auto& r : recommendations) recs.push_back(r.to_json());
  return Json{{"metric_id", to_string(metric_id)},
              {"score", score},
              {"explanation", explanation},
              {"recommendations", recs},
              {"details", details},
              {"dataset_fingerprint", dataset_fingerprint},
              {"timestamp", timestamp}};
}

QualityResult QualityResult::from_json(const Json& j) {
  QualityResult r;
  r.metric_id = metric_from_string(j.at("metric_id").get<std::string>());
  r.score = j.at("score").get<double>();
  r.explanation = j.at("explanation").get<std::string>();
  for (const auto& rec : j.at("recommendations")) {
    r.recommendations.push_back(Recommendation::from_json(rec));
  }
  r.details = j.value("details", Json::object());
  r.dataset_fingerprint = j.at("dataset_fingerprint").get<std::string>();
  r.timestamp = j.at("timestamp").get<std::string>();
  return r;
}

Json DecisionFile::to_json() const {
  Json entries = Json::array();
  for (const auto& d : decisions) {
    Json e = Json::object();
    if (d.row) e["row"] = *d.row;
    if (d.column) e["column"] = *d.column;
    e["accept"] = d.accept;
    if (d.override_label) e["override_label"] = *d.override_label;
    entries.push_back(std::move(e));
  }
  return Json{{"answers_fingerprint", answers_fingerprint}, {"decisions", entries}};
}

DecisionFile DecisionFile::from_json(const Json& j) {
  DecisionFile f;
  f.answers_fingerprint = j.at("answers_fingerprint").get<std::string>();
  for (const auto& e : j.at("decisions")) {
    Decision d;
    if (e.contains("row")) d.row = e.at("row").get<std::size_t>();
    if (e.contains("column")) d.column = e.at("column").get<std::string>();
    d.accept = e.at("accept").get<bool>();
    if (e.contains("override_label")) d.override_label = e.at("override_label").get<std::string>();
    f.decisions.push_back(std::move(d));
  }
  return f;
}

std::string DecisionFile::content_fingerprint() const {
  return sha256_hex(to_json().dump());
}

}  // namespace dqtk
