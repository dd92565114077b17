#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dqtk/error.hpp"

namespace dqtk {

using Json = nlohmann::json;

enum class MetricId {
  ClassOverlap,
  LabelPurity,
  ClassParity,
  FeatureRelevance,
  DataHomogeneity,
  DataFairness,
  CorrelationDetection,
  DataCompleteness,
  OutlierDetection,
  DataDuplicates,
};

// Canonical metric order used for ledger appends and reports.
inline constexpr std::array<MetricId, 10> kAllMetrics{
    MetricId::ClassOverlap,       MetricId::LabelPurity,
    MetricId::ClassParity,        MetricId::FeatureRelevance,
    MetricId::DataHomogeneity,    MetricId::DataFairness,
    MetricId::CorrelationDetection, MetricId::DataCompleteness,
    MetricId::OutlierDetection,   MetricId::DataDuplicates,
};

std::string to_string(MetricId id);
MetricId metric_from_string(const std::string& s);
// True for metrics that cannot run without a labeled target column.
bool metric_requires_target(MetricId id);

struct Recommendation {
  std::string action_text;
  std::string remediation_op_id;  // empty for advisory-only recommendations
  Json parameter_hints = Json::object();

  Json to_json() const;
  static Recommendation from_json(const Json& j);
};

struct QualityResult {
  MetricId metric_id = MetricId::DataDuplicates;
  double score = 1.0;
  std::string explanation;
  std::vector<Recommendation> recommendations;
  Json details = Json::object();
  std::string dataset_fingerprint;
  std::string timestamp;

  Json to_json() const;
  static QualityResult from_json(const Json& j);
};

// Human accept/reject input answering one QualityResult.
struct Decision {
  std::optional<std::size_t> row;
  std::optional<std::string> column;
  bool accept = false;
  std::optional<std::string> override_label;
};

struct DecisionFile {
  std::string answers_fingerprint;  // dataset fingerprint the decisions answer
  std::vector<Decision> decisions;

  Json to_json() const;
  static DecisionFile from_json(const Json& j);
  // Digest used as decisions_ref in lineage entries.
  std::string content_fingerprint() const;
};

}  // namespace dqtk
