#include <algorithm>
#include <cmath>
#include <map>

#include "dqtk/hygiene.hpp"

namespace dqtk {

namespace {

constexpr double kDistanceFloor = 1e-12;

}  // namespace

LofReport lof_report(const Dataset& ds, const OutlierConfig& cfg) {
  LofReport report;
  report.k = cfg.k;
  report.threshold = cfg.threshold;

  std::vector<std::size_t> numeric_cols;
  for (std::size_t c : ds.feature_indices()) {
    if (ds.column(c).kind == ColumnKind::Numeric) numeric_cols.push_back(c);
  }
  if (numeric_cols.empty()) {
    report.note = "insufficient data for LOF";
    return report;
  }
  for (std::size_t r = 0; r < ds.n_rows(); ++r) {
    bool complete = true;
    for (std::size_t c : numeric_cols) complete = complete && !ds.is_missing(r, c);
    (complete ? report.analyzed_rows : report.excluded_rows).push_back(r);
  }
  const std::size_t n = report.analyzed_rows.size();
  if (n < cfg.k + 1) {
    report.analyzed_rows.clear();
    report.excluded_rows.clear();
    report.note = "insufficient data for LOF";
    return report;
  }
  const std::size_t k = std::min(cfg.k, n - 1);
  report.k = k;

  // Min-max normalized coordinates.
  std::vector<std::vector<double>> points(n, std::vector<double>(numeric_cols.size()));
  for (std::size_t j = 0; j < numeric_cols.size(); ++j) {
    const auto& col = ds.column(numeric_cols[j]);
    const double range = col.range();
    for (std::size_t i = 0; i < n; ++i) {
      const double v = ds.numeric(report.analyzed_rows[i], numeric_cols[j]);
      points[i][j] = range > 0.0 ? (v - col.min) / range : 0.0;
    }
  }
  auto dist = [&](std::size_t a, std::size_t b) {
    double sum = 0.0;
    for (std::size_t j = 0; j < points[a].size(); ++j) {
      const double d = points[a][j] - points[b][j];
      sum += d * d;
    }
    return std::max(std::sqrt(sum), kDistanceFloor);
  };

  // Exact k nearest neighbors, ties to the lower index.
  std::vector<std::vector<std::size_t>> neighbors(n);
  std::vector<double> k_distance(n, 0.0);
  std::vector<std::pair<double, std::size_t>> buf;
  for (std::size_t i = 0; i < n; ++i) {
    buf.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) buf.emplace_back(dist(i, j), j);
    }
    std::partial_sort(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(k), buf.end());
    neighbors[i].reserve(k);
    for (std::size_t t = 0; t < k; ++t) neighbors[i].push_back(buf[t].second);
    k_distance[i] = buf[k - 1].first;
  }

  std::vector<double> lrd(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double sum_reach = 0.0;
    for (std::size_t o : neighbors[i]) {
      sum_reach += std::max(k_distance[o], dist(i, o));
    }
    lrd[i] = static_cast<double>(k) / sum_reach;
  }
  report.scores.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t o : neighbors[i]) sum += lrd[o] / lrd[i];
    report.scores[i] = sum / static_cast<double>(k);
    if (report.scores[i] > cfg.threshold) {
      report.outlier_rows.push_back(report.analyzed_rows[i]);
    }
  }
  return report;
}

QualityResult assess_outliers(const Dataset& ds, const OutlierConfig& cfg) {
  QualityResult result;
  result.metric_id = MetricId::OutlierDetection;
  result.dataset_fingerprint = ds.fingerprint();

  const auto report = lof_report(ds, cfg);
  if (report.note) {
    result.score = 1.0;
    result.explanation = "Too few complete numeric rows for outlier analysis; "
                         "the metric abstains.";
    result.details["note"] = *report.note;
    result.details["outlier_rows"] = Json::array();
    result.details["excluded_rows"] = report.excluded_rows;
    result.details["lof_scores"] = Json::object();
    return result;
  }

  Json scores = Json::object();
  for (std::size_t i = 0; i < report.analyzed_rows.size(); ++i) {
    scores[std::to_string(report.analyzed_rows[i])] = report.scores[i];
  }
  result.details["lof_scores"] = scores;
  result.details["outlier_rows"] = report.outlier_rows;
  result.details["excluded_rows"] = report.excluded_rows;
  result.details["k"] = report.k;
  result.details["threshold"] = report.threshold;
  result.score = 1.0 - static_cast<double>(report.outlier_rows.size()) /
                           static_cast<double>(report.analyzed_rows.size());
  if (report.outlier_rows.empty()) {
    result.explanation = "No row has a local outlier factor above " +
                         format_number(report.threshold) + ".";
  } else {
    result.explanation = std::to_string(report.outlier_rows.size()) +
                         " row(s) deviate strongly from their neighborhood density.";
    Recommendation rec;
    rec.action_text = "Remove the flagged outlier rows.";
    rec.remediation_op_id = "remove_outliers";
    rec.parameter_hints["rows"] = report.outlier_rows;
    result.recommendations.push_back(std::move(rec));
  }
  return result;
}

Dataset remove_outliers(const Dataset& ds, const std::vector<std::size_t>& rows) {
  return ds.with_rows_removed(rows);
}

std::vector<std::size_t> duplicate_rows(const Dataset& ds) {
  std::vector<std::size_t> dups;
  std::map<std::string, std::size_t> seen;
  for (std::size_t r = 0; r < ds.n_rows(); ++r) {
    std::string key;
    for (std::size_t c = 0; c < ds.n_cols(); ++c) {
      const Cell& cell = ds.cell(r, c);
      if (cell) {
        key.push_back('\x02');
        key += *cell;
      } else {
        key.push_back('\x01');
      }
      key.push_back('\x00');
    }
    auto [it, inserted] = seen.emplace(std::move(key), r);
    if (!inserted) dups.push_back(r);
  }
  return dups;
}

QualityResult assess_duplicates(const Dataset& ds) {
  QualityResult result;
  result.metric_id = MetricId::DataDuplicates;
  result.dataset_fingerprint = ds.fingerprint();

  const auto dups = duplicate_rows(ds);
  result.details["duplicate_rows"] = dups;
  result.score = ds.n_rows() == 0
                     ? 1.0
                     : 1.0 - static_cast<double>(dups.size()) /
                               static_cast<double>(ds.n_rows());
  if (dups.empty()) {
    result.explanation = "No duplicate rows.";
  } else {
    result.explanation = std::to_string(dups.size()) +
                         " row(s) duplicate an earlier row.";
    Recommendation rec;
    rec.action_text = "Remove duplicate rows, keeping the first occurrence.";
    rec.remediation_op_id = "remove_duplicates";
    result.recommendations.push_back(std::move(rec));
  }
  return result;
}

Dataset remove_duplicates(const Dataset& ds) {
  return ds.with_rows_removed(duplicate_rows(ds));
}

}  // namespace dqtk
