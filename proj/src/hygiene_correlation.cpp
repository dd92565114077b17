#include <algorithm>
#include <cmath>
#include <map>

#include "dqtk/hygiene.hpp"

namespace dqtk {

namespace {

std::vector<double> average_ranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

std::optional<double> spearman_rho(const std::vector<std::optional<double>>& x,
                                   const std::vector<std::optional<double>>& y) {
  if (x.size() != y.size()) throw Error("column length mismatch");
  std::vector<double> xs, ys;
  for (std::size_t r = 0; r < x.size(); ++r) {
    if (x[r] && y[r]) {
      xs.push_back(*x[r]);
      ys.push_back(*y[r]);
    }
  }
  const std::size_t n = xs.size();
  if (n < 2) return std::nullopt;

  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += rx[i];
    mean_y += ry[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = rx[i] - mean_x;
    const double dy = ry[i] - mean_y;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;  // constant after ranking
  return sxy / std::sqrt(sxx * syy);
}

namespace {

std::vector<std::optional<double>> numeric_column(const Dataset& ds, std::size_t c) {
  std::vector<std::optional<double>> out(ds.n_rows());
  for (std::size_t r = 0; r < ds.n_rows(); ++r) {
    if (!ds.is_missing(r, c)) out[r] = ds.numeric(r, c);
  }
  return out;
}

}  // namespace

CorrelationReport correlation_report(const Dataset& ds, const CorrelationConfig& cfg) {
  CorrelationReport report;
  std::vector<std::size_t> numeric_cols;
  for (std::size_t c : ds.feature_indices()) {
    if (ds.column(c).kind == ColumnKind::Numeric) numeric_cols.push_back(c);
  }
  const std::size_t m = numeric_cols.size();
  if (m < 2) return report;

  std::vector<std::vector<std::optional<double>>> cols;
  cols.reserve(m);
  for (std::size_t c : numeric_cols) cols.push_back(numeric_column(ds, c));

  std::vector<std::vector<std::optional<double>>> rho(m, std::vector<std::optional<double>>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const auto r = spearman_rho(cols[i], cols[j]);
      rho[i][j] = rho[j][i] = r;
      const std::string& name_i = ds.column(numeric_cols[i]).name;
      const std::string& name_j = ds.column(numeric_cols[j]).name;
      if (!r) {
        report.notes.push_back("pair (" + name_i + ", " + name_j +
                               ") skipped: correlation undefined");
        continue;
      }
      report.pairs.push_back({name_i, name_j, *r});
      if (std::fabs(*r) >= cfg.tau) report.flagged.push_back({name_i, name_j, *r});
    }
  }

  // From each flagged pair drop the member more correlated with everything
  // else on average; ties go to the later column.
  auto mean_abs_rho = [&](std::size_t i) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i || !rho[i][j]) continue;
      sum += std::fabs(*rho[i][j]);
      ++count;
    }
    return count ? sum / static_cast<double>(count) : 0.0;
  };
  std::map<std::string, std::size_t> index_of;
  for (std::size_t i = 0; i < m; ++i) index_of[ds.column(numeric_cols[i]).name] = i;
  for (const auto& pair : report.flagged) {
    const std::size_t ia = index_of.at(pair.col_a);
    const std::size_t ib = index_of.at(pair.col_b);
    const double ma = mean_abs_rho(ia);
    const double mb = mean_abs_rho(ib);
    std::string victim;
    if (ma > mb) {
      victim = pair.col_a;
    } else if (mb > ma) {
      victim = pair.col_b;
    } else {
      victim = ia > ib ? pair.col_a : pair.col_b;
    }
    if (std::find(report.drop_set.begin(), report.drop_set.end(), victim) ==
        report.drop_set.end()) {
      report.drop_set.push_back(victim);
    }
  }
  return report;
}

QualityResult assess_correlation(const Dataset& ds, const CorrelationConfig& cfg) {
  QualityResult result;
  result.metric_id = MetricId::CorrelationDetection;
  result.dataset_fingerprint = ds.fingerprint();

  std::size_t numeric_count = 0;
  for (std::size_t c : ds.feature_indices()) {
    if (ds.column(c).kind == ColumnKind::Numeric) ++numeric_count;
  }
  if (numeric_count < 2) {
    result.score = 1.0;
    result.explanation = "Fewer than two numeric columns; correlation not applicable.";
    result.details["note"] = "fewer than 2 numeric columns";
    result.details["correlated_pairs"] = Json::array();
    result.details["drop_set"] = Json::array();
    return result;
  }

  const auto report = correlation_report(ds, cfg);
  Json pairs = Json::array();
  for (const auto& p : report.flagged) {
    pairs.push_back(Json{{"col_a", p.col_a}, {"col_b", p.col_b}, {"spearman_rho", p.spearman_rho}});
  }
  result.details["correlated_pairs"] = pairs;
  result.details["drop_set"] = report.drop_set;
  if (!report.notes.empty()) result.details["notes"] = report.notes;
  result.score = 1.0 - static_cast<double>(report.drop_set.size()) /
                           static_cast<double>(numeric_count);
  if (report.flagged.empty()) {
    result.explanation = "No pair of numeric columns is correlated at |rho| >= " +
                         format_number(cfg.tau) + ".";
  } else {
    result.explanation = std::to_string(report.flagged.size()) +
                         " numeric column pair(s) are highly correlated; dropping " +
                         std::to_string(report.drop_set.size()) +
                         " column(s) would remove the multi-collinearity.";
    Recommendation rec;
    rec.action_text = "Drop the most redundant column from each correlated pair.";
    rec.remediation_op_id = "drop_correlated";
    rec.parameter_hints["columns"] = report.drop_set;
    result.recommendations.push_back(std::move(rec));
  }
  return result;
}

Dataset drop_correlated(const Dataset& ds, const CorrelationReport& report,
                        const std::vector<std::string>& columns) {
  std::vector<std::size_t> drop;
  for (const auto& name : columns) {
    if (std::find(report.drop_set.begin(), report.drop_set.end(), name) ==
        report.drop_set.end()) {
      throw Error("column '" + name + "' is not in the correlation drop set");
    }
    drop.push_back(ds.require_column(name));
  }
  return ds.with_columns_removed(drop);
}

}  // namespace dqtk
