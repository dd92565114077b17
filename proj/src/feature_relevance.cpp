#include "dqtk/feature_relevance.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace dqtk {

std::string to_string(FeatureStatus status) {
  switch (status) {
    case FeatureStatus::Relevant: return "relevant";
    case FeatureStatus::PrunedRedundant: return "pruned_redundant";
    case FeatureStatus::Irrelevant: return "irrelevant";
  }
  return "relevant";
}

std::vector<std::optional<int>> discretize_column(const Dataset& ds, std::size_t col,
                                                  std::size_t bins) {
  const std::size_t n = ds.n_rows();
  std::vector<std::optional<int>> codes(n);
  const auto& schema = ds.column(col);
  if (schema.kind == ColumnKind::Numeric) {
    std::vector<double> values;
    values.reserve(n);
    for (std::size_t r = 0; r < n; ++r) {
      if (!ds.is_missing(r, col)) values.push_back(ds.numeric(r, col));
    }
    std::sort(values.begin(), values.end());
    // Equal-frequency bin edges; duplicate edges collapse so tied values
    // never straddle a boundary.
    std::vector<double> edges;
    for (std::size_t i = 1; i < bins && !values.empty(); ++i) {
      const std::size_t pos = (i * values.size()) / bins;
      if (pos >= values.size()) break;
      const double edge = values[pos];
      if (edges.empty() || edge > edges.back()) edges.push_back(edge);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (ds.is_missing(r, col)) continue;
      const double v = ds.numeric(r, col);
      const auto it = std::upper_bound(edges.begin(), edges.end(), v);
      codes[r] = static_cast<int>(it - edges.begin());
    }
  } else {
    std::map<std::string, int> dense;
    for (std::size_t r = 0; r < n; ++r) {
      if (ds.is_missing(r, col)) continue;
      auto [it, inserted] = dense.emplace(*ds.cell(r, col), static_cast<int>(dense.size()));
      codes[r] = it->second;
    }
  }
  return codes;
}

double symmetrical_uncertainty(const std::vector<std::optional<int>>& x,
                               const std::vector<std::optional<int>>& y) {
  if (x.size() != y.size()) throw Error("column length mismatch");
  std::map<int, std::size_t> cx, cy;
  std::map<std::pair<int, int>, std::size_t> cxy;
  std::size_t n = 0;
  for (std::size_t r = 0; r < x.size(); ++r) {
    if (!x[r] || !y[r]) continue;
    ++cx[*x[r]];
    ++cy[*y[r]];
    ++cxy[{*x[r], *y[r]}];
    ++n;
  }
  if (n < 2) throw Error("fewer than 2 complete pairs");

  auto entropy = [n](const std::map<int, std::size_t>& counts) {
    double h = 0.0;
    for (const auto& [_, c] : counts) {
      const double p = static_cast<double>(c) / static_cast<double>(n);
      h -= p * std::log2(p);
    }
    return h;
  };
  const double hx = entropy(cx);
  const double hy = entropy(cy);
  if (hx + hy == 0.0) return 0.0;

  double mi = 0.0;
  for (const auto& [xy, c] : cxy) {
    const double pxy = static_cast<double>(c) / static_cast<double>(n);
    const double px = static_cast<double>(cx.at(xy.first)) / static_cast<double>(n);
    const double py = static_cast<double>(cy.at(xy.second)) / static_cast<double>(n);
    mi += pxy * std::log2(pxy / (px * py));
  }
  const double su = 2.0 * mi / (hx + hy);
  return std::clamp(su, 0.0, 1.0);
}

double symmetrical_uncertainty(const Dataset& ds, std::size_t col_x, std::size_t col_y,
                               std::size_t bins) {
  return symmetrical_uncertainty(discretize_column(ds, col_x, bins),
                                 discretize_column(ds, col_y, bins));
}

RelevanceRanking rank_and_prune(const Dataset& ds, const RelevanceConfig& cfg) {
  const std::size_t t = ds.target_index();
  const auto features = ds.feature_indices();
  if (features.empty()) throw Error("no feature columns");

  const auto target_codes = discretize_column(ds, t, cfg.bins);
  std::vector<std::vector<std::optional<int>>> codes;
  codes.reserve(features.size());
  for (std::size_t c : features) codes.push_back(discretize_column(ds, c, cfg.bins));

  struct Item {
    std::size_t pos;  // index into `features`
    double su;
  };
  std::vector<Item> order;
  order.reserve(features.size());
  for (std::size_t i = 0; i < features.size(); ++i) {
    double su = 0.0;
    try {
      su = symmetrical_uncertainty(codes[i], target_codes);
    } catch (const Error&) {
      su = 0.0;  // degenerate column: no complete pairs with the target
    }
    order.push_back({i, su});
  }
  std::stable_sort(order.begin(), order.end(), [](const Item& a, const Item& b) {
    return a.su > b.su;
  });

  RelevanceRanking ranking;
  ranking.entries.resize(order.size());
  std::vector<std::size_t> kept;  // positions into `order`
  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    const auto& item = order[oi];
    RelevanceEntry entry;
    entry.feature = ds.column(features[item.pos]).name;
    entry.su_with_target = item.su;
    if (item.su <= cfg.epsilon) {
      entry.status = FeatureStatus::Irrelevant;
    } else {
      entry.status = FeatureStatus::Relevant;
      for (std::size_t ki : kept) {
        const auto& keeper = order[ki];
        double pairwise = 0.0;
        try {
          pairwise = symmetrical_uncertainty(codes[keeper.pos], codes[item.pos]);
        } catch (const Error&) {
          pairwise = 0.0;
        }
        if (pairwise >= item.su) {
          entry.status = FeatureStatus::PrunedRedundant;
          entry.pruned_by = ds.column(features[keeper.pos]).name;
          break;
        }
      }
      if (entry.status == FeatureStatus::Relevant) kept.push_back(oi);
    }
    ranking.entries[oi] = std::move(entry);
  }
  return ranking;
}

std::vector<std::string> droppable_features(const RelevanceRanking& ranking) {
  std::vector<std::string> out;
  for (const auto& e : ranking.entries) {
    if (e.status != FeatureStatus::Relevant) out.push_back(e.feature);
  }
  return out;
}

QualityResult assess_relevance(const Dataset& ds, const RelevanceConfig& cfg) {
  QualityResult result;
  result.metric_id = MetricId::FeatureRelevance;
  result.dataset_fingerprint = ds.fingerprint();

  if (!ds.has_target()) {
    result.score = 1.0;
    result.explanation =
        "No target column is set, so feature relevance cannot be ranked; "
        "the metric abstains.";
    result.details["note"] = "target required for relevance ranking";
    result.details["ranking"] = Json::array();
    return result;
  }

  const auto ranking = rank_and_prune(ds, cfg);
  Json entries = Json::array();
  std::size_t relevant = 0;
  for (const auto& e : ranking.entries) {
    if (e.status == FeatureStatus::Relevant) ++relevant;
    Json j{{"feature", e.feature},
           {"su", e.su_with_target},
           {"status", to_string(e.status)}};
    if (e.pruned_by) j["pruned_by"] = *e.pruned_by;
    entries.push_back(std::move(j));
  }
  result.details["ranking"] = entries;
  result.score = ranking.entries.empty()
                     ? 1.0
                     : static_cast<double>(relevant) /
                           static_cast<double>(ranking.entries.size());
  const std::size_t flagged = ranking.entries.size() - relevant;
  if (flagged == 0) {
    result.explanation = "All " + std::to_string(ranking.entries.size()) +
                         " features are relevant to the target.";
  } else {
    result.explanation =
        std::to_string(flagged) + " of " + std::to_string(ranking.entries.size()) +
        " features are redundant or carry no information about the target.";
    Recommendation rec;
    rec.action_text = "Drop the redundant and irrelevant features.";
    rec.remediation_op_id = "drop_features";
    rec.parameter_hints["columns"] = droppable_features(ranking);
    result.recommendations.push_back(std::move(rec));
  }
  return result;
}

Dataset drop_features(const Dataset& ds, const RelevanceRanking& ranking,
                      const std::vector<std::string>& columns) {
  std::vector<std::size_t> drop;
  for (const auto& name : columns) {
    if (ds.target_name() && name == *ds.target_name()) {
      throw Error("cannot drop target column '" + name + "'");
    }
    bool flagged = false;
    for (const auto& e : ranking.entries) {
      if (e.feature == name && e.status != FeatureStatus::Relevant) flagged = true;
    }
    if (!flagged) throw Error("column '" + name + "' is not flagged for dropping");
    drop.push_back(ds.require_column(name));
  }
  return ds.with_columns_removed(drop);
}

}  // namespace dqtk
