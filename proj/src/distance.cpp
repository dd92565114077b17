#include "dqtk/distance.hpp"

#include <algorithm>
#include <cmath>

namespace dqtk {

HeomMetric::HeomMetric(const Dataset& ds,
                       const std::optional<std::vector<std::string>>& feature_subset)
    : ds_(&ds) {
  if (feature_subset) {
    if (feature_subset->empty()) throw Error("empty feature subset");
    std::optional<std::size_t> target_idx;
    if (ds.has_target()) target_idx = ds.target_index();
    for (const auto& name : *feature_subset) {
      std::size_t c = ds.require_column(name);
      if (target_idx && c == *target_idx) continue;
      cols_.push_back(c);
    }
    if (cols_.empty()) throw Error("empty feature subset");
  } else {
    cols_ = ds.feature_indices();
    if (cols_.empty()) throw Error("no usable feature columns");
  }
  inv_range_.resize(cols_.size(), 0.0);
  for (std::size_t i = 0; i < cols_.size(); ++i) {
    const auto& col = ds.column(cols_[i]);
    if (col.kind == ColumnKind::Numeric && col.range() > 0.0) {
      inv_range_[i] = 1.0 / col.range();
    }
  }
}

double HeomMetric::operator()(std::size_t row_a, std::size_t row_b) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < cols_.size(); ++i) {
    const std::size_t c = cols_[i];
    const bool miss_a = ds_->is_missing(row_a, c);
    const bool miss_b = ds_->is_missing(row_b, c);
    if (miss_a || miss_b) {
      sum += 1.0;
      continue;
    }
    if (ds_->column(c).kind == ColumnKind::Numeric) {
      const double d = (ds_->numeric(row_a, c) - ds_->numeric(row_b, c)) * inv_range_[i];
      sum += d * d;
    } else {
      if (*ds_->cell(row_a, c) != *ds_->cell(row_b, c)) sum += 1.0;
    }
  }
  return std::sqrt(sum);
}

double heom_distance(const Dataset& ds, std::size_t row_a, std::size_t row_b,
                     const std::optional<std::vector<std::string>>& feature_subset) {
  if (row_a >= ds.n_rows() || row_b >= ds.n_rows()) throw Error("row index out of range");
  return HeomMetric(ds, feature_subset)(row_a, row_b);
}

std::vector<Neighbor> knn_among(const HeomMetric& metric, std::size_t query_row,
                                const std::vector<std::size_t>& candidates, std::size_t k) {
  std::vector<Neighbor> all;
  all.reserve(candidates.size());
  for (std::size_t cand : candidates) {
    if (cand == query_row) continue;
    all.push_back({cand, metric(query_row, cand)});
  }
  auto cmp = [](const Neighbor& a, const Neighbor& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.row < b.row;
  };
  const std::size_t take = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(take), all.end(), cmp);
  all.resize(take);
  return all;
}

std::vector<std::vector<Neighbor>> knn(
    const Dataset& ds, const NeighborQuery& query,
    const std::optional<std::vector<std::size_t>>& rows) {
  if (query.k < 1) throw Error("k must be >= 1");
  std::vector<std::size_t> pool;
  if (rows) {
    pool = *rows;
  } else {
    pool.resize(ds.n_rows());
    for (std::size_t r = 0; r < pool.size(); ++r) pool[r] = r;
  }
  if (query.exclude_self) {
    if (pool.size() < 2) throw Error("need at least 2 rows with exclude_self");
    if (query.k >= pool.size()) {
      throw Error("k=" + std::to_string(query.k) + " must be < n=" +
                  std::to_string(pool.size()) + " with exclude_self");
    }
  }
  HeomMetric metric(ds);
  std::vector<std::vector<Neighbor>> out;
  out.reserve(pool.size());
  for (std::size_t row : pool) {
    if (query.exclude_self) {
      out.push_back(knn_among(metric, row, pool, query.k));
    } else {
      std::vector<Neighbor> all;
      all.reserve(pool.size());
      for (std::size_t cand : pool) all.push_back({cand, metric(row, cand)});
      auto cmp = [](const Neighbor& a, const Neighbor& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        return a.row < b.row;
      };
      const std::size_t take = std::min(query.k, all.size());
      std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(take), all.end(), cmp);
      all.resize(take);
      out.push_back(std::move(all));
    }
  }
  return out;
}

}  // namespace dqtk
