#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dqtk/dataset.hpp"

namespace dqtk {

struct NeighborQuery {
  std::size_t k = 5;
  bool exclude_self = true;
};

struct Neighbor {
  std::size_t row = 0;
  double distance = 0.0;
};

// Heterogeneous Euclidean-overlap metric over the feature columns.
// Per dimension: numeric -> ((a-b)/range)^2 with the observed min-max range
// (range 0 contributes 0); categorical/text -> 0 on match else 1; any missing
// operand -> 1. Distance is the square root of the summed contributions.
class HeomMetric {
 public:
  HeomMetric(const Dataset& ds,
             const std::optional<std::vector<std::string>>& feature_subset = std::nullopt);

  double operator()(std::size_t row_a, std::size_t row_b) const;
  const std::vector<std::size_t>& feature_columns() const { return cols_; }

 private:
  const Dataset* ds_;
  std::vector<std::size_t> cols_;
  std::vector<double> inv_range_;  // 0 when range is 0; unused for non-numeric
};

double heom_distance(const Dataset& ds, std::size_t row_a, std::size_t row_b,
                     const std::optional<std::vector<std::string>>& feature_subset = std::nullopt);

// Exact nearest neighbors for every row (or every row of `rows`, searching
// within `rows`). Ties break toward the lower row index.
std::vector<std::vector<Neighbor>> knn(
    const Dataset& ds, const NeighborQuery& query,
    const std::optional<std::vector<std::size_t>>& rows = std::nullopt);

// Exact k nearest rows to `query_row` among `candidates` (self excluded if present).
std::vector<Neighbor> knn_among(const HeomMetric& metric, std::size_t query_row,
                                const std::vector<std::size_t>& candidates, std::size_t k);

}  // namespace dqtk
