#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dqtk/dataset.hpp"
#include "dqtk/quality.hpp"

namespace dqtk {

struct RelevanceConfig {
  double epsilon = 0.01;  // SU-with-target at or below this is irrelevant
  std::size_t bins = 10;  // equal-frequency bins for numeric columns
};

enum class FeatureStatus { Relevant, PrunedRedundant, Irrelevant };
std::string to_string(FeatureStatus status);

struct RelevanceEntry {
  std::string feature;
  double su_with_target = 0.0;
  FeatureStatus status = FeatureStatus::Relevant;
  std::optional<std::string> pruned_by;
};

struct RelevanceRanking {
  std::vector<RelevanceEntry> entries;  // sorted by SU descending, ties by column order
};

// Per-row discrete codes for a column: category/text values are dense-coded,
// numeric values fall into equal-frequency bins (ties merged). Missing -> nullopt.
std::vector<std::optional<int>> discretize_column(const Dataset& ds, std::size_t col,
                                                  std::size_t bins = 10);

// SU = 2*I(X;Y)/(H(X)+H(Y)) with Shannon entropy in bits over pairwise-complete
// rows; 0 when both columns are constant.
double symmetrical_uncertainty(const std::vector<std::optional<int>>& x,
                               const std::vector<std::optional<int>>& y);
double symmetrical_uncertainty(const Dataset& ds, std::size_t col_x, std::size_t col_y,
                               std::size_t bins = 10);

RelevanceRanking rank_and_prune(const Dataset& ds, const RelevanceConfig& cfg = {});

QualityResult assess_relevance(const Dataset& ds, const RelevanceConfig& cfg = {});

// Drops the given columns; every one must be flagged pruned/irrelevant in the
// ranking and none may be the target.
Dataset drop_features(const Dataset& ds, const RelevanceRanking& ranking,
                      const std::vector<std::string>& columns);

// Columns dropped in auto mode: everything not marked relevant.
std::vector<std::string> droppable_features(const RelevanceRanking& ranking);

}  // namespace dqtk
