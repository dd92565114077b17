#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dqtk/dataset.hpp"
#include "dqtk/quality.hpp"

namespace dqtk {

// --- Correlation detection ---------------------------------------------------

struct CorrelationConfig {
  double tau = 0.8;  // |rho| at or above this flags a pair
};

struct CorrelatedPair {
  std::string col_a;
  std::string col_b;
  double spearman_rho = 0.0;
};

struct CorrelationReport {
  std::vector<CorrelatedPair> pairs;    // all computable numeric pairs
  std::vector<CorrelatedPair> flagged;  // |rho| >= tau
  std::vector<std::string> drop_set;
  std::vector<std::string> notes;       // skipped constant-column pairs etc.
};

// Spearman rho with averaged ranks for ties over pairwise-complete rows;
// nullopt when either side is constant or fewer than 2 complete pairs exist.
std::optional<double> spearman_rho(const std::vector<std::optional<double>>& x,
                                   const std::vector<std::optional<double>>& y);

CorrelationReport correlation_report(const Dataset& ds, const CorrelationConfig& cfg = {});
QualityResult assess_correlation(const Dataset& ds, const CorrelationConfig& cfg = {});
// Columns must belong to the report's drop_set.
Dataset drop_correlated(const Dataset& ds, const CorrelationReport& report,
                        const std::vector<std::string>& columns);

// --- Completeness and imputation ----------------------------------------------

QualityResult assess_completeness(const Dataset& ds);

struct ImputationOutcome {
  Dataset dataset;
  std::size_t cells_imputed = 0;
  std::vector<std::string> columns_touched;
  std::vector<std::string> warnings;  // columns left missing (no observed values)
};

// Fills missing cells with the conditional mode (categorical/text) or
// conditional median (numeric), conditioning on the strongest associated
// column observed at the row; falls back to the global mode/median.
// `columns` limits imputation to those columns; empty means all.
ImputationOutcome impute_missing(const Dataset& ds,
                                 const std::vector<std::string>& columns = {});

// --- Outlier detection (local outlier factor) ---------------------------------

struct OutlierConfig {
  std::size_t k = 20;
  double threshold = 1.5;
};

struct LofReport {
  std::size_t k = 0;
  double threshold = 1.5;
  std::vector<std::size_t> analyzed_rows;   // rows with all numeric cells present
  std::vector<std::size_t> excluded_rows;   // rows skipped for missing numerics
  std::vector<double> scores;               // parallel to analyzed_rows
  std::vector<std::size_t> outlier_rows;
  std::optional<std::string> note;          // set when the metric abstains
};

LofReport lof_report(const Dataset& ds, const OutlierConfig& cfg = {});
QualityResult assess_outliers(const Dataset& ds, const OutlierConfig& cfg = {});
Dataset remove_outliers(const Dataset& ds, const std::vector<std::size_t>& rows);

// --- Duplicate detection -------------------------------------------------------

// Row indices that repeat an earlier row (cell-wise equal, missing == missing).
std::vector<std::size_t> duplicate_rows(const Dataset& ds);
QualityResult assess_duplicates(const Dataset& ds);
Dataset remove_duplicates(const Dataset& ds);

}  // namespace dqtk
