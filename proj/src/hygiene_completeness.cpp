#include <algorithm>
#include <cmath>
#include <map>

#include "dqtk/feature_relevance.hpp"
#include "dqtk/hygiene.hpp"

namespace dqtk {

QualityResult assess_completeness(const Dataset& ds) {
  QualityResult result;
  result.metric_id = MetricId::DataCompleteness;
  result.dataset_fingerprint = ds.fingerprint();

  Json locations = Json::object();
  std::size_t missing = 0;
  for (std::size_t c = 0; c < ds.n_cols(); ++c) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < ds.n_rows(); ++r) {
      if (ds.is_missing(r, c)) {
        rows.push_back(r);
        ++missing;
      }
    }
    if (!rows.empty()) locations[ds.column(c).name] = rows;
  }
  result.details["missing_locations"] = locations;
  const double total = static_cast<double>(ds.n_rows() * ds.n_cols());
  result.score = total == 0.0 ? 1.0 : 1.0 - static_cast<double>(missing) / total;
  if (missing == 0) {
    result.explanation = "No missing cells.";
  } else {
    result.explanation = std::to_string(missing) + " of " +
                         std::to_string(static_cast<std::size_t>(total)) +
                         " cells are missing.";
    Recommendation rec;
    rec.action_text =
        "Impute missing cells with values conforming to the associated columns.";
    rec.remediation_op_id = "impute_missing";
    result.recommendations.push_back(std::move(rec));
  }
  return result;
}

namespace {

// Strongest associated column (by SU) among candidates, per the pair actually
// computable; nullopt when nothing associates.
std::optional<std::size_t> best_associate(
    const std::vector<std::vector<std::optional<int>>>& codes, std::size_t target_col,
    const std::vector<std::size_t>& candidates) {
  std::optional<std::size_t> best;
  double best_su = -1.0;
  for (std::size_t c : candidates) {
    double su = 0.0;
    try {
      su = symmetrical_uncertainty(codes[c], codes[target_col]);
    } catch (const Error&) {
      continue;
    }
    if (su > best_su) {
      best_su = su;
      best = c;
    }
  }
  return best;
}

std::optional<std::string> conditional_mode(const Dataset& ds, std::size_t col,
                                            std::size_t associate,
                                            const std::vector<std::optional<int>>& assoc_codes,
                                            std::optional<int> key) {
  std::map<std::string, std::size_t> counts;
  for (std::size_t r = 0; r < ds.n_rows(); ++r) {
    if (ds.is_missing(r, col)) continue;
    if (key && assoc_codes[r] != key) continue;
    ++counts[*ds.cell(r, col)];
  }
  if (counts.empty()) return std::nullopt;
  // Most frequent; ties resolve to the lexicographically smallest value
  // (map iteration order), which keeps imputation deterministic.
  std::string best;
  std::size_t best_count = 0;
  for (const auto& [value, count] : counts) {
    if (count > best_count) {
      best = value;
      best_count = count;
    }
  }
  (void)associate;
  return best;
}

std::optional<double> conditional_median(const Dataset& ds, std::size_t col,
                                         const std::vector<std::optional<int>>& assoc_codes,
                                         std::optional<int> key) {
  std::vector<double> values;
  for (std::size_t r = 0; r < ds.n_rows(); ++r) {
    if (ds.is_missing(r, col)) continue;
    if (key && assoc_codes[r] != key) continue;
    values.push_back(ds.numeric(r, col));
  }
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

}  // namespace

ImputationOutcome impute_missing(const Dataset& ds, const std::vector<std::string>& columns) {
  std::vector<bool> wanted(ds.n_cols(), columns.empty());
  for (const auto& name : columns) wanted[ds.require_column(name)] = true;

  std::vector<std::vector<std::optional<int>>> codes(ds.n_cols());
  for (std::size_t c = 0; c < ds.n_cols(); ++c) codes[c] = discretize_column(ds, c);

  std::vector<std::tuple<std::size_t, std::size_t, Cell>> edits;
  std::vector<std::string> touched;
  std::vector<std::string> warnings;
  for (std::size_t c = 0; c < ds.n_cols(); ++c) {
    if (!wanted[c] || ds.column(c).missing_count == 0) continue;
    if (ds.column(c).missing_count == ds.n_rows()) {
      warnings.push_back("column '" + ds.column(c).name +
                         "' is entirely missing; left as is");
      continue;
    }
    const bool numeric = ds.column(c).kind == ColumnKind::Numeric;
    bool column_touched = false;
    for (std::size_t r = 0; r < ds.n_rows(); ++r) {
      if (!ds.is_missing(r, c)) continue;
      // Associate = strongest-SU column among those observed at this row.
      std::vector<std::size_t> observed;
      for (std::size_t a = 0; a < ds.n_cols(); ++a) {
        if (a != c && !ds.is_missing(r, a)) observed.push_back(a);
      }
      const auto associate = best_associate(codes, c, observed);
      std::optional<int> key;
      if (associate) key = codes[*associate][r];

      Cell value;
      if (numeric) {
        auto v = associate ? conditional_median(ds, c, codes[*associate], key)
                           : std::nullopt;
        if (!v) v = conditional_median(ds, c, codes[c], std::nullopt);  // global fallback
        if (v) value = format_number(*v);
      } else {
        auto v = associate
                     ? conditional_mode(ds, c, *associate, codes[*associate], key)
                     : std::nullopt;
        if (!v) v = conditional_mode(ds, c, c, codes[c], std::nullopt);
        if (v) value = *v;
      }
      if (value) {
        edits.emplace_back(r, c, value);
        column_touched = true;
      }
    }
    if (column_touched) touched.push_back(ds.column(c).name);
  }

  ImputationOutcome outcome{ds.with_cells_replaced(edits), edits.size(), touched, warnings};
  return outcome;
}

}  // namespace dqtk
