#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "dqtk/error.hpp"

namespace dqtk {

enum class ColumnKind { Numeric, Categorical, Text };

std::string to_string(ColumnKind kind);
ColumnKind column_kind_from_string(const std::string& s);

struct ColumnSchema {
  std::string name;
  ColumnKind kind = ColumnKind::Text;
  // Observed range over non-missing cells (numeric columns only).
  double min = 0.0;
  double max = 0.0;
  // Distinct non-missing values (categorical and text columns).
  std::set<std::string> domain;
  std::size_t missing_count = 0;

  double range() const { return max - min; }
};

// A cell is either a UTF-8 value or missing.
using Cell = std::optional<std::string>;
using Row = std::vector<Cell>;

// Immutable typed table. All mutating operations return a new Dataset with a
// freshly computed content fingerprint; identical schema + cells always hash
// to the same fingerprint.
class Dataset {
 public:
  static Dataset from_cells(std::vector<std::string> names,
                            std::vector<ColumnKind> kinds,
                            std::vector<Row> rows,
                            std::optional<std::string> target = std::nullopt);

  std::size_t n_rows() const { return rows_.size(); }
  std::size_t n_cols() const { return columns_.size(); }
  const std::vector<ColumnSchema>& columns() const { return columns_; }
  const ColumnSchema& column(std::size_t c) const { return columns_.at(c); }
  std::optional<std::size_t> column_index(const std::string& name) const;
  std::size_t require_column(const std::string& name) const;

  const std::optional<std::string>& target_name() const { return target_; }
  bool has_target() const { return target_.has_value(); }
  std::size_t target_index() const;

  const Cell& cell(std::size_t r, std::size_t c) const { return rows_[r][c]; }
  bool is_missing(std::size_t r, std::size_t c) const { return !rows_[r][c].has_value(); }
  // Parsed value for numeric columns; NaN when missing.
  double numeric(std::size_t r, std::size_t c) const { return numeric_cache_[c][r]; }

  const std::string& fingerprint() const { return fingerprint_; }

  // All column indices except the target.
  std::vector<std::size_t> feature_indices() const;
  // Target value of a row ("" never occurs; missing labels map to nullopt).
  const Cell& label(std::size_t r) const { return rows_[r][target_index()]; }
  // Distinct non-missing target values with their counts.
  std::map<std::string, std::size_t> class_counts() const;

  Dataset with_rows_removed(const std::vector<std::size_t>& rows) const;
  Dataset with_columns_removed(const std::vector<std::size_t>& cols) const;
  Dataset with_rows_appended(std::vector<Row> rows) const;
  Dataset with_cells_replaced(
      const std::vector<std::tuple<std::size_t, std::size_t, Cell>>& edits) const;

 private:
  Dataset() = default;
  void rebuild();

  std::vector<ColumnSchema> columns_;
  std::vector<Row> rows_;
  std::optional<std::string> target_;
  std::string fingerprint_;
  // Column-major parse cache; NaN for missing cells and non-numeric columns.
  std::vector<std::vector<double>> numeric_cache_;
};

// Strict full-token parse with surrounding-whitespace trim.
std::optional<double> parse_number(const std::string& text);

// Canonical text form for numeric cells: integral values print without an
// exponent or decimal point, everything else shortest round-trip.
std::string format_number(double v);

// SHA-256 hex digest of a byte string.
std::string sha256_hex(const std::string& bytes);

}  // namespace dqtk
