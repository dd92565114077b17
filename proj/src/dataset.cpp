#include "dqtk/dataset.hpp"

#include <openssl/sha.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>

namespace dqtk {

std::string to_string(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::Numeric: return "numeric";
    case ColumnKind::Categorical: return "categorical";
    case ColumnKind::Text: return "text";
  }
  return "text";
}

ColumnKind column_kind_from_string(const std::string& s) {
  if (s == "numeric") return ColumnKind::Numeric;
  if (s == "categorical") return ColumnKind::Categorical;
  if (s == "text") return ColumnKind::Text;
  throw Error("unknown column kind '" + s + "'");
}

std::optional<double> parse_number(const std::string& text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  if (begin == end) return std::nullopt;
  double value = 0.0;
  const char* first = text.data() + begin;
  const char* last = text.data() + end;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

std::string format_number(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.0f", v);
    return buf;
  }
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw Error("cannot format number");
  return std::string(buf, ptr);
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(), digest);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * SHA256_DIGEST_LENGTH);
  for (unsigned char b : digest) {
    out.push_back(hex[b >> 4]);
    out.push_back(hex[b & 0xf]);
  }
  return out;
}

namespace {

void append_sized(std::string& buf, const std::string& s) {
  std::uint64_t len = s.size();
  char lenbuf[8];
  std::memcpy(lenbuf, &len, 8);
  buf.append(lenbuf, 8);
  buf.append(s);
}

}  // namespace

Dataset Dataset::from_cells(std::vector<std::string> names,
                            std::vector<ColumnKind> kinds,
                            std::vector<Row> rows,
                            std::optional<std::string> target) {
  if (names.size() != kinds.size()) throw Error("names/kinds arity mismatch");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != names.size()) {
      throw Error("row " + std::to_string(r) + " has arity " +
                  std::to_string(rows[r].size()) + ", expected " +
                  std::to_string(names.size()));
    }
  }
  Dataset ds;
  ds.columns_.resize(names.size());
  for (std::size_t c = 0; c < names.size(); ++c) {
    ds.columns_[c].name = std::move(names[c]);
    ds.columns_[c].kind = kinds[c];
  }
  ds.rows_ = std::move(rows);
  if (target) {
    bool found = false;
    for (const auto& col : ds.columns_) found = found || col.name == *target;
    if (!found) throw Error("target column '" + *target + "' absent");
    ds.target_ = std::move(target);
  }
  ds.rebuild();
  return ds;
}

void Dataset::rebuild() {
  const std::size_t n = rows_.size();
  const std::size_t m = columns_.size();
  numeric_cache_.assign(m, std::vector<double>(n, std::numeric_limits<double>::quiet_NaN()));
  for (std::size_t c = 0; c < m; ++c) {
    auto& col = columns_[c];
    col.domain.clear();
    col.missing_count = 0;
    bool any_numeric = false;
    double lo = 0.0, hi = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const Cell& cell = rows_[r][c];
      if (!cell) {
        ++col.missing_count;
        continue;
      }
      if (col.kind == ColumnKind::Numeric) {
        auto v = parse_number(*cell);
        if (!v) {
          throw Error("non-numeric value '" + *cell + "' in numeric column '" +
                      col.name + "'");
        }
        numeric_cache_[c][r] = *v;
        if (!any_numeric) {
          lo = hi = *v;
          any_numeric = true;
        } else {
          lo = std::min(lo, *v);
          hi = std::max(hi, *v);
        }
      } else {
        col.domain.insert(*cell);
      }
    }
    col.min = any_numeric ? lo : 0.0;
    col.max = any_numeric ? hi : 0.0;
  }

  std::string buf = "dqtk:v1";
  for (const auto& col : columns_) {
    append_sized(buf, col.name);
    append_sized(buf, to_string(col.kind));
  }
  append_sized(buf, target_ ? *target_ : std::string("\x01none"));
  for (const auto& row : rows_) {
    for (const auto& cell : row) {
      if (cell) {
        buf.push_back('\x02');
        append_sized(buf, *cell);
      } else {
        buf.push_back('\x01');
      }
    }
  }
  fingerprint_ = sha256_hex(buf);
}

std::optional<std::size_t> Dataset::column_index(const std::string& name) const {
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (columns_[c].name == name) return c;
  }
  return std::nullopt;
}

std::size_t Dataset::require_column(const std::string& name) const {
  auto idx = column_index(name);
  if (!idx) throw Error("column '" + name + "' absent");
  return *idx;
}

std::size_t Dataset::target_index() const {
  if (!target_) throw Error("target required");
  return require_column(*target_);
}

std::vector<std::size_t> Dataset::feature_indices() const {
  std::vector<std::size_t> out;
  std::optional<std::size_t> t;
  if (target_) t = require_column(*target_);
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (!t || c != *t) out.push_back(c);
  }
  return out;
}

std::map<std::string, std::size_t> Dataset::class_counts() const {
  std::map<std::string, std::size_t> counts;
  const std::size_t t = target_index();
  for (std::size_t r = 0; r < n_rows(); ++r) {
    if (rows_[r][t]) ++counts[*rows_[r][t]];
  }
  return counts;
}

Dataset Dataset::with_rows_removed(const std::vector<std::size_t>& rows) const {
  std::vector<bool> drop(n_rows(), false);
  for (std::size_t r : rows) {
    if (r >= n_rows()) throw Error("row index " + std::to_string(r) + " out of range");
    drop[r] = true;
  }
  Dataset ds;
  ds.columns_ = columns_;
  ds.target_ = target_;
  ds.rows_.reserve(n_rows());
  for (std::size_t r = 0; r < n_rows(); ++r) {
    if (!drop[r]) ds.rows_.push_back(rows_[r]);
  }
  ds.rebuild();
  return ds;
}

Dataset Dataset::with_columns_removed(const std::vector<std::size_t>& cols) const {
  std::vector<bool> drop(n_cols(), false);
  for (std::size_t c : cols) {
    if (c >= n_cols()) throw Error("column index out of range");
    if (target_ && columns_[c].name == *target_) throw Error("cannot drop target column");
    drop[c] = true;
  }
  Dataset ds;
  ds.target_ = target_;
  for (std::size_t c = 0; c < n_cols(); ++c) {
    if (!drop[c]) ds.columns_.push_back(columns_[c]);
  }
  ds.rows_.reserve(n_rows());
  for (const auto& row : rows_) {
    Row out;
    out.reserve(ds.columns_.size());
    for (std::size_t c = 0; c < n_cols(); ++c) {
      if (!drop[c]) out.push_back(row[c]);
    }
    ds.rows_.push_back(std::move(out));
  }
  ds.rebuild();
  return ds;
}

Dataset Dataset::with_rows_appended(std::vector<Row> rows) const {
  for (const auto& row : rows) {
    if (row.size() != n_cols()) throw Error("appended row arity mismatch");
  }
  Dataset ds;
  ds.columns_ = columns_;
  ds.target_ = target_;
  ds.rows_ = rows_;
  for (auto& row : rows) ds.rows_.push_back(std::move(row));
  ds.rebuild();
  return ds;
}

Dataset Dataset::with_cells_replaced(
    const std::vector<std::tuple<std::size_t, std::size_t, Cell>>& edits) const {
  Dataset ds;
  ds.columns_ = columns_;
  ds.target_ = target_;
  ds.rows_ = rows_;
  for (const auto& [r, c, value] : edits) {
    if (r >= n_rows() || c >= n_cols()) throw Error("cell edit out of range");
    ds.rows_[r][c] = value;
  }
  ds.rebuild();
  return ds;
}

}  // namespace dqtk
