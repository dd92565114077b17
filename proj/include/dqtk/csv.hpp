#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dqtk/dataset.hpp"

namespace dqtk {

struct CsvOptions {
  std::optional<std::string> target;
  // Explicit kinds win over inference.
  std::map<std::string, ColumnKind> kind_overrides;
  // Matched case-insensitively after whitespace trim; empty string always counts.
  std::vector<std::string> missing_tokens{"NA", "N/A", "?"};
};

// RFC-4180 CSV with a mandatory header row.
Dataset load_csv(const std::string& path, const CsvOptions& opts = {});
Dataset load_csv_text(std::string_view text, const CsvOptions& opts = {});

std::string to_csv_text(const Dataset& ds);
void write_csv(const Dataset& ds, const std::string& path);

}  // namespace dqtk
