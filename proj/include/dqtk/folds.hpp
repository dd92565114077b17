#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dqtk/dataset.hpp"

namespace dqtk {

struct FoldResult {
  std::vector<std::vector<std::size_t>> folds;  // disjoint, union = all rows
  std::vector<std::string> warnings;
};

// Deterministic stratified partition: rows of each class are shuffled with the
// seed and dealt round-robin, so per-class counts across folds differ by at
// most one. Classes smaller than the fold count land in fewer folds (warned).
// Rows with a missing label are stratified as their own pseudo-class.
FoldResult stratified_folds(const Dataset& ds, std::uint64_t seed, std::size_t folds);

}  // namespace dqtk
