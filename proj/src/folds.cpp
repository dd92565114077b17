#include "dqtk/folds.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace dqtk {

FoldResult stratified_folds(const Dataset& ds, std::uint64_t seed, std::size_t folds) {
  if (folds < 1) throw Error("folds must be >= 1");
  const std::size_t t = ds.target_index();

  std::map<std::string, std::vector<std::size_t>> by_class;
  for (std::size_t r = 0; r < ds.n_rows(); ++r) {
    const Cell& label = ds.cell(r, t);
    by_class[label ? *label : std::string("\x01missing")].push_back(r);
  }

  FoldResult result;
  result.folds.assign(folds, {});
  std::mt19937_64 rng(seed);
  for (auto& [label, members] : by_class) {
    if (members.size() < folds) {
      result.warnings.push_back("class '" + label + "' has " +
                                std::to_string(members.size()) +
                                " members; using " + std::to_string(members.size()) +
                                " folds for that class");
    }
    std::shuffle(members.begin(), members.end(), rng);
    for (std::size_t i = 0; i < members.size(); ++i) {
      result.folds[i % folds].push_back(members[i]);
    }
  }
  for (auto& fold : result.folds) std::sort(fold.begin(), fold.end());
  return result;
}

}  // namespace dqtk
