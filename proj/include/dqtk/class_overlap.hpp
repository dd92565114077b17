#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dqtk/dataset.hpp"
#include "dqtk/distance.hpp"
#include "dqtk/quality.hpp"

namespace dqtk {

struct OverlapConfig {
  std::size_t k = 5;
  double theta_low = 0.3;   // below: full agreement
  double theta_high = 0.7;  // at or above: full disagreement
};

enum class AgreementTag { FullAgreement, PartialDisagreement, FullDisagreement };
std::string to_string(AgreementTag tag);

struct DisagreementTag {
  std::size_t row = 0;
  double disagreement = 0.0;  // fraction of the k neighbors with another class
  AgreementTag tag = AgreementTag::FullAgreement;
};

struct OverlapRegion {
  std::size_t id = 0;
  std::vector<std::size_t> members;  // sorted row indices, all PD
  std::set<std::string> classes_present;
  // Numeric features -> observed (min, max) over members; other features ->
  // the set of member values.
  std::map<std::string, std::pair<double, double>> numeric_ranges;
  std::map<std::string, std::set<std::string>> value_sets;
};

struct OverlapAnalysis {
  std::vector<DisagreementTag> tags;
  std::vector<std::vector<Neighbor>> neighbors;
  std::vector<OverlapRegion> regions;
  std::vector<std::size_t> fd_rows;
  std::vector<std::size_t> isolated_pd_rows;  // PD rows in no mixed-class region
  std::optional<std::string> note;            // e.g. single-class dataset
  bool in_region(std::size_t row) const;
};

// Per-row neighborhood disagreement, one tag per row (k exact neighbors,
// self excluded). Single-class datasets come back all-FA with a note.
std::vector<DisagreementTag> tag_disagreement(const Dataset& ds, std::size_t k,
                                              const OverlapConfig& cfg = {});

// Connected components over PD points (edge when either point appears in the
// other's k-neighborhood) of size >= 2 spanning >= 2 classes.
std::vector<OverlapRegion> propagate_regions(const Dataset& ds,
                                             const std::vector<DisagreementTag>& tags,
                                             const std::vector<std::vector<Neighbor>>& neighbors);

OverlapAnalysis analyze_overlap(const Dataset& ds, const OverlapConfig& cfg = {});

QualityResult assess_overlap(const Dataset& ds, const OverlapConfig& cfg = {});
QualityResult assess_overlap(const Dataset& ds, const OverlapAnalysis& analysis);

}  // namespace dqtk
