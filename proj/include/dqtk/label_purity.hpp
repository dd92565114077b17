#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dqtk/class_overlap.hpp"
#include "dqtk/dataset.hpp"
#include "dqtk/quality.hpp"

namespace dqtk {

struct LabelPurityConfig {
  std::size_t folds = 5;
  std::size_t k = 10;          // neighbors for probability estimation and pruning
  std::uint64_t seed = 42;
  bool filters = true;         // overlap-region and neighborhood filters
  std::size_t min_rows = 20;   // below this the metric abstains
  OverlapConfig overlap;       // used for the overlap-region filter
};

struct ProbabilityEstimate {
  std::vector<std::string> classes;        // sorted class labels
  std::vector<std::vector<double>> probs;  // per row, per class; rows sum to 1
  std::vector<std::size_t> labeled_rows;   // rows with a non-missing label
  std::size_t folds = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;       // singleton classes etc.
  std::vector<std::string> excluded_classes;  // classes with < 2 members

  std::optional<std::size_t> class_index(const std::string& label) const;
};

struct ConfidentJoint {
  std::vector<std::vector<std::size_t>> counts;  // [given][suggested]
  std::vector<double> thresholds;                // per-class mean self-confidence
};

enum class CandidateFilter { None, OverlapRegion, NeighborhoodPrune };
std::string to_string(CandidateFilter f);

struct NoisyCandidate {
  std::size_t row = 0;
  std::string given_label;
  std::string suggested_label;
  double confidence = 0.0;  // estimated probability of the suggested class
  CandidateFilter filtered_by = CandidateFilter::None;
};

struct NoiseAnalysis {
  std::vector<NoisyCandidate> candidates;  // filtered ones included, marked
  std::size_t survivors = 0;
  std::optional<std::string> note;
};

// Cross-fitted smoothed-KNN class probabilities: each row is scored by its k
// nearest neighbors in the other folds with Laplace smoothing, so no row is
// ever scored by a fold it belongs to.
ProbabilityEstimate estimate_probabilities(const Dataset& ds, std::size_t folds = 5,
                                           std::size_t k = 10, std::uint64_t seed = 42);

// Count matrix C[i][j]: rows with given label i whose estimated probability
// for class j clears the class-j threshold (argmax among qualifying classes).
ConfidentJoint confident_joint(const ProbabilityEstimate& est,
                               const std::vector<std::optional<std::string>>& given_labels);

NoiseAnalysis detect_noise_analysis(const Dataset& ds, const LabelPurityConfig& cfg = {});
QualityResult detect_noise(const Dataset& ds, const LabelPurityConfig& cfg = {});

// Overwrites accepted suggested labels. `accept` maps candidate rows to the
// replacement label; rows must be surviving candidates of `analysis`.
Dataset correct_labels(const Dataset& ds, const NoiseAnalysis& analysis,
                       const std::vector<std::pair<std::size_t, std::string>>& accept);

}  // namespace dqtk
