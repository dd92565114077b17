#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dqtk/dataset.hpp"
#include "dqtk/quality.hpp"

namespace dqtk {

struct ParityConfig {
  double balanced_share = 0.30;   // minority share at or above this scores 1
  std::size_t small_minority = 20;  // size penalty threshold
  std::size_t overlap_k = 5;      // neighborhood size for difficult-sample tags
};

struct ParityAnalysis {
  std::map<std::string, std::size_t> class_counts;
  std::string minority_label;
  std::string majority_label;
  double imbalance_ratio = 1.0;    // n_maj / n_min
  double difficult_fraction = 0.0; // minority rows tagged PD or FD
  std::size_t minority_size = 0;
  bool binary = false;
  std::optional<std::string> note;
};

enum class ResamplingMethod { RandomOversample, BorderlineSmote2, SmoteNc, Smote };
std::string to_string(ResamplingMethod m);
ResamplingMethod resampling_method_from_string(const std::string& s);

enum class EvalMetric { F1, AucRoc, GMean, Recall };
std::string to_string(EvalMetric m);
EvalMetric eval_metric_from_string(const std::string& s);

struct ResamplingPlan {
  ResamplingMethod method = ResamplingMethod::RandomOversample;
  std::map<std::string, std::size_t> target_counts;  // >= current counts
  std::uint64_t gap_seed = 42;
};

// Provenance of one synthetic row, kept for auditing and property checks.
struct SyntheticRecord {
  std::size_t seed_row = 0;
  std::optional<std::size_t> neighbor_row;
  double gap = 0.0;
};

struct ResampleOutcome {
  Dataset dataset;
  std::vector<SyntheticRecord> synthetic;
  std::vector<std::string> warnings;
};

// Minority-share score: 1 at or above the balanced share regardless of other
// factors; otherwise share/balanced * (1 - difficult_fraction) * size penalty.
double parity_score(double minority_share, double difficult_fraction,
                    std::size_t minority_size, const ParityConfig& cfg = {});

ParityAnalysis analyze_parity(const Dataset& ds, const ParityConfig& cfg = {});
QualityResult assess_parity(const Dataset& ds, const ParityConfig& cfg = {});

// Paper-derived recommendation rules; binary targets only.
ResamplingPlan recommend_resampling(const ParityAnalysis& analysis, EvalMetric eval_metric,
                                    bool has_categorical, std::uint64_t gap_seed = 42);

ResampleOutcome resample(const Dataset& ds, const ResamplingPlan& plan);

}  // namespace dqtk
