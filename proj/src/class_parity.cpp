#include "dqtk/class_parity.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "dqtk/class_overlap.hpp"
#include "dqtk/distance.hpp"

namespace dqtk {

std::string to_string(ResamplingMethod m) {
  switch (m) {
    case ResamplingMethod::RandomOversample: return "random_oversample";
    case ResamplingMethod::BorderlineSmote2: return "borderline_smote2";
    case ResamplingMethod::SmoteNc: return "smote_nc";
    case ResamplingMethod::Smote: return "smote";
  }
  return "random_oversample";
}

ResamplingMethod resampling_method_from_string(const std::string& s) {
  if (s == "random_oversample") return ResamplingMethod::RandomOversample;
  if (s == "borderline_smote2") return ResamplingMethod::BorderlineSmote2;
  if (s == "smote_nc") return ResamplingMethod::SmoteNc;
  if (s == "smote") return ResamplingMethod::Smote;
  throw Error("unknown resampling method '" + s + "'");
}

std::string to_string(EvalMetric m) {
  switch (m) {
    case EvalMetric::F1: return "f1";
    case EvalMetric::AucRoc: return "auc_roc";
    case EvalMetric::GMean: return "g_mean";
    case EvalMetric::Recall: return "recall";
  }
  return "f1";
}

EvalMetric eval_metric_from_string(const std::string& s) {
  if (s == "f1") return EvalMetric::F1;
  if (s == "auc_roc") return EvalMetric::AucRoc;
  if (s == "g_mean") return EvalMetric::GMean;
  if (s == "recall") return EvalMetric::Recall;
  throw Error("unknown eval metric '" + s + "'");
}

double parity_score(double minority_share, double difficult_fraction,
                    std::size_t minority_size, const ParityConfig& cfg) {
  if (minority_share >= cfg.balanced_share) return 1.0;
  const double size_penalty =
      std::min(1.0, static_cast<double>(minority_size) /
                        static_cast<double>(cfg.small_minority));
  return (minority_share / cfg.balanced_share) * (1.0 - difficult_fraction) *
         size_penalty;
}

ParityAnalysis analyze_parity(const Dataset& ds, const ParityConfig& cfg) {
  ParityAnalysis analysis;
  analysis.class_counts = ds.class_counts();
  if (analysis.class_counts.size() < 2) {
    throw Error("class_parity: need at least 2 classes");
  }
  analysis.binary = analysis.class_counts.size() == 2;

  // Smallest count wins minority (lexicographically smallest label on ties);
  // largest count wins majority the same way.
  for (const auto& [label, count] : analysis.class_counts) {
    if (analysis.minority_label.empty() ||
        count < analysis.class_counts.at(analysis.minority_label)) {
      analysis.minority_label = label;
    }
    if (analysis.majority_label.empty() ||
        count > analysis.class_counts.at(analysis.majority_label)) {
      analysis.majority_label = label;
    }
  }
  const double n_min =
      static_cast<double>(analysis.class_counts.at(analysis.minority_label));
  const double n_maj =
      static_cast<double>(analysis.class_counts.at(analysis.majority_label));
  analysis.imbalance_ratio = n_maj / n_min;
  analysis.minority_size = analysis.class_counts.at(analysis.minority_label);

  // Difficult samples: minority rows whose neighborhoods disagree (PD or FD).
  if (ds.n_rows() > cfg.overlap_k) {
    const auto tags = tag_disagreement(ds, cfg.overlap_k);
    const std::size_t t = ds.target_index();
    std::size_t difficult = 0, minority_rows = 0;
    for (const auto& tag : tags) {
      const Cell& label = ds.cell(tag.row, t);
      if (!label || *label != analysis.minority_label) continue;
      ++minority_rows;
      if (tag.tag != AgreementTag::FullAgreement) ++difficult;
    }
    if (minority_rows) {
      analysis.difficult_fraction =
          static_cast<double>(difficult) / static_cast<double>(minority_rows);
    }
  } else {
    analysis.note = "too few rows to tag difficult samples";
  }
  return analysis;
}

QualityResult assess_parity(const Dataset& ds, const ParityConfig& cfg) {
  QualityResult result;
  result.metric_id = MetricId::ClassParity;
  result.dataset_fingerprint = ds.fingerprint();

  const auto analysis = analyze_parity(ds, cfg);
  const double n_maj =
      static_cast<double>(analysis.class_counts.at(analysis.majority_label));

  double score = 1.0;
  if (analysis.binary) {
    const double n_min = static_cast<double>(analysis.minority_size);
    score = parity_score(n_min / (n_min + n_maj), analysis.difficult_fraction,
                         analysis.minority_size, cfg);
  } else {
    // Multi-class extension: worst pairwise score against the majority.
    const std::size_t t = ds.target_index();
    std::vector<DisagreementTag> tags;
    if (ds.n_rows() > cfg.overlap_k) tags = tag_disagreement(ds, cfg.overlap_k);
    for (const auto& [label, count] : analysis.class_counts) {
      if (label == analysis.majority_label) continue;
      const double share = static_cast<double>(count) /
                           (static_cast<double>(count) + n_maj);
      double difficult = 0.0;
      if (!tags.empty()) {
        std::size_t rows = 0, hard = 0;
        for (const auto& tag : tags) {
          const Cell& l = ds.cell(tag.row, t);
          if (!l || *l != label) continue;
          ++rows;
          if (tag.tag != AgreementTag::FullAgreement) ++hard;
        }
        if (rows) difficult = static_cast<double>(hard) / static_cast<double>(rows);
      }
      score = std::min(score, parity_score(share, difficult, count, cfg));
    }
  }

  result.details["class_counts"] = analysis.class_counts;
  result.details["imbalance_ratio"] = analysis.imbalance_ratio;
  result.details["difficult_fraction"] = analysis.difficult_fraction;
  result.details["minority_size"] = analysis.minority_size;
  if (analysis.note) result.details["note"] = *analysis.note;
  result.score = score;

  if (score >= 1.0) {
    result.explanation = "Class sizes are balanced enough for training.";
  } else if (analysis.binary) {
    result.explanation =
        "Minority class '" + analysis.minority_label + "' holds " +
        std::to_string(analysis.minority_size) +
        " rows against an imbalance ratio of " +
        format_number(analysis.imbalance_ratio) + "; oversampling recommended.";
    Recommendation rec;
    rec.action_text =
        "Oversample the minority class; the method depends on the evaluation "
        "metric you care about and on categorical features.";
    rec.remediation_op_id = "resample";
    rec.parameter_hints["minority_label"] = analysis.minority_label;
    result.recommendations.push_back(std::move(rec));
  } else {
    result.explanation =
        "Multi-class imbalance scored pairwise against the majority class; "
        "resampling recommendations apply to binary targets only.";
    result.details["note"] = "multi-class target: recommendations suppressed";
  }
  return result;
}

ResamplingPlan recommend_resampling(const ParityAnalysis& analysis, EvalMetric eval_metric,
                                    bool has_categorical, std::uint64_t gap_seed) {
  if (!analysis.binary) throw Error("resampling recommendations need a binary target");
  ResamplingPlan plan;
  plan.gap_seed = gap_seed;
  switch (eval_metric) {
    case EvalMetric::F1:
    case EvalMetric::AucRoc:
    case EvalMetric::GMean:
      plan.method = ResamplingMethod::RandomOversample;
      break;
    case EvalMetric::Recall:
      plan.method = has_categorical ? ResamplingMethod::SmoteNc
                                    : ResamplingMethod::BorderlineSmote2;
      break;
  }
  const std::size_t n_maj = analysis.class_counts.at(analysis.majority_label);
  for (const auto& [label, count] : analysis.class_counts) {
    plan.target_counts[label] = std::max(count, n_maj);
  }
  return plan;
}

namespace {

Row interpolated_row(const Dataset& ds, std::size_t seed_row, std::size_t neighbor_row,
                     double gap, bool nc_mode,
                     const std::vector<std::size_t>& minority_rows,
                     const HeomMetric& metric, std::size_t k) {
  Row out(ds.n_cols());
  const std::size_t t = ds.target_index();
  std::vector<Neighbor> nc_neighbors;
  if (nc_mode) {
    nc_neighbors = knn_among(metric, seed_row, minority_rows, k);
  }
  for (std::size_t c = 0; c < ds.n_cols(); ++c) {
    if (c == t) {
      out[c] = ds.cell(seed_row, c);
      continue;
    }
    const auto& col = ds.column(c);
    if (col.kind == ColumnKind::Numeric) {
      if (ds.is_missing(seed_row, c) || ds.is_missing(neighbor_row, c)) {
        out[c] = ds.cell(seed_row, c);
        continue;
      }
      const double a = ds.numeric(seed_row, c);
      const double b = ds.numeric(neighbor_row, c);
      out[c] = format_number(a + gap * (b - a));
    } else if (nc_mode) {
      // Mode over the seed's minority neighborhood; lexicographic tie-break.
      std::map<std::string, std::size_t> tally;
      for (const auto& nb : nc_neighbors) {
        if (!ds.is_missing(nb.row, c)) ++tally[*ds.cell(nb.row, c)];
      }
      if (tally.empty()) {
        out[c] = ds.cell(seed_row, c);
      } else {
        std::string best;
        std::size_t best_count = 0;
        for (const auto& [value, count] : tally) {
          if (count > best_count) {
            best = value;
            best_count = count;
          }
        }
        out[c] = best;
      }
    } else {
      out[c] = ds.cell(seed_row, c);
    }
  }
  return out;
}

}  // namespace

ResampleOutcome resample(const Dataset& ds, const ResamplingPlan& plan) {
  const std::size_t t = ds.target_index();
  const auto counts = ds.class_counts();
  for (const auto& [label, target] : plan.target_counts) {
    const auto it = counts.find(label);
    if (it == counts.end()) throw Error("resample: unknown class '" + label + "'");
    if (target < it->second) {
      throw Error("resample: target count for '" + label +
                  "' is below the current count (oversampling only)");
    }
  }

  std::mt19937_64 rng(plan.gap_seed);
  std::vector<Row> synthetic_rows;
  std::vector<SyntheticRecord> records;
  std::vector<std::string> warnings;
  HeomMetric metric(ds);

  for (const auto& [label, target] : plan.target_counts) {
    const std::size_t current = counts.at(label);
    if (target == current) continue;
    std::size_t need = target - current;

    std::vector<std::size_t> class_rows;
    for (std::size_t r = 0; r < ds.n_rows(); ++r) {
      const Cell& l = ds.cell(r, t);
      if (l && *l == label) class_rows.push_back(r);
    }

    if (plan.method == ResamplingMethod::RandomOversample) {
      std::uniform_int_distribution<std::size_t> pick(0, class_rows.size() - 1);
      while (need--) {
        const std::size_t r = class_rows[pick(rng)];
        Row copy(ds.n_cols());
        for (std::size_t c = 0; c < ds.n_cols(); ++c) copy[c] = ds.cell(r, c);
        synthetic_rows.push_back(std::move(copy));
        records.push_back({r, std::nullopt, 0.0});
      }
      continue;
    }

    if (class_rows.size() < 2) throw Error("need >= 2 minority rows");
    std::size_t k = 5;
    if (k > class_rows.size() - 1) {
      k = class_rows.size() - 1;
      warnings.push_back("k reduced to " + std::to_string(k) + " for class '" +
                         label + "'");
    }

    std::vector<std::size_t> seeds = class_rows;
    const bool borderline = plan.method == ResamplingMethod::BorderlineSmote2;
    std::vector<std::vector<Neighbor>> all_neighbors;  // over the whole dataset
    if (borderline) {
      const std::size_t k_all = std::min(k, ds.n_rows() - 1);
      std::vector<std::size_t> danger;
      for (std::size_t r : class_rows) {
        std::vector<std::size_t> everyone(ds.n_rows());
        std::iota(everyone.begin(), everyone.end(), std::size_t{0});
        const auto nbs = knn_among(metric, r, everyone, k_all);
        std::size_t other = 0;
        for (const auto& nb : nbs) {
          const Cell& l = ds.cell(nb.row, t);
          if (!l || *l != label) ++other;
        }
        // Danger zone: over half but not all neighbors from other classes.
        if (2 * other > nbs.size() && other < nbs.size()) danger.push_back(r);
      }
      if (danger.empty()) {
        warnings.push_back("no danger points for class '" + label +
                           "'; falling back to all class rows as seeds");
      } else {
        seeds = std::move(danger);
      }
    }

    std::uniform_int_distribution<std::size_t> pick_seed(0, seeds.size() - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    while (need--) {
      const std::size_t seed_row = seeds[pick_seed(rng)];
      std::size_t neighbor_row = seed_row;
      double gap = 0.0;
      if (borderline) {
        // Interpolate toward any of the k nearest rows; majority neighbors
        // get a half-length step.
        std::vector<std::size_t> everyone(ds.n_rows());
        std::iota(everyone.begin(), everyone.end(), std::size_t{0});
        const auto nbs = knn_among(metric, seed_row, everyone,
                                   std::min(k, ds.n_rows() - 1));
        std::uniform_int_distribution<std::size_t> pick_nb(0, nbs.size() - 1);
        neighbor_row = nbs[pick_nb(rng)].row;
        const Cell& l = ds.cell(neighbor_row, t);
        const bool same_class = l && *l == label;
        gap = same_class ? unit(rng) : unit(rng) * 0.5;
      } else {
        const auto nbs = knn_among(metric, seed_row, class_rows, k);
        std::uniform_int_distribution<std::size_t> pick_nb(0, nbs.size() - 1);
        neighbor_row = nbs[pick_nb(rng)].row;
        gap = unit(rng);
      }
      synthetic_rows.push_back(interpolated_row(
          ds, seed_row, neighbor_row, gap,
          plan.method == ResamplingMethod::SmoteNc, class_rows, metric, k));
      records.push_back({seed_row, neighbor_row, gap});
    }
  }

  ResampleOutcome outcome{ds.with_rows_appended(std::move(synthetic_rows)),
                          std::move(records), std::move(warnings)};
  return outcome;
}

}  // namespace dqtk
