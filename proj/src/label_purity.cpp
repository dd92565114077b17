#include "dqtk/label_purity.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "dqtk/distance.hpp"
#include "dqtk/folds.hpp"

namespace dqtk {

std::string to_string(CandidateFilter f) {
  switch (f) {
    case CandidateFilter::None: return "none";
    case CandidateFilter::OverlapRegion: return "overlap_region";
    case CandidateFilter::NeighborhoodPrune: return "neighborhood_prune";
  }
  return "none";
}

std::optional<std::size_t> ProbabilityEstimate::class_index(const std::string& label) const {
  const auto it = std::lower_bound(classes.begin(), classes.end(), label);
  if (it == classes.end() || *it != label) return std::nullopt;
  return static_cast<std::size_t>(it - classes.begin());
}

ProbabilityEstimate estimate_probabilities(const Dataset& ds, std::size_t folds,
                                           std::size_t k, std::uint64_t seed) {
  const std::size_t t = ds.target_index();
  ProbabilityEstimate est;
  est.folds = folds;
  est.seed = seed;

  const auto counts = ds.class_counts();
  for (const auto& [label, count] : counts) {
    est.classes.push_back(label);
    if (count < 2) {
      est.warnings.push_back("class '" + label +
                             "' has a single member; excluded from noise detection");
      est.excluded_classes.push_back(label);
    }
  }
  const std::size_t c = est.classes.size();
  if (c == 0) throw Error("label_purity: no labeled rows");

  for (std::size_t r = 0; r < ds.n_rows(); ++r) {
    if (!ds.is_missing(r, t)) est.labeled_rows.push_back(r);
  }

  const auto fold_split = stratified_folds(ds, seed, folds);
  for (const auto& w : fold_split.warnings) est.warnings.push_back(w);

  est.probs.assign(ds.n_rows(), std::vector<double>(c, 0.0));
  HeomMetric metric(ds);
  std::map<std::string, std::size_t> class_pos;
  for (std::size_t i = 0; i < c; ++i) class_pos[est.classes[i]] = i;

  for (std::size_t f = 0; f < fold_split.folds.size(); ++f) {
    // Training pool: labeled rows outside this fold.
    std::vector<bool> held(ds.n_rows(), false);
    for (std::size_t r : fold_split.folds[f]) held[r] = true;
    std::vector<std::size_t> pool;
    for (std::size_t r : est.labeled_rows) {
      if (!held[r]) pool.push_back(r);
    }
    if (pool.empty()) continue;
    const std::size_t k_eff = std::min(k, pool.size());
    for (std::size_t r : fold_split.folds[f]) {
      const auto nbs = knn_among(metric, r, pool, k_eff);
      std::vector<std::size_t> tally(c, 0);
      for (const auto& nb : nbs) {
        const Cell& label = ds.cell(nb.row, t);
        if (label) ++tally[class_pos.at(*label)];
      }
      // Laplace-smoothed neighbor vote.
      const double denom = static_cast<double>(nbs.size()) + static_cast<double>(c);
      for (std::size_t j = 0; j < c; ++j) {
        est.probs[r][j] = (static_cast<double>(tally[j]) + 1.0) / denom;
      }
    }
  }
  return est;
}

ConfidentJoint confident_joint(const ProbabilityEstimate& est,
                               const std::vector<std::optional<std::string>>& given_labels) {
  const std::size_t c = est.classes.size();
  ConfidentJoint joint;
  joint.counts.assign(c, std::vector<std::size_t>(c, 0));
  joint.thresholds.assign(c, 0.0);

  // t_j = mean estimated probability of class j over rows labeled j.
  std::vector<std::size_t> members(c, 0);
  for (std::size_t r = 0; r < given_labels.size(); ++r) {
    if (!given_labels[r]) continue;
    const auto gi = est.class_index(*given_labels[r]);
    if (!gi) continue;
    joint.thresholds[*gi] += est.probs[r][*gi];
    ++members[*gi];
  }
  for (std::size_t j = 0; j < c; ++j) {
    if (members[j]) joint.thresholds[j] /= static_cast<double>(members[j]);
  }

  for (std::size_t r = 0; r < given_labels.size(); ++r) {
    if (!given_labels[r]) continue;
    const auto gi = est.class_index(*given_labels[r]);
    if (!gi) continue;
    std::optional<std::size_t> best;
    for (std::size_t j = 0; j < c; ++j) {
      if (est.probs[r][j] < joint.thresholds[j]) continue;
      if (!best || est.probs[r][j] > est.probs[r][*best]) best = j;
    }
    if (best) ++joint.counts[*gi][*best];
  }
  return joint;
}

namespace {

std::vector<std::optional<std::string>> labels_of(const Dataset& ds) {
  const std::size_t t = ds.target_index();
  std::vector<std::optional<std::string>> labels(ds.n_rows());
  for (std::size_t r = 0; r < ds.n_rows(); ++r) labels[r] = ds.cell(r, t);
  return labels;
}

// Most frequent label among a row's neighbors; the full modal set on ties.
std::set<std::string> neighbor_modes(const Dataset& ds,
                                     const std::vector<Neighbor>& neighbors) {
  const std::size_t t = ds.target_index();
  std::map<std::string, std::size_t> tally;
  for (const auto& nb : neighbors) {
    const Cell& label = ds.cell(nb.row, t);
    if (label) ++tally[*label];
  }
  std::size_t best = 0;
  for (const auto& [_, count] : tally) best = std::max(best, count);
  std::set<std::string> modes;
  for (const auto& [label, count] : tally) {
    if (count == best && best > 0) modes.insert(label);
  }
  return modes;
}

}  // namespace

NoiseAnalysis detect_noise_analysis(const Dataset& ds, const LabelPurityConfig& cfg) {
  NoiseAnalysis analysis;
  const std::size_t t = ds.target_index();
  if (ds.n_rows() < cfg.min_rows) {
    analysis.note = "fewer than " + std::to_string(cfg.min_rows) +
                    " rows; label purity abstains";
    return analysis;
  }

  const auto est = estimate_probabilities(ds, cfg.folds, cfg.k, cfg.seed);
  const auto labels = labels_of(ds);
  const auto joint = confident_joint(est, labels);
  const std::size_t c = est.classes.size();

  std::vector<bool> class_excluded(c, false);
  for (const auto& label : est.excluded_classes) {
    if (auto i = est.class_index(label)) class_excluded[*i] = true;
  }

  // Rows by given class.
  std::vector<std::vector<std::size_t>> rows_by_class(c);
  for (std::size_t r = 0; r < ds.n_rows(); ++r) {
    if (!labels[r]) continue;
    if (auto i = est.class_index(*labels[r])) rows_by_class[*i].push_back(r);
  }

  // Prune-by-noise-rate: per off-diagonal cell, take the top-margin rows.
  std::optional<OverlapAnalysis> overlap;
  std::vector<std::vector<Neighbor>> prune_neighbors;
  if (cfg.filters) {
    OverlapConfig oc = cfg.overlap;
    if (ds.n_rows() > oc.k && ds.class_counts().size() >= 2) {
      overlap = analyze_overlap(ds, oc);
    }
    const std::size_t k_eff = std::min(cfg.k, ds.n_rows() - 1);
    prune_neighbors = knn(ds, NeighborQuery{k_eff, true});
  }

  for (std::size_t i = 0; i < c; ++i) {
    if (class_excluded[i]) continue;
    std::size_t row_total = 0;
    for (std::size_t j = 0; j < c; ++j) row_total += joint.counts[i][j];
    if (row_total == 0) continue;
    for (std::size_t j = 0; j < c; ++j) {
      if (j == i || joint.counts[i][j] == 0 || class_excluded[j]) continue;
      const double frac = static_cast<double>(joint.counts[i][j]) /
                          static_cast<double>(row_total);
      const auto take = static_cast<std::size_t>(std::llround(
          frac * static_cast<double>(rows_by_class[i].size())));
      if (take == 0) continue;

      std::vector<std::pair<double, std::size_t>> margins;  // (margin, row)
      for (std::size_t r : rows_by_class[i]) {
        const double margin = est.probs[r][j] - est.probs[r][i];
        if (margin > 0.0) margins.emplace_back(margin, r);
      }
      std::sort(margins.begin(), margins.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
      });
      if (margins.size() > take) margins.resize(take);

      for (const auto& [margin, r] : margins) {
        // Suggested class: highest-probability class overall; neighborhood
        // mode breaks exact ties.
        std::size_t suggestion = j;
        double best_p = est.probs[r][j];
        for (std::size_t jj = 0; jj < c; ++jj) {
          if (jj == i || class_excluded[jj]) continue;
          if (est.probs[r][jj] > best_p) {
            best_p = est.probs[r][jj];
            suggestion = jj;
          }
        }
        if (cfg.filters && !prune_neighbors.empty()) {
          const auto modes = neighbor_modes(ds, prune_neighbors[r]);
          for (std::size_t jj = 0; jj < c; ++jj) {
            if (jj == i || class_excluded[jj] || jj == suggestion) continue;
            if (est.probs[r][jj] == best_p && modes.count(est.classes[jj]) &&
                !modes.count(est.classes[suggestion])) {
              suggestion = jj;
            }
          }
        }

        NoisyCandidate cand;
        cand.row = r;
        cand.given_label = est.classes[i];
        cand.suggested_label = est.classes[suggestion];
        cand.confidence = est.probs[r][suggestion];
        analysis.candidates.push_back(std::move(cand));
      }
    }
  }

  // Deduplicate rows picked by multiple cells: keep the higher-confidence one.
  std::sort(analysis.candidates.begin(), analysis.candidates.end(),
            [](const NoisyCandidate& a, const NoisyCandidate& b) {
              if (a.row != b.row) return a.row < b.row;
              return a.confidence > b.confidence;
            });
  analysis.candidates.erase(
      std::unique(analysis.candidates.begin(), analysis.candidates.end(),
                  [](const NoisyCandidate& a, const NoisyCandidate& b) {
                    return a.row == b.row;
                  }),
      analysis.candidates.end());

  if (cfg.filters) {
    for (auto& cand : analysis.candidates) {
      if (overlap && overlap->in_region(cand.row)) {
        cand.filtered_by = CandidateFilter::OverlapRegion;
        continue;
      }
      const auto modes = neighbor_modes(ds, prune_neighbors[cand.row]);
      if (!modes.count(cand.suggested_label)) {
        cand.filtered_by = CandidateFilter::NeighborhoodPrune;
      }
    }
  }
  for (const auto& cand : analysis.candidates) {
    if (cand.filtered_by == CandidateFilter::None) ++analysis.survivors;
  }
  (void)t;
  return analysis;
}

QualityResult detect_noise(const Dataset& ds, const LabelPurityConfig& cfg) {
  QualityResult result;
  result.metric_id = MetricId::LabelPurity;
  result.dataset_fingerprint = ds.fingerprint();

  const auto analysis = detect_noise_analysis(ds, cfg);
  const double n = static_cast<double>(ds.n_rows());
  const double ratio = n == 0.0 ? 0.0 : static_cast<double>(analysis.survivors) / n;

  Json noisy = Json::array();
  for (const auto& cand : analysis.candidates) {
    Json j{{"row", cand.row},
           {"given", cand.given_label},
           {"suggested", cand.suggested_label},
           {"confidence", cand.confidence}};
    j["filtered_by"] = cand.filtered_by == CandidateFilter::None
                           ? Json(nullptr)
                           : Json(to_string(cand.filtered_by));
    noisy.push_back(std::move(j));
  }
  result.details["noise_ratio"] = ratio;
  result.details["noisy_rows"] = noisy;
  if (analysis.note) result.details["note"] = *analysis.note;

  result.score = 1.0 - ratio;
  if (analysis.note) {
    result.explanation = *analysis.note + ".";
  } else if (analysis.survivors == 0) {
    result.explanation = "No label noise detected.";
  } else {
    result.explanation = std::to_string(analysis.survivors) +
                         " row(s) look mislabeled; suggested labels attached.";
    Recommendation rec;
    rec.action_text =
        "Review the suggested labels and apply the accepted corrections.";
    rec.remediation_op_id = "correct_labels";
    result.recommendations.push_back(std::move(rec));
  }
  return result;
}

Dataset correct_labels(const Dataset& ds, const NoiseAnalysis& analysis,
                       const std::vector<std::pair<std::size_t, std::string>>& accept) {
  const std::size_t t = ds.target_index();
  std::vector<std::tuple<std::size_t, std::size_t, Cell>> edits;
  for (const auto& [row, label] : accept) {
    bool known = false;
    for (const auto& cand : analysis.candidates) {
      if (cand.row == row && cand.filtered_by == CandidateFilter::None) known = true;
    }
    if (!known) {
      throw Error("row " + std::to_string(row) + " is not in the candidate list");
    }
    edits.emplace_back(row, t, Cell(label));
  }
  return ds.with_cells_replaced(edits);
}

}  // namespace dqtk
