#include "dqtk/class_overlap.hpp"

#include <algorithm>
#include <numeric>

namespace dqtk {

std::string to_string(AgreementTag tag) {
  switch (tag) {
    case AgreementTag::FullAgreement: return "FA";
    case AgreementTag::PartialDisagreement: return "PD";
    case AgreementTag::FullDisagreement: return "FD";
  }
  return "FA";
}

namespace {

std::vector<DisagreementTag> tag_rows(const Dataset& ds,
                                      const std::vector<std::vector<Neighbor>>& neighbors,
                                      const OverlapConfig& cfg) {
  const std::size_t t = ds.target_index();
  std::vector<DisagreementTag> tags(ds.n_rows());
  for (std::size_t r = 0; r < ds.n_rows(); ++r) {
    const Cell& own = ds.cell(r, t);
    std::size_t differing = 0;
    for (const auto& nb : neighbors[r]) {
      const Cell& other = ds.cell(nb.row, t);
      if (own != other) ++differing;
    }
    DisagreementTag tag;
    tag.row = r;
    tag.disagreement = neighbors[r].empty()
                           ? 0.0
                           : static_cast<double>(differing) /
                                 static_cast<double>(neighbors[r].size());
    if (tag.disagreement >= cfg.theta_high) {
      tag.tag = AgreementTag::FullDisagreement;
    } else if (tag.disagreement >= cfg.theta_low) {
      tag.tag = AgreementTag::PartialDisagreement;
    } else {
      tag.tag = AgreementTag::FullAgreement;
    }
    tags[r] = tag;
  }
  return tags;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<DisagreementTag> tag_disagreement(const Dataset& ds, std::size_t k,
                                              const OverlapConfig& cfg) {
  if (ds.n_rows() <= k) {
    throw Error("class_overlap: need n > k (n=" + std::to_string(ds.n_rows()) +
                ", k=" + std::to_string(k) + ")");
  }
  const auto neighbors = knn(ds, NeighborQuery{k, true});
  return tag_rows(ds, neighbors, cfg);
}

std::vector<OverlapRegion> propagate_regions(
    const Dataset& ds, const std::vector<DisagreementTag>& tags,
    const std::vector<std::vector<Neighbor>>& neighbors) {
  const std::size_t n = tags.size();
  std::vector<bool> pd(n, false);
  for (const auto& tag : tags) {
    pd[tag.row] = tag.tag == AgreementTag::PartialDisagreement;
  }
  UnionFind uf(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!pd[r]) continue;
    for (const auto& nb : neighbors[r]) {
      // Either endpoint in the other's neighborhood connects the pair.
      if (pd[nb.row]) uf.unite(r, nb.row);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> components;
  for (std::size_t r = 0; r < n; ++r) {
    if (pd[r]) components[uf.find(r)].push_back(r);
  }

  const std::size_t t = ds.target_index();
  const auto features = ds.feature_indices();
  std::vector<OverlapRegion> regions;
  for (auto& [_, members] : components) {
    if (members.size() < 2) continue;
    std::set<std::string> classes;
    for (std::size_t r : members) {
      const Cell& label = ds.cell(r, t);
      classes.insert(label ? *label : std::string("(missing)"));
    }
    if (classes.size() < 2) continue;  // a region must mix classes
    OverlapRegion region;
    region.id = regions.size();
    std::sort(members.begin(), members.end());
    region.members = members;
    region.classes_present = std::move(classes);
    for (std::size_t c : features) {
      const auto& col = ds.column(c);
      if (col.kind == ColumnKind::Numeric) {
        bool any = false;
        double lo = 0.0, hi = 0.0;
        for (std::size_t r : region.members) {
          if (ds.is_missing(r, c)) continue;
          const double v = ds.numeric(r, c);
          if (!any) {
            lo = hi = v;
            any = true;
          } else {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
          }
        }
        if (any) region.numeric_ranges[col.name] = {lo, hi};
      } else {
        std::set<std::string> values;
        for (std::size_t r : region.members) {
          if (!ds.is_missing(r, c)) values.insert(*ds.cell(r, c));
        }
        if (!values.empty()) region.value_sets[col.name] = std::move(values);
      }
    }
    regions.push_back(std::move(region));
  }
  return regions;
}

bool OverlapAnalysis::in_region(std::size_t row) const {
  for (const auto& region : regions) {
    if (std::binary_search(region.members.begin(), region.members.end(), row)) return true;
  }
  return false;
}

OverlapAnalysis analyze_overlap(const Dataset& ds, const OverlapConfig& cfg) {
  OverlapAnalysis analysis;
  const auto counts = ds.class_counts();
  if (counts.size() < 2) {
    // Overlap is definitionally absent with one class; tag everything FA.
    analysis.note = "overlap undefined for one class";
    analysis.tags.resize(ds.n_rows());
    for (std::size_t r = 0; r < ds.n_rows(); ++r) analysis.tags[r].row = r;
    analysis.neighbors.resize(ds.n_rows());
    return analysis;
  }
  if (ds.n_rows() <= cfg.k) {
    throw Error("class_overlap: need n > k (n=" + std::to_string(ds.n_rows()) +
                ", k=" + std::to_string(cfg.k) + ")");
  }
  analysis.neighbors = knn(ds, NeighborQuery{cfg.k, true});
  analysis.tags = tag_rows(ds, analysis.neighbors, cfg);
  analysis.regions = propagate_regions(ds, analysis.tags, analysis.neighbors);

  std::vector<bool> in_region(ds.n_rows(), false);
  for (const auto& region : analysis.regions) {
    for (std::size_t r : region.members) in_region[r] = true;
  }
  for (const auto& tag : analysis.tags) {
    if (tag.tag == AgreementTag::FullDisagreement) {
      analysis.fd_rows.push_back(tag.row);
    } else if (tag.tag == AgreementTag::PartialDisagreement && !in_region[tag.row]) {
      analysis.isolated_pd_rows.push_back(tag.row);
    }
  }
  return analysis;
}

QualityResult assess_overlap(const Dataset& ds, const OverlapAnalysis& analysis) {
  QualityResult result;
  result.metric_id = MetricId::ClassOverlap;
  result.dataset_fingerprint = ds.fingerprint();

  const std::size_t t = ds.target_index();
  Json regions = Json::array();
  std::map<std::string, std::size_t> per_class;
  std::size_t overlap_rows = 0;
  for (const auto& region : analysis.regions) {
    overlap_rows += region.members.size();
    Json ranges = Json::object();
    for (const auto& [name, range] : region.numeric_ranges) {
      ranges[name] = Json{{"min", range.first}, {"max", range.second}};
    }
    for (const auto& [name, values] : region.value_sets) {
      ranges[name] = Json{{"values", values}};
    }
    for (std::size_t r : region.members) {
      const Cell& label = ds.cell(r, t);
      ++per_class[label ? *label : "(missing)"];
    }
    regions.push_back(Json{{"id", region.id},
                           {"member_rows", region.members},
                           {"classes", region.classes_present},
                           {"feature_ranges", ranges}});
  }
  result.details["regions"] = regions;
  result.details["fd_rows"] = analysis.fd_rows;
  result.details["isolated_pd_rows"] = analysis.isolated_pd_rows;
  result.details["per_class_overlap_counts"] = per_class;
  if (analysis.note) result.details["note"] = *analysis.note;

  result.score = ds.n_rows() == 0
                     ? 1.0
                     : 1.0 - static_cast<double>(overlap_rows) /
                               static_cast<double>(ds.n_rows());
  if (analysis.note) {
    result.explanation = "Only one class present; " + *analysis.note + ".";
  } else if (analysis.regions.empty()) {
    result.explanation = "No connected overlap regions between classes.";
  } else {
    result.explanation = std::to_string(analysis.regions.size()) +
                         " overlap region(s) cover " + std::to_string(overlap_rows) +
                         " row(s); the listed feature ranges drive the overlap.";
    Recommendation advisory;
    advisory.action_text =
        "Transform or engineer features over the reported ranges to separate "
        "the classes (manual step).";
    advisory.remediation_op_id = "";  // advisory only
    result.recommendations.push_back(std::move(advisory));
    Recommendation cross_ref;
    cross_ref.action_text =
        "Run the label purity metric: overlap regions often hide mislabeled rows.";
    cross_ref.remediation_op_id = "correct_labels";
    result.recommendations.push_back(std::move(cross_ref));
  }
  return result;
}

QualityResult assess_overlap(const Dataset& ds, const OverlapConfig& cfg) {
  return assess_overlap(ds, analyze_overlap(ds, cfg));
}

}  // namespace dqtk
