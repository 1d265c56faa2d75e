#pragma once

#include "kabe/cluster.hpp"

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace kabe {

struct Neighbor {
    std::size_t index = 0;     // position within the training fold
    double distance = 0.0;
    double similarity = 0.0;   // 1 - distance / (max distance for this query)
};

struct AnalogySet {
    enum class Source { FixedK, Kabe };
    std::vector<Neighbor> members;  // ascending distance, ties by lower index
    Source source = Source::FixedK;
};

// Selection internals surfaced for auditing and reporting.
struct KabeTrace {
    std::size_t nearest = 0;
    std::vector<std::size_t> feature_leaf;
    std::vector<std::size_t> distance_leaf;
};

/// Every training project ranked by ascending distance to x, ties broken by
/// the lower fold index. Similarities are normalized per query by the
/// largest distance, so the farthest project scores 0.
std::vector<Neighbor> rank_neighbors(const Project& x, std::span<const Project> train,
                                     const NormalizationModel& nm);

AnalogySet fixed_k_select(std::span<const Neighbor> ranked, std::size_t k);

/// Dynamic analogy discovery: the feature-space cluster tree places the
/// nearest neighbor in a leaf, the tree over the distance values places it in
/// a second leaf, and the analogy set is the intersection of the two. The
/// nearest neighbor belongs to both leaves, so the set is never empty.
AnalogySet kabe_select(const Project& x, std::span<const Project> train,
                       const NormalizationModel& nm, const BkConfig& cfg,
                       KabeTrace* trace = nullptr);

/// Plain average of the analog efforts.
double estimate_mean(const AnalogySet& analogies, std::span<const Project> train);

std::map<std::size_t, std::size_t> analogy_size_histogram(
    std::span<const std::size_t> sizes);

} // namespace kabe
