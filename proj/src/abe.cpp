#include "kabe/abe.hpp"

#include "kabe/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace kabe {

namespace {
// Independent seed streams for the two trees a selection builds.
constexpr std::uint64_t kFeatureTreeStream = 0xfea7ULL;
constexpr std::uint64_t kDistanceTreeStream = 0xd157ULL;
} // namespace

std::vector<Neighbor> rank_neighbors(const Project& x, std::span<const Project> train,
                                     const NormalizationModel& nm) {
    if (train.empty()) throw std::invalid_argument("rank_neighbors: empty training fold");

    const std::vector<double> xv = normalize(x, nm);
    std::vector<Neighbor> ranked(train.size());
    double max_distance = 0.0;
    for (std::size_t i = 0; i < train.size(); ++i) {
        const std::vector<double> tv = normalize(train[i], nm);
        ranked[i].index = i;
        ranked[i].distance = distance(xv, tv, nm.kinds);
        max_distance = std::max(max_distance, ranked[i].distance);
    }
    for (auto& nb : ranked) {
        nb.similarity = max_distance > 0.0 ? similarity(nb.distance / max_distance) : 1.0;
    }
    std::sort(ranked.begin(), ranked.end(), [](const Neighbor& a, const Neighbor& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        return a.index < b.index;
    });
    return ranked;
}

AnalogySet fixed_k_select(std::span<const Neighbor> ranked, std::size_t k) {
    if (k < 1 || k > ranked.size()) {
        throw std::invalid_argument("fixed_k_select: k outside [1, ranked size]");
    }
    AnalogySet out;
    out.source = AnalogySet::Source::FixedK;
    out.members.assign(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k));
    return out;
}

AnalogySet kabe_select(const Project& x, std::span<const Project> train,
                       const NormalizationModel& nm, const BkConfig& cfg,
                       KabeTrace* trace) {
    if (train.size() < 2) {
        throw std::invalid_argument("kabe_select: training fold smaller than 2");
    }

    const PointSpace space = make_feature_space(train, nm);
    BkConfig feature_cfg = cfg;
    feature_cfg.seed = derive_seed(cfg.seed, kFeatureTreeStream);
    const ClusterTree feature_tree = bisect(space, feature_cfg);

    const std::vector<Neighbor> ranked = rank_neighbors(x, train, nm);
    const std::size_t nearest = ranked.front().index;

    std::vector<double> dist_by_index(train.size(), 0.0);
    std::vector<double> sim_by_index(train.size(), 0.0);
    for (const auto& nb : ranked) {
        dist_by_index[nb.index] = nb.distance;
        sim_by_index[nb.index] = nb.similarity;
    }

    BkConfig distance_cfg = cfg;
    distance_cfg.seed = derive_seed(cfg.seed, kDistanceTreeStream);
    const ClusterTree distance_tree = bisect_scalar(dist_by_index, distance_cfg);

    const auto& feature_leaf = feature_tree.leaf_of(nearest).members;
    const auto& distance_leaf = distance_tree.leaf_of(nearest).members;

    std::vector<std::size_t> selected;
    std::set_intersection(feature_leaf.begin(), feature_leaf.end(),
                          distance_leaf.begin(), distance_leaf.end(),
                          std::back_inserter(selected));

    AnalogySet out;
    out.source = AnalogySet::Source::Kabe;
    out.members.reserve(selected.size());
    for (std::size_t i : selected) {
        out.members.push_back({i, dist_by_index[i], sim_by_index[i]});
    }
    std::sort(out.members.begin(), out.members.end(),
              [](const Neighbor& a, const Neighbor& b) {
                  if (a.distance != b.distance) return a.distance < b.distance;
                  return a.index < b.index;
              });

    if (trace) {
        trace->nearest = nearest;
        trace->feature_leaf = feature_leaf;
        trace->distance_leaf = distance_leaf;
    }
    return out;
}

double estimate_mean(const AnalogySet& analogies, std::span<const Project> train) {
    if (analogies.members.empty()) {
        throw std::invalid_argument("estimate_mean: empty analogy set");
    }
    double sum = 0.0;
    for (const auto& nb : analogies.members) sum += train[nb.index].effort;
    return sum / static_cast<double>(analogies.members.size());
}

std::map<std::size_t, std::size_t> analogy_size_histogram(
    std::span<const std::size_t> sizes) {
    if (sizes.empty()) throw std::invalid_argument("analogy_size_histogram: no records");
    std::map<std::size_t, std::size_t> hist;
    for (std::size_t s : sizes) ++hist[s];
    return hist;
}

} // namespace kabe
