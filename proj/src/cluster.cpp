#include "kabe/cluster.hpp"

#include "kabe/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace kabe {

namespace {
constexpr std::size_t kDistanceCacheLimit = 2048;
} // namespace

PointSpace::PointSpace(std::vector<std::vector<double>> points,
                       std::vector<FeatureKind> kinds)
    : points_(std::move(points)), kinds_(std::move(kinds)) {
    for (const auto& p : points_) {
        if (p.size() != kinds_.size()) {
            throw std::invalid_argument("PointSpace: point dimension mismatch");
        }
    }
    const std::size_t n = points_.size();
    if (n >= 2 && n <= kDistanceCacheLimit) {
        cache_.resize(n * (n - 1) / 2);
        for (std::size_t i = 1; i < n; ++i) {
            const std::size_t base = i * (i - 1) / 2;
            for (std::size_t j = 0; j < i; ++j) {
                cache_[base + j] = kabe::distance(points_[i], points_[j], kinds_);
            }
        }
    }
}

double PointSpace::distance(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    if (!cache_.empty()) {
        const auto [lo, hi] = std::minmax(i, j);
        return cache_[hi * (hi - 1) / 2 + lo];
    }
    return kabe::distance(points_[i], points_[j], kinds_);
}

double PointSpace::squared_norm(std::size_t i, std::size_t j) const {
    const double scaled = distance(i, j) * static_cast<double>(dimensions());
    return scaled * scaled;
}

PointSpace make_feature_space(std::span<const Project> train,
                              const NormalizationModel& nm) {
    std::vector<std::vector<double>> points;
    points.reserve(train.size());
    for (const auto& p : train) points.push_back(normalize(p, nm));
    return PointSpace(std::move(points), nm.kinds);
}

PointSpace make_scalar_space(std::span<const double> values) {
    std::vector<std::vector<double>> points;
    points.reserve(values.size());
    for (double v : values) points.push_back({v});
    return PointSpace(std::move(points), {FeatureKind::Numeric});
}

ClusterTree::ClusterTree(std::vector<ClusterNode> nodes, std::uint64_t seed)
    : nodes_(std::move(nodes)), seed_(seed) {
    if (nodes_.empty()) throw std::invalid_argument("ClusterTree: no nodes");
    std::size_t max_index = 0;
    for (std::size_t m : nodes_.front().members) max_index = std::max(max_index, m);
    leaf_by_member_.assign(max_index + 1, -1);
    for (std::size_t id = 0; id < nodes_.size(); ++id) {
        if (!nodes_[id].is_leaf()) continue;
        for (std::size_t m : nodes_[id].members) {
            leaf_by_member_[m] = static_cast<int>(id);
        }
    }
}

std::vector<const ClusterNode*> ClusterTree::leaves() const {
    std::vector<const ClusterNode*> out;
    for (const auto& node : nodes_) {
        if (node.is_leaf()) out.push_back(&node);
    }
    return out;
}

const ClusterNode& ClusterTree::leaf_of(std::size_t index) const {
    if (index >= leaf_by_member_.size() || leaf_by_member_[index] < 0) {
        throw std::invalid_argument("leaf_of: index " + std::to_string(index) +
                                    " was not clustered");
    }
    return nodes_[static_cast<std::size_t>(leaf_by_member_[index])];
}

double cluster_variance(std::span<const std::size_t> members, std::size_t center,
                        const PointSpace& space) {
    if (members.empty()) throw std::invalid_argument("cluster_variance: empty cluster");
    if (std::find(members.begin(), members.end(), center) == members.end()) {
        throw std::invalid_argument("cluster_variance: center is not a member");
    }
    double sum = 0.0;
    for (std::size_t m : members) sum += space.squared_norm(m, center);
    return sum / static_cast<double>(members.size());
}

namespace {

// Member minimizing the total dissimilarity to the cluster; ties break
// toward the lower point index.
std::size_t best_medoid(std::span<const std::size_t> members, const PointSpace& space) {
    std::size_t best = members.front();
    double best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t candidate : members) {
        double cost = 0.0;
        for (std::size_t m : members) cost += space.distance(candidate, m);
        if (cost < best_cost || (cost == best_cost && candidate < best)) {
            best_cost = cost;
            best = candidate;
        }
    }
    return best;
}

struct SplitState {
    std::size_t medoid_a = 0;
    std::size_t medoid_b = 0;
    std::vector<std::size_t> cluster_a;
    std::vector<std::size_t> cluster_b;
    double total = std::numeric_limits<double>::infinity();
};

void assign_members(std::span<const std::size_t> members, const PointSpace& space,
                    SplitState& s) {
    s.cluster_a.clear();
    s.cluster_b.clear();
    // equidistant points go to the medoid with the lower index
    const std::size_t lo = std::min(s.medoid_a, s.medoid_b);
    const std::size_t hi = std::max(s.medoid_a, s.medoid_b);
    s.medoid_a = lo;
    s.medoid_b = hi;
    for (std::size_t m : members) {
        const double da = space.distance(m, lo);
        const double db = space.distance(m, hi);
        if (da <= db) {
            s.cluster_a.push_back(m);
        } else {
            s.cluster_b.push_back(m);
        }
    }
    if (s.cluster_b.empty()) {
        // pull the farthest non-medoid point out to keep two clusters
        std::size_t move = lo;
        double far = -1.0;
        for (std::size_t m : s.cluster_a) {
            if (m == lo) continue;
            const double d = space.distance(m, lo);
            if (d > far || (d == far && m < move)) {
                far = d;
                move = m;
            }
        }
        s.cluster_a.erase(std::find(s.cluster_a.begin(), s.cluster_a.end(), move));
        s.cluster_b.push_back(move);
        s.medoid_b = move;
    } else if (s.cluster_a.empty()) {
        std::size_t move = hi;
        double far = -1.0;
        for (std::size_t m : s.cluster_b) {
            if (m == hi) continue;
            const double d = space.distance(m, hi);
            if (d > far || (d == far && m < move)) {
                far = d;
                move = m;
            }
        }
        s.cluster_b.erase(std::find(s.cluster_b.begin(), s.cluster_b.end(), move));
        s.cluster_a.push_back(move);
        s.medoid_a = move;
    }
}

double assignment_cost(const SplitState& s, const PointSpace& space) {
    double total = 0.0;
    for (std::size_t m : s.cluster_a) total += space.distance(m, s.medoid_a);
    for (std::size_t m : s.cluster_b) total += space.distance(m, s.medoid_b);
    return total;
}

} // namespace

std::pair<ClusterNode, ClusterNode> kmedoids_split(std::span<const std::size_t> members,
                                                   const PointSpace& space,
                                                   const BkConfig& cfg) {
    if (members.size() < 2) {
        throw std::invalid_argument("kmedoids_split: need at least 2 members");
    }
    if (cfg.restarts < 1) throw std::invalid_argument("kmedoids_split: restarts < 1");

    SplitState best;
    for (std::size_t r = 0; r < cfg.restarts; ++r) {
        std::mt19937_64 rng(derive_seed(cfg.seed, r));
        std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
        const std::size_t first = pick(rng);
        std::size_t second = pick(rng);
        while (second == first) second = pick(rng);

        SplitState s;
        s.medoid_a = members[first];
        s.medoid_b = members[second];
        for (std::size_t iter = 0; iter < cfg.max_kmedoid_iters; ++iter) {
            assign_members(members, space, s);
            const std::size_t ma = best_medoid(s.cluster_a, space);
            const std::size_t mb = best_medoid(s.cluster_b, space);
            if (ma == s.medoid_a && mb == s.medoid_b) break;
            s.medoid_a = ma;
            s.medoid_b = mb;
        }
        assign_members(members, space, s);
        s.total = assignment_cost(s, space);
        if (s.total < best.total) best = std::move(s);
    }

    ClusterNode a, b;
    a.members = best.cluster_a;
    b.members = best.cluster_b;
    std::sort(a.members.begin(), a.members.end());
    std::sort(b.members.begin(), b.members.end());
    a.medoid = best.medoid_a;
    b.medoid = best.medoid_b;
    a.variance = cluster_variance(a.members, a.medoid, space);
    b.variance = cluster_variance(b.members, b.medoid, space);
    if (b.members.front() < a.members.front()) std::swap(a, b);
    return {std::move(a), std::move(b)};
}

ClusterTree bisect(const PointSpace& space, const BkConfig& cfg) {
    if (space.size() == 0) throw std::invalid_argument("bisect: empty space");

    std::vector<ClusterNode> nodes;
    ClusterNode root;
    root.members.resize(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) root.members[i] = i;
    root.medoid = best_medoid(root.members, space);
    root.variance = cluster_variance(root.members, root.medoid, space);
    nodes.push_back(std::move(root));

    std::vector<std::size_t> level{0};
    while (!level.empty()) {
        std::vector<std::size_t> next_level;
        for (std::size_t id : level) {
            const std::size_t size = nodes[id].members.size();
            if (size < 2 || size < 2 * cfg.min_leaf_size) continue;

            BkConfig sub = cfg;
            sub.seed = derive_seed(cfg.seed, id + 1);
            auto [a, b] = kmedoids_split(nodes[id].members, space, sub);

            const bool tighter = std::max(a.variance, b.variance) < nodes[id].variance;
            const bool big_enough = a.members.size() >= cfg.min_leaf_size &&
                                    b.members.size() >= cfg.min_leaf_size;
            if (!tighter || !big_enough) continue;

            const int left = static_cast<int>(nodes.size());
            nodes[id].left = left;
            nodes[id].right = left + 1;
            nodes.push_back(std::move(a));
            nodes.push_back(std::move(b));
            next_level.push_back(static_cast<std::size_t>(left));
            next_level.push_back(static_cast<std::size_t>(left) + 1);
        }
        level = std::move(next_level);
    }
    return ClusterTree(std::move(nodes), cfg.seed);
}

ClusterTree bisect_scalar(std::span<const double> values, const BkConfig& cfg) {
    if (values.empty()) throw std::invalid_argument("bisect_scalar: no values");
    return bisect(make_scalar_space(values), cfg);
}

} // namespace kabe
