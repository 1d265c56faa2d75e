#pragma once

#include "kabe/normalize.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace kabe {

struct BkConfig {
    std::uint64_t seed = 0;
    std::size_t restarts = 5;
    std::size_t min_leaf_size = 3;
    std::size_t max_kmedoid_iters = 100;
};

// Point set the clustering runs over. Pairwise distances are cached for
// spaces up to a few thousand points.
class PointSpace {
public:
    PointSpace(std::vector<std::vector<double>> points, std::vector<FeatureKind> kinds);

    std::size_t size() const { return points_.size(); }
    std::size_t dimensions() const { return kinds_.size(); }
    std::span<const double> point(std::size_t i) const { return points_[i]; }
    std::span<const FeatureKind> kinds() const { return kinds_; }

    double distance(std::size_t i, std::size_t j) const;
    // Plain squared Euclidean norm between points (categorical mismatch
    // contributes 1 per feature), used by the cluster variance.
    double squared_norm(std::size_t i, std::size_t j) const;

private:
    std::vector<std::vector<double>> points_;
    std::vector<FeatureKind> kinds_;
    std::vector<double> cache_;  // lower triangle; empty when uncached
};

PointSpace make_feature_space(std::span<const Project> train,
                              const NormalizationModel& nm);
PointSpace make_scalar_space(std::span<const double> values);

struct ClusterNode {
    std::vector<std::size_t> members;  // ascending point indices
    std::size_t medoid = 0;
    double variance = 0.0;
    int left = -1;
    int right = -1;

    bool is_leaf() const { return left < 0; }
};

class ClusterTree {
public:
    ClusterTree(std::vector<ClusterNode> nodes, std::uint64_t seed);

    const ClusterNode& root() const { return nodes_.front(); }
    const std::vector<ClusterNode>& nodes() const { return nodes_; }
    std::uint64_t seed() const { return seed_; }

    std::vector<const ClusterNode*> leaves() const;
    /// The unique leaf whose members contain the given point index.
    const ClusterNode& leaf_of(std::size_t index) const;

private:
    std::vector<ClusterNode> nodes_;
    std::vector<int> leaf_by_member_;
    std::uint64_t seed_ = 0;
};

/// Mean squared norm of the members around the center (a member index).
double cluster_variance(std::span<const std::size_t> members, std::size_t center,
                        const PointSpace& space);

/// Two-way k-medoids split: best of cfg.restarts seeded random
/// initializations by total within-cluster dissimilarity; assignment and
/// medoid ties break toward the lower point index. Children are never empty.
std::pair<ClusterNode, ClusterNode> kmedoids_split(std::span<const std::size_t> members,
                                                   const PointSpace& space,
                                                   const BkConfig& cfg);

/// Divisive clustering over the whole space: each candidate cluster is
/// 2-split and the split is kept only if the larger child variance is
/// strictly below the parent's and both children reach min_leaf_size.
ClusterTree bisect(const PointSpace& space, const BkConfig& cfg);

/// Same algorithm over one-dimensional points.
ClusterTree bisect_scalar(std::span<const double> values, const BkConfig& cfg);

} // namespace kabe
