#pragma once

#include "kabe/dataset.hpp"

#include <span>

namespace kabe {

// Per-feature ranges observed on a training fold. Numeric features map to
// [0,1] with out-of-range test values clamped; constant features map to 0.
// Categorical features pass through as level codes.
struct NormalizationModel {
    struct Range {
        double min = 0.0;
        double max = 0.0;
    };
    FeatureMask mask;
    std::vector<FeatureKind> kinds;  // aligned with mask
    std::vector<Range> ranges;       // aligned with mask

    std::size_t dimensions() const { return mask.size(); }
};

NormalizationModel fit_normalizer(std::span<const FeatureKind> predictor_kinds,
                                  std::span<const Project> train,
                                  const FeatureMask& mask);

std::vector<double> normalize(const Project& p, const NormalizationModel& nm);

/// Per-feature delta used by the distance and the adjustment corrections:
/// numeric cells subtract, categorical cells compare 0/1.
double feature_delta(double a, double b, FeatureKind kind);

/// Scaled Euclidean distance between equal-length normalized vectors:
/// (1/m) * sqrt(sum of squared deltas), the scale factor outside the root.
double distance(std::span<const double> a, std::span<const double> b,
                std::span<const FeatureKind> kinds);

/// Similarity degree of a query-normalized distance: SM = 1 - d.
double similarity(double normalized_distance);

} // namespace kabe
