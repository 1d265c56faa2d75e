#include "kabe/normalize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kabe {

namespace {

double numeric_cell(const FeatureValue& v) {
    if (const double* num = std::get_if<double>(&v)) return *num;
    return static_cast<double>(std::get<CategoryCode>(v));
}

} // namespace

NormalizationModel fit_normalizer(std::span<const FeatureKind> predictor_kinds,
                                  std::span<const Project> train,
                                  const FeatureMask& mask) {
    if (train.empty()) throw std::invalid_argument("fit_normalizer: empty training fold");
    validate_mask(mask, predictor_kinds.size());

    NormalizationModel nm;
    nm.mask = mask;
    nm.kinds.reserve(mask.size());
    nm.ranges.resize(mask.size());
    for (std::size_t j = 0; j < mask.size(); ++j) {
        const std::size_t f = mask[j];
        nm.kinds.push_back(predictor_kinds[f]);
        if (predictor_kinds[f] != FeatureKind::Numeric) continue;
        double lo = numeric_cell(train.front().features.at(f));
        double hi = lo;
        for (const auto& p : train) {
            const double v = numeric_cell(p.features.at(f));
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        nm.ranges[j] = {lo, hi};
    }
    return nm;
}

std::vector<double> normalize(const Project& p, const NormalizationModel& nm) {
    std::vector<double> out(nm.mask.size());
    for (std::size_t j = 0; j < nm.mask.size(); ++j) {
        const FeatureValue& cell = p.features.at(nm.mask[j]);
        if (nm.kinds[j] == FeatureKind::Categorical) {
            out[j] = numeric_cell(cell);
            continue;
        }
        const auto& r = nm.ranges[j];
        const double width = r.max - r.min;
        if (width <= 0.0) {
            out[j] = 0.0;  // constant feature carries no information
            continue;
        }
        out[j] = std::clamp((numeric_cell(cell) - r.min) / width, 0.0, 1.0);
    }
    return out;
}

double feature_delta(double a, double b, FeatureKind kind) {
    if (kind == FeatureKind::Categorical) return a == b ? 0.0 : 1.0;
    return a - b;
}

double distance(std::span<const double> a, std::span<const double> b,
                std::span<const FeatureKind> kinds) {
    if (a.size() != b.size() || a.size() != kinds.size() || a.empty()) {
        throw std::invalid_argument("distance: vector length mismatch");
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = feature_delta(a[j], b[j], kinds[j]);
        sum += d * d;
    }
    return std::sqrt(sum) / static_cast<double>(a.size());
}

double similarity(double normalized_distance) {
    return 1.0 - normalized_distance;
}

} // namespace kabe
