#include "kabe/metrics.hpp"

#include "kabe/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kabe {

double mre(double actual, double predicted) {
    if (actual <= 0.0) throw std::invalid_argument("mre: actual effort must be positive");
    return std::fabs(actual - predicted) / actual;
}

double mmre(std::span<const double> mres) {
    return stats::mean(mres);
}

double mdmre(std::span<const double> mres) {
    return stats::median(mres);
}

double pred_at(std::span<const double> mres, double threshold) {
    if (mres.empty()) throw std::invalid_argument("pred_at: empty sample");
    std::size_t hits = 0;
    for (double v : mres) {
        if (v <= threshold) ++hits;
    }
    return 100.0 * static_cast<double>(hits) / static_cast<double>(mres.size());
}

BoxplotSummary boxplot_summary(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("boxplot_summary: empty sample");
    BoxplotSummary s;
    s.min = *std::min_element(values.begin(), values.end());
    s.max = *std::max_element(values.begin(), values.end());
    s.q1 = stats::quantile(values, 0.25);
    s.median = stats::quantile(values, 0.5);
    s.q3 = stats::quantile(values, 0.75);
    const double iqr = s.q3 - s.q1;
    const double lo = s.q1 - 1.5 * iqr;
    const double hi = s.q3 + 1.5 * iqr;
    for (double v : values) {
        if (v < lo || v > hi) s.outliers.push_back(v);
    }
    std::sort(s.outliers.begin(), s.outliers.end());
    return s;
}

} // namespace kabe
