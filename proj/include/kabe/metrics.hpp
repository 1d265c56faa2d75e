#pragma once

#include <span>
#include <vector>

namespace kabe {

/// Magnitude of relative error: |actual - predicted| / actual.
/// @throws std::invalid_argument when actual is not strictly positive.
double mre(double actual, double predicted);

/// Mean of the MRE values.
double mmre(std::span<const double> mres);

/// Median of the MRE values (even-length samples average the midpoints).
double mdmre(std::span<const double> mres);

/// Percentage (0..100) of MRE values at or below the threshold.
double pred_at(std::span<const double> mres, double threshold = 0.25);

struct BoxplotSummary {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
    std::vector<double> outliers;  // beyond 1.5 * IQR from the quartiles
};

BoxplotSummary boxplot_summary(std::span<const double> values);

} // namespace kabe
