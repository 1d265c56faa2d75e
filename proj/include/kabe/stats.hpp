#pragma once

#include <span>
#include <vector>

namespace kabe::stats {

/// Arithmetic mean. Throws std::invalid_argument on an empty sample.
double mean(std::span<const double> data);

/// Quantile with linear interpolation between order statistics
/// (the convention where q(0.5) of an even sample is the midpoint average).
double quantile(std::span<const double> data, double p);

double median(std::span<const double> data);

/// Adjusted Fisher-Pearson skewness coefficient (G1).
/// Samples with fewer than 3 points or zero variance return 0.
double skewness(std::span<const double> data);

/// Standard normal CDF.
double normal_cdf(double z);

/// Regularized incomplete beta function I_x(a, b).
double incomplete_beta(double a, double b, double x);

/// Upper-tail probability of an F(df1, df2) variate exceeding f.
double f_survival(double f, double df1, double df2);

} // namespace kabe::stats
