#pragma once

#include <span>

namespace kabe {

struct WilcoxonResult {
    double p_value = 1.0;
    bool significant = false;
    bool exact = false;  // permutation distribution vs normal approximation
};

/// Two-sided rank-sum (Mann-Whitney) test with midrank ties. The exact
/// permutation distribution is enumerated when the pooled sample has at most
/// 12 observations; larger samples use the normal approximation with tie and
/// continuity corrections. Significance is p < 1 - confidence/100.
WilcoxonResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b,
                                 double confidence = 95.0);

// Both branches exposed so the approximation can be checked against the
// exact distribution on sizes where they overlap.
double wilcoxon_exact_p(std::span<const double> a, std::span<const double> b);
double wilcoxon_normal_p(std::span<const double> a, std::span<const double> b);

} // namespace kabe
