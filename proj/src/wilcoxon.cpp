#include "kabe/wilcoxon.hpp"

#include "kabe/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace kabe {

namespace {

constexpr std::size_t kExactLimit = 12;  // pooled size handled by enumeration

// Midranks of the pooled sample in its original order.
std::vector<double> midranks(std::span<const double> pooled) {
    const std::size_t n = pooled.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });

    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
        const double shared = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
        i = j + 1;
    }
    return ranks;
}

void check_sizes(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 3 || b.size() < 3) {
        throw std::invalid_argument("wilcoxon_rank_sum: each sample needs >= 3 values");
    }
}

// Enumerates rank sums over every way of labelling n1 of the pooled
// observations as the first sample.
void enumerate_sums(const std::vector<double>& ranks, std::size_t next,
                    std::size_t remaining, double sum, double observed,
                    std::size_t& le, std::size_t& ge, std::size_t& total) {
    if (remaining == 0) {
        ++total;
        if (sum <= observed + 1e-12) ++le;
        if (sum >= observed - 1e-12) ++ge;
        return;
    }
    if (ranks.size() - next < remaining) return;
    enumerate_sums(ranks, next + 1, remaining - 1, sum + ranks[next], observed, le, ge, total);
    enumerate_sums(ranks, next + 1, remaining, sum, observed, le, ge, total);
}

} // namespace

double wilcoxon_exact_p(std::span<const double> a, std::span<const double> b) {
    check_sizes(a, b);
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::vector<double> ranks = midranks(pooled);

    double observed = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) observed += ranks[i];

    std::size_t le = 0, ge = 0, total = 0;
    enumerate_sums(ranks, 0, a.size(), 0.0, observed, le, ge, total);

    const double p_lo = static_cast<double>(le) / static_cast<double>(total);
    const double p_hi = static_cast<double>(ge) / static_cast<double>(total);
    return std::min(1.0, 2.0 * std::min(p_lo, p_hi));
}

double wilcoxon_normal_p(std::span<const double> a, std::span<const double> b) {
    check_sizes(a, b);
    const double n1 = static_cast<double>(a.size());
    const double n2 = static_cast<double>(b.size());
    const double n = n1 + n2;

    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::vector<double> ranks = midranks(pooled);

    double rank_sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) rank_sum += ranks[i];
    const double u = rank_sum - n1 * (n1 + 1.0) / 2.0;
    const double mu = n1 * n2 / 2.0;

    // tie correction over the pooled value multiplicities
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    double tie_term = 0.0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i + 1);
        tie_term += t * t * t - t;
        i = j + 1;
    }
    const double sigma2 = n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if (sigma2 <= 0.0) return 1.0;

    const double shift = u - mu;
    const double corrected = shift > 0.0 ? shift - 0.5 : (shift < 0.0 ? shift + 0.5 : 0.0);
    const double z = corrected / std::sqrt(sigma2);
    return std::min(1.0, 2.0 * (1.0 - stats::normal_cdf(std::fabs(z))));
}

WilcoxonResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b,
                                 double confidence) {
    check_sizes(a, b);
    WilcoxonResult out;
    out.exact = a.size() + b.size() <= kExactLimit;
    out.p_value = out.exact ? wilcoxon_exact_p(a, b) : wilcoxon_normal_p(a, b);
    out.significant = out.p_value < 1.0 - confidence / 100.0;
    return out;
}

} // namespace kabe
