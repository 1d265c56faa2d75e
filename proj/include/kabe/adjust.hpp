#pragma once

#include "kabe/abe.hpp"

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace kabe {

// Strategy used to pick analogies both at prediction time and when building
// training pairs for the learned adjustments. The seed keys any clustering
// the strategy performs.
using AnalogySelector =
    std::function<AnalogySet(const Project& x, std::span<const Project> train,
                             const NormalizationModel& nm, std::uint64_t seed)>;

AnalogySelector make_fixed_k_selector(std::size_t k);
AnalogySelector make_kabe_selector(const BkConfig& cfg);

struct GaConfig {
    std::uint64_t seed = 0;
    std::size_t population = 50;
    std::size_t generations = 100;
    double crossover_rate = 0.9;
    double mutation_rate = 0.1;
    // One (lo, hi) interval per masked feature; empty derives symmetric
    // bounds from the training effort range.
    std::vector<std::pair<double, double>> coefficient_bounds;
};

struct NnConfig {
    std::uint64_t seed = 0;
    std::size_t hidden_units = 0;  // 0 -> max(4, masked feature count)
    double learning_rate = 0.01;
    double mse_threshold = 0.01;
    std::size_t max_epochs = 5000;
};

struct GaModel {
    std::vector<double> coefficients;                 // one per masked feature
    std::vector<std::pair<double, double>> bounds;
    std::vector<double> best_fitness_by_generation;   // non-increasing
    double training_mmre = 0.0;
};

// Single hidden layer, sigmoid units, linear output. Inputs are normalized
// feature differences; the output is an effort correction scaled by
// effort_scale.
struct NnModel {
    std::size_t inputs = 0;
    std::size_t hidden = 0;
    std::vector<double> w1;  // hidden x inputs, row-major
    std::vector<double> b1;
    std::vector<double> w2;
    double b2 = 0.0;
    double effort_scale = 1.0;
    double training_mse = 0.0;
    std::size_t epochs_run = 0;

    double forward(std::span<const double> diff) const;
};

struct SimilarityEstimate {
    double value = 0.0;
    bool mean_fallback = false;  // every similarity degree was zero
};

/// Similarity-weighted effort: sum(SM_i * e_i) / sum(SM_i). Falls back to the
/// plain mean (flagged) when every weight is zero.
SimilarityEstimate adjust_similarity(const AnalogySet& analogies,
                                     std::span<const Project> train);

/// Tunes one linear correction coefficient per masked feature by minimizing
/// the leave-one-out MMRE inside the training fold (tournament selection,
/// uniform crossover, Gaussian mutation, one elite survivor).
GaModel train_ga(std::span<const FeatureKind> predictor_kinds,
                 std::span<const Project> train, const FeatureMask& mask,
                 const GaConfig& cfg, const AnalogySelector& selector);

/// Mean of (analog effort + linear feature-difference correction), clamped to
/// the smallest training effort so estimates stay positive.
double adjust_ga(const Project& x, const AnalogySet& analogies,
                 std::span<const Project> train, const NormalizationModel& nm,
                 const GaModel& model);

/// Trains the residual network on (feature difference -> effort difference)
/// pairs built from each training project and its own selected analogies;
/// backpropagation stops when the epoch MSE drops below cfg.mse_threshold.
NnModel train_nn(std::span<const FeatureKind> predictor_kinds,
                 std::span<const Project> train, const FeatureMask& mask,
                 const NnConfig& cfg, const AnalogySelector& selector);

/// Mean of (analog effort + network correction), clamped like adjust_ga.
double adjust_nn(const Project& x, const AnalogySet& analogies,
                 std::span<const Project> train, const NormalizationModel& nm,
                 const NnModel& model);

} // namespace kabe
