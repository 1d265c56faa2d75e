#pragma once

#include "kabe/dataset.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace kabe {

// One design-matrix column of a fitted linear model.
struct RegressorTerm {
    std::size_t feature = 0;       // predictor index
    bool is_dummy = false;
    CategoryCode level = -1;       // dummy indicator level
    bool log_applied = false;      // numeric log transform
    double train_min = 0.0;        // smallest training value of a logged feature
    std::string label;
    double coefficient = 0.0;
};

struct LinearModel {
    double intercept = 0.0;
    std::vector<RegressorTerm> terms;
    bool log_target = false;
    double r_squared = 0.0;        // on the fitted (possibly log) scale
    double clamp_floor = 0.0;      // smallest training effort
    std::string effort_name = "Effort";
};

struct OlsOptions {
    // When set, the target and any strictly positive numeric feature whose
    // sample skewness exceeds skew_threshold are log transformed.
    bool auto_transform = true;
    double skew_threshold = 1.0;
};

/// Least-squares fit over the masked features with categorical one-hot
/// coding (one level dropped per feature).
/// @throws std::runtime_error naming the collinear columns when the design
///         matrix is singular.
LinearModel fit_ols(const Dataset& ds, std::span<const Project> train,
                    const FeatureMask& mask, const OlsOptions& options = {});

/// Forward stepwise selection: repeatedly adds the regressor with the
/// smallest partial-F p-value while one stays below alpha.
LinearModel fit_stepwise(const Dataset& ds, std::span<const Project> train,
                         const FeatureMask& mask, const OlsOptions& options = {},
                         double alpha = 0.05);

struct CartNode {
    bool leaf = true;
    double prediction = 0.0;
    std::size_t feature = 0;
    bool numeric_split = true;
    double threshold = 0.0;                 // numeric: value <= threshold goes left
    std::vector<CategoryCode> left_levels;  // categorical: these codes go left
    bool majority_left = true;              // route for unseen levels
    int left = -1;
    int right = -1;
};

struct TreeModel {
    std::vector<CartNode> nodes;  // nodes[0] is the root
    std::size_t min_leaf = 5;
    double clamp_floor = 0.0;
};

struct CartOptions {
    std::size_t min_leaf = 5;
};

/// Greedy binary regression tree maximizing variance reduction. Numeric
/// splits at midpoints of sorted unique values; categorical splits over level
/// subsets (exhaustive up to 10 levels, one-vs-rest beyond).
TreeModel fit_cart(const Dataset& ds, std::span<const Project> train,
                   const FeatureMask& mask, const CartOptions& options = {});

/// Applies the model; log-fitted targets are exponentiated back and the
/// result never drops below the smallest training effort. Unseen categorical
/// levels take the dropped-level baseline (linear) or the majority branch
/// (tree).
double predict(const LinearModel& model, const Project& x);
double predict(const TreeModel& model, const Project& x);

/// One-line display form, e.g. "Ln(Effort) = 4.4 + 0.97*Ln(AdjFP) - 1.34*DevEnv=L2".
std::string to_string(const LinearModel& model);

} // namespace kabe
