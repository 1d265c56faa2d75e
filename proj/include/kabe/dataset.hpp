#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace kabe {

enum class FeatureKind { Numeric, Categorical };

using CategoryCode = std::int32_t;

// A predictor cell: numeric value, or code into the column's level table.
using FeatureValue = std::variant<double, CategoryCode>;

struct FeatureSchema {
    std::string name;
    FeatureKind kind = FeatureKind::Numeric;
    std::size_t index = 0;              // dense position in the dataset schema
    std::vector<std::string> levels;    // categorical level names, code = position
};

struct Project {
    std::string id;
    std::vector<FeatureValue> features; // predictors only, effort excluded
    double effort = 0.0;
};

struct Dataset {
    std::string name;
    std::vector<FeatureSchema> schema;  // every column, effort included
    std::size_t effort_column = 0;      // index into schema
    std::string effort_unit = "hours";
    std::vector<Project> projects;

    std::size_t predictor_count() const {
        return schema.empty() ? 0 : schema.size() - 1;
    }
    // Schema entry for the feature-th predictor (skips the effort column).
    const FeatureSchema& predictor_schema(std::size_t feature) const;
    std::vector<FeatureKind> predictor_kinds() const;
};

// Ordered subset of predictor feature indices used by an estimator.
using FeatureMask = std::vector<std::size_t>;

FeatureMask full_mask(const Dataset& d);
void validate_mask(const FeatureMask& mask, std::size_t predictor_count);

struct LoadReport {
    std::size_t rows_loaded = 0;
    std::size_t rows_dropped = 0;
};

struct LoadOptions {
    std::string effort_unit = "hours";
    // Kind overrides; empty means "<path>.schema.json" when that file exists.
    std::filesystem::path schema_sidecar;
};

/// Loads a comma-separated file with a header row. Column kinds are inferred
/// (every non-missing cell parses as a number -> numeric, otherwise
/// categorical) unless the sidecar schema overrides them. Rows with a missing
/// value in any column are dropped and counted in the report.
Dataset load_dataset(const std::filesystem::path& path,
                     const std::string& effort_column,
                     const LoadOptions& options = {},
                     LoadReport* report = nullptr);

struct DatasetStats {
    std::size_t size = 0;
    std::size_t feature_count = 0;      // columns including effort
    double effort_min = 0.0;
    double effort_max = 0.0;
    double effort_mean = 0.0;
    double effort_median = 0.0;
    double effort_skewness = 0.0;
};

DatasetStats describe(const Dataset& d);

enum class SyntheticModel { Linear, TwoBlob, Noise };

/// Deterministic synthetic dataset for tests and demos.
/// Linear: effort = 10 * sum(features). TwoBlob: two well-separated feature
/// clusters with distinct effort regimes. Noise: effort independent of
/// features.
Dataset generate_synthetic(std::uint64_t seed, std::size_t n, std::size_t m,
                           SyntheticModel model);

} // namespace kabe
