#include "kabe/dataset.hpp"

#include "kabe/rng.hpp"
#include "kabe/stats.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace kabe {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool is_missing(const std::string& cell) {
    const std::string t = to_lower(trim(cell));
    return t.empty() || t == "?" || t == "na";
}

bool parse_number(const std::string& cell, double& out) {
    const std::string t = trim(cell);
    if (t.empty()) return false;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size();
}

// Splits one CSV record; supports quoted fields with doubled quotes.
std::vector<std::string> split_record(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cell.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(cell);
            cell.clear();
        } else if (c != '\r') {
            cell.push_back(c);
        }
    }
    cells.push_back(cell);
    return cells;
}

std::map<std::string, FeatureKind> read_sidecar(const std::filesystem::path& path) {
    std::map<std::string, FeatureKind> overrides;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open schema sidecar: " + path.string());
    nlohmann::json j;
    in >> j;
    for (const auto& [column, kind] : j.items()) {
        const std::string k = kind.get<std::string>();
        if (k == "numeric") {
            overrides[column] = FeatureKind::Numeric;
        } else if (k == "categorical") {
            overrides[column] = FeatureKind::Categorical;
        } else {
            throw std::runtime_error("schema sidecar: unknown kind '" + k +
                                     "' for column " + column);
        }
    }
    return overrides;
}

} // namespace

const FeatureSchema& Dataset::predictor_schema(std::size_t feature) const {
    const std::size_t column = feature < effort_column ? feature : feature + 1;
    return schema.at(column);
}

std::vector<FeatureKind> Dataset::predictor_kinds() const {
    std::vector<FeatureKind> kinds;
    kinds.reserve(predictor_count());
    for (std::size_t f = 0; f < predictor_count(); ++f) {
        kinds.push_back(predictor_schema(f).kind);
    }
    return kinds;
}

FeatureMask full_mask(const Dataset& d) {
    FeatureMask mask(d.predictor_count());
    for (std::size_t f = 0; f < mask.size(); ++f) mask[f] = f;
    return mask;
}

void validate_mask(const FeatureMask& mask, std::size_t predictor_count) {
    if (mask.empty()) throw std::invalid_argument("feature mask is empty");
    for (std::size_t f : mask) {
        if (f >= predictor_count) {
            throw std::invalid_argument("feature mask index " + std::to_string(f) +
                                        " outside predictor range");
        }
    }
}

Dataset load_dataset(const std::filesystem::path& path,
                     const std::string& effort_column,
                     const LoadOptions& options, LoadReport* report) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset file: " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty dataset file: " + path.string());
    const std::vector<std::string> header = split_record(line);

    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        auto cells = split_record(line);
        if (cells.size() != header.size()) {
            throw std::runtime_error(path.string() + ": row " +
                                     std::to_string(rows.size() + 2) + " has " +
                                     std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(header.size()));
        }
        rows.push_back(std::move(cells));
    }

    std::size_t effort_index = header.size();
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (to_lower(trim(header[c])) == to_lower(effort_column)) {
            effort_index = c;
            break;
        }
    }
    if (effort_index == header.size()) {
        throw std::runtime_error(path.string() + ": effort column '" + effort_column +
                                 "' not found");
    }

    std::map<std::string, FeatureKind> overrides;
    std::filesystem::path sidecar = options.schema_sidecar;
    if (sidecar.empty()) {
        const auto candidate = std::filesystem::path(path.string() + ".schema.json");
        if (std::filesystem::exists(candidate)) sidecar = candidate;
    }
    if (!sidecar.empty()) overrides = read_sidecar(sidecar);

    // Kind inference over non-missing cells.
    std::vector<FeatureKind> kinds(header.size(), FeatureKind::Numeric);
    for (std::size_t c = 0; c < header.size(); ++c) {
        const auto it = overrides.find(trim(header[c]));
        if (it != overrides.end()) {
            kinds[c] = it->second;
            continue;
        }
        for (const auto& row : rows) {
            double unused;
            if (!is_missing(row[c]) && !parse_number(row[c], unused)) {
                kinds[c] = FeatureKind::Categorical;
                break;
            }
        }
    }
    if (kinds[effort_index] == FeatureKind::Categorical) {
        throw std::runtime_error(path.string() + ": effort column is not numeric");
    }

    Dataset out;
    out.name = path.stem().string();
    out.effort_unit = options.effort_unit;
    out.schema.resize(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        out.schema[c].name = trim(header[c]);
        out.schema[c].kind = kinds[c];
        out.schema[c].index = c;
    }
    out.effort_column = effort_index;

    std::vector<std::map<std::string, CategoryCode>> level_codes(header.size());
    std::size_t dropped = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        bool missing = false;
        for (std::size_t c = 0; c < row.size() && !missing; ++c) {
            if (is_missing(row[c])) missing = true;
            double unused;
            if (!missing && kinds[c] == FeatureKind::Numeric && !parse_number(row[c], unused)) {
                missing = true; // forced-numeric cell that does not parse
            }
        }
        if (missing) {
            ++dropped;
            continue;
        }

        double effort = 0.0;
        parse_number(row[effort_index], effort);
        if (effort <= 0.0) {
            throw std::runtime_error(path.string() + ": non-positive effort in row " +
                                     std::to_string(r + 2));
        }

        Project p;
        p.id = std::to_string(r + 1);
        p.effort = effort;
        p.features.reserve(header.size() - 1);
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c == effort_index) continue;
            if (kinds[c] == FeatureKind::Numeric) {
                double v = 0.0;
                parse_number(row[c], v);
                p.features.emplace_back(v);
            } else {
                const std::string value = trim(row[c]);
                auto& codes = level_codes[c];
                auto it = codes.find(value);
                if (it == codes.end()) {
                    const auto code = static_cast<CategoryCode>(out.schema[c].levels.size());
                    out.schema[c].levels.push_back(value);
                    it = codes.emplace(value, code).first;
                }
                p.features.emplace_back(it->second);
            }
        }
        out.projects.push_back(std::move(p));
    }

    if (out.projects.empty()) {
        throw std::runtime_error(path.string() + ": zero usable rows after dropping " +
                                 std::to_string(dropped));
    }
    if (report) {
        report->rows_loaded = out.projects.size();
        report->rows_dropped = dropped;
    }
    return out;
}

DatasetStats describe(const Dataset& d) {
    if (d.projects.empty()) throw std::invalid_argument("describe: empty dataset");
    std::vector<double> efforts;
    efforts.reserve(d.projects.size());
    for (const auto& p : d.projects) efforts.push_back(p.effort);

    DatasetStats s;
    s.size = d.projects.size();
    s.feature_count = d.schema.size();
    s.effort_min = *std::min_element(efforts.begin(), efforts.end());
    s.effort_max = *std::max_element(efforts.begin(), efforts.end());
    s.effort_mean = stats::mean(efforts);
    s.effort_median = stats::median(efforts);
    s.effort_skewness = stats::skewness(efforts);
    return s;
}

Dataset generate_synthetic(std::uint64_t seed, std::size_t n, std::size_t m,
                           SyntheticModel model) {
    if (n < 2) throw std::invalid_argument("generate_synthetic: need at least 2 projects");
    if (m < 1) throw std::invalid_argument("generate_synthetic: need at least 1 feature");

    Dataset out;
    out.effort_unit = "hours";
    out.schema.resize(m + 1);
    for (std::size_t f = 0; f < m; ++f) {
        out.schema[f].name = "f" + std::to_string(f);
        out.schema[f].kind = FeatureKind::Numeric;
        out.schema[f].index = f;
    }
    out.schema[m].name = "Effort";
    out.schema[m].index = m;
    out.effort_column = m;

    std::mt19937_64 rng(splitmix64(seed));
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    out.projects.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Project p;
        p.id = std::to_string(i + 1);
        p.features.reserve(m);
        switch (model) {
        case SyntheticModel::Linear: {
            out.name = "synthetic-linear";
            double sum = 0.0;
            for (std::size_t f = 0; f < m; ++f) {
                const double v = 0.05 + 0.9 * unit(rng);
                p.features.emplace_back(v);
                sum += v;
            }
            p.effort = 10.0 * sum;
            break;
        }
        case SyntheticModel::TwoBlob: {
            out.name = "synthetic-two-blob";
            // blob separation is 20x the blob radius
            const bool second = (i % 2 == 1);
            const double center = second ? 10.0 : 0.0;
            for (std::size_t f = 0; f < m; ++f) {
                p.features.emplace_back(center + (unit(rng) - 0.5));
            }
            const double base = second ? 100.0 : 10.0;
            p.effort = base * (0.8 + 0.4 * unit(rng));
            break;
        }
        case SyntheticModel::Noise: {
            out.name = "synthetic-noise";
            for (std::size_t f = 0; f < m; ++f) p.features.emplace_back(unit(rng));
            p.effort = 1.0 + 99.0 * unit(rng);
            break;
        }
        }
        out.projects.push_back(std::move(p));
    }
    return out;
}

} // namespace kabe
