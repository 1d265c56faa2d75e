#include "kabe/adjust.hpp"

#include "kabe/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace kabe {

namespace {

double min_effort(std::span<const Project> train) {
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& p : train) lo = std::min(lo, p.effort);
    return lo;
}

double effort_range(std::span<const Project> train) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& p : train) {
        lo = std::min(lo, p.effort);
        hi = std::max(hi, p.effort);
    }
    const double r = hi - lo;
    return r > 0.0 ? r : 1.0;
}

// Precomputed leave-one-out context: for each training project, the efforts
// of its selected analogies and the normalized feature differences to them.
struct PairContext {
    double actual = 0.0;
    double clamp_floor = 0.0;
    std::vector<double> analog_efforts;
    std::vector<std::vector<double>> diffs;  // one vector per analog
};

std::vector<PairContext> build_pair_contexts(std::span<const FeatureKind> predictor_kinds,
                                             std::span<const Project> train,
                                             const FeatureMask& mask,
                                             const AnalogySelector& selector,
                                             std::uint64_t seed) {
    std::vector<PairContext> contexts;
    contexts.reserve(train.size());
    std::vector<Project> rest(train.begin(), train.end());
    for (std::size_t i = 0; i < train.size(); ++i) {
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        const NormalizationModel nm = fit_normalizer(predictor_kinds, rest, mask);
        const AnalogySet analogies = selector(train[i], rest, nm, derive_seed(seed, i));

        PairContext ctx;
        ctx.actual = train[i].effort;
        ctx.clamp_floor = min_effort(rest);
        const std::vector<double> xv = normalize(train[i], nm);
        for (const auto& nb : analogies.members) {
            ctx.analog_efforts.push_back(rest[nb.index].effort);
            const std::vector<double> yv = normalize(rest[nb.index], nm);
            std::vector<double> diff(xv.size());
            for (std::size_t j = 0; j < xv.size(); ++j) {
                diff[j] = feature_delta(xv[j], yv[j], nm.kinds[j]);
            }
            ctx.diffs.push_back(std::move(diff));
        }
        contexts.push_back(std::move(ctx));
        rest.insert(rest.begin() + static_cast<std::ptrdiff_t>(i), train[i]);
    }
    return contexts;
}

double linear_prediction(const PairContext& ctx, std::span<const double> alpha) {
    double sum = 0.0;
    for (std::size_t i = 0; i < ctx.analog_efforts.size(); ++i) {
        double correction = 0.0;
        for (std::size_t j = 0; j < alpha.size(); ++j) {
            correction += alpha[j] * ctx.diffs[i][j];
        }
        sum += ctx.analog_efforts[i] + correction;
    }
    const double estimate = sum / static_cast<double>(ctx.analog_efforts.size());
    return std::max(estimate, ctx.clamp_floor);
}

double loo_mmre(const std::vector<PairContext>& contexts, std::span<const double> alpha) {
    double total = 0.0;
    for (const auto& ctx : contexts) {
        const double predicted = linear_prediction(ctx, alpha);
        total += std::fabs(ctx.actual - predicted) / ctx.actual;
    }
    return total / static_cast<double>(contexts.size());
}

} // namespace

AnalogySelector make_fixed_k_selector(std::size_t k) {
    return [k](const Project& x, std::span<const Project> train,
               const NormalizationModel& nm, std::uint64_t) {
        const auto ranked = rank_neighbors(x, train, nm);
        return fixed_k_select(ranked, std::min(k, ranked.size()));
    };
}

AnalogySelector make_kabe_selector(const BkConfig& cfg) {
    return [cfg](const Project& x, std::span<const Project> train,
                 const NormalizationModel& nm, std::uint64_t seed) {
        BkConfig local = cfg;
        local.seed = seed;
        return kabe_select(x, train, nm, local);
    };
}

SimilarityEstimate adjust_similarity(const AnalogySet& analogies,
                                     std::span<const Project> train) {
    if (analogies.members.empty()) {
        throw std::invalid_argument("adjust_similarity: empty analogy set");
    }
    double weight = 0.0;
    double weighted = 0.0;
    double plain = 0.0;
    for (const auto& nb : analogies.members) {
        const double effort = train[nb.index].effort;
        weight += nb.similarity;
        weighted += nb.similarity * effort;
        plain += effort;
    }
    if (weight <= 0.0) {
        return {plain / static_cast<double>(analogies.members.size()), true};
    }
    return {weighted / weight, false};
}

GaModel train_ga(std::span<const FeatureKind> predictor_kinds,
                 std::span<const Project> train, const FeatureMask& mask,
                 const GaConfig& cfg, const AnalogySelector& selector) {
    if (train.size() < 3) throw std::invalid_argument("train_ga: fold smaller than 3");
    validate_mask(mask, predictor_kinds.size());
    if (cfg.population < 2) throw std::invalid_argument("train_ga: population < 2");

    const std::size_t genes = mask.size();
    std::vector<std::pair<double, double>> bounds = cfg.coefficient_bounds;
    if (bounds.empty()) {
        // correction scale tied to the spread of observed efforts
        const double r = 2.0 * effort_range(train);
        bounds.assign(genes, {-r, r});
    }
    if (bounds.size() != genes) {
        throw std::invalid_argument("train_ga: one bound interval per masked feature");
    }

    const auto contexts =
        build_pair_contexts(predictor_kinds, train, mask, selector, derive_seed(cfg.seed, 0x9a1));

    std::mt19937_64 rng(derive_seed(cfg.seed, 0x6a0));
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<std::vector<double>> population(cfg.population, std::vector<double>(genes));
    for (auto& individual : population) {
        for (std::size_t j = 0; j < genes; ++j) {
            individual[j] = bounds[j].first + unit(rng) * (bounds[j].second - bounds[j].first);
        }
    }

    std::vector<double> fitness(cfg.population);
    auto evaluate_all = [&] {
        for (std::size_t i = 0; i < population.size(); ++i) {
            fitness[i] = loo_mmre(contexts, population[i]);
        }
    };
    evaluate_all();

    GaModel model;
    model.bounds = bounds;
    std::uniform_int_distribution<std::size_t> pick(0, cfg.population - 1);
    for (std::size_t gen = 0; gen < cfg.generations; ++gen) {
        const std::size_t elite = static_cast<std::size_t>(
            std::min_element(fitness.begin(), fitness.end()) - fitness.begin());
        model.best_fitness_by_generation.push_back(fitness[elite]);

        std::vector<std::vector<double>> next;
        next.reserve(cfg.population);
        next.push_back(population[elite]);
        while (next.size() < cfg.population) {
            auto tournament = [&] {
                const std::size_t i = pick(rng);
                const std::size_t j = pick(rng);
                return fitness[i] <= fitness[j] ? i : j;
            };
            const std::size_t pa = tournament();
            const std::size_t pb = tournament();
            std::vector<double> child = population[pa];
            if (unit(rng) < cfg.crossover_rate) {
                for (std::size_t j = 0; j < genes; ++j) {
                    if (unit(rng) < 0.5) child[j] = population[pb][j];
                }
            }
            for (std::size_t j = 0; j < genes; ++j) {
                if (unit(rng) < cfg.mutation_rate) {
                    const double sigma = 0.1 * (bounds[j].second - bounds[j].first);
                    std::normal_distribution<double> jitter(0.0, sigma);
                    child[j] = std::clamp(child[j] + jitter(rng), bounds[j].first,
                                          bounds[j].second);
                }
            }
            next.push_back(std::move(child));
        }
        population = std::move(next);
        evaluate_all();
    }

    const std::size_t best = static_cast<std::size_t>(
        std::min_element(fitness.begin(), fitness.end()) - fitness.begin());
    model.best_fitness_by_generation.push_back(fitness[best]);
    model.coefficients = population[best];
    model.training_mmre = fitness[best];
    return model;
}

double adjust_ga(const Project& x, const AnalogySet& analogies,
                 std::span<const Project> train, const NormalizationModel& nm,
                 const GaModel& model) {
    if (analogies.members.empty()) {
        throw std::invalid_argument("adjust_ga: empty analogy set");
    }
    if (model.coefficients.size() != nm.dimensions()) {
        throw std::invalid_argument("adjust_ga: coefficient count does not match mask");
    }
    const std::vector<double> xv = normalize(x, nm);
    double sum = 0.0;
    for (const auto& nb : analogies.members) {
        const std::vector<double> yv = normalize(train[nb.index], nm);
        double correction = 0.0;
        for (std::size_t j = 0; j < xv.size(); ++j) {
            correction += model.coefficients[j] * feature_delta(xv[j], yv[j], nm.kinds[j]);
        }
        sum += train[nb.index].effort + correction;
    }
    const double estimate = sum / static_cast<double>(analogies.members.size());
    return std::max(estimate, min_effort(train));
}

double NnModel::forward(std::span<const double> diff) const {
    double out = b2;
    for (std::size_t h = 0; h < hidden; ++h) {
        double act = b1[h];
        for (std::size_t j = 0; j < inputs; ++j) {
            act += w1[h * inputs + j] * diff[j];
        }
        out += w2[h] / (1.0 + std::exp(-act));
    }
    return out;
}

NnModel train_nn(std::span<const FeatureKind> predictor_kinds,
                 std::span<const Project> train, const FeatureMask& mask,
                 const NnConfig& cfg, const AnalogySelector& selector) {
    if (train.size() < 3) throw std::invalid_argument("train_nn: fold smaller than 3");
    validate_mask(mask, predictor_kinds.size());
    if (cfg.mse_threshold <= 0.0) throw std::invalid_argument("train_nn: mse_threshold <= 0");

    const auto contexts =
        build_pair_contexts(predictor_kinds, train, mask, selector, derive_seed(cfg.seed, 0x9a1));

    const double scale = effort_range(train);
    std::vector<std::vector<double>> inputs;
    std::vector<double> targets;  // effort differences scaled to [-1, 1]
    for (const auto& ctx : contexts) {
        for (std::size_t i = 0; i < ctx.analog_efforts.size(); ++i) {
            inputs.push_back(ctx.diffs[i]);
            targets.push_back((ctx.actual - ctx.analog_efforts[i]) / scale);
        }
    }
    if (inputs.empty()) throw std::invalid_argument("train_nn: no training pairs");

    NnModel model;
    model.inputs = mask.size();
    model.hidden = cfg.hidden_units > 0 ? cfg.hidden_units : std::max<std::size_t>(4, mask.size());
    model.effort_scale = scale;
    model.w1.resize(model.hidden * model.inputs);
    model.b1.assign(model.hidden, 0.0);
    model.w2.resize(model.hidden);

    std::mt19937_64 rng(derive_seed(cfg.seed, 0x221));
    const double spread = 1.0 / std::sqrt(static_cast<double>(model.inputs));
    std::uniform_real_distribution<double> init(-spread, spread);
    for (auto& w : model.w1) w = init(rng);
    for (auto& w : model.w2) w = init(rng);

    std::vector<double> hidden_act(model.hidden);
    for (model.epochs_run = 0; model.epochs_run < cfg.max_epochs; ++model.epochs_run) {
        double sse = 0.0;
        for (std::size_t p = 0; p < inputs.size(); ++p) {
            const auto& in = inputs[p];
            double out = model.b2;
            for (std::size_t h = 0; h < model.hidden; ++h) {
                double act = model.b1[h];
                for (std::size_t j = 0; j < model.inputs; ++j) {
                    act += model.w1[h * model.inputs + j] * in[j];
                }
                hidden_act[h] = 1.0 / (1.0 + std::exp(-act));
                out += model.w2[h] * hidden_act[h];
            }
            const double err = out - targets[p];
            sse += err * err;

            const double delta_out = cfg.learning_rate * err;
            model.b2 -= delta_out;
            for (std::size_t h = 0; h < model.hidden; ++h) {
                const double grad_hidden =
                    err * model.w2[h] * hidden_act[h] * (1.0 - hidden_act[h]);
                model.w2[h] -= delta_out * hidden_act[h];
                const double delta_hidden = cfg.learning_rate * grad_hidden;
                model.b1[h] -= delta_hidden;
                for (std::size_t j = 0; j < model.inputs; ++j) {
                    model.w1[h * model.inputs + j] -= delta_hidden * in[j];
                }
            }
        }
        model.training_mse = sse / static_cast<double>(inputs.size());
        if (model.training_mse < cfg.mse_threshold) {
            ++model.epochs_run;
            break;
        }
    }
    return model;
}

double adjust_nn(const Project& x, const AnalogySet& analogies,
                 std::span<const Project> train, const NormalizationModel& nm,
                 const NnModel& model) {
    if (analogies.members.empty()) {
        throw std::invalid_argument("adjust_nn: empty analogy set");
    }
    if (model.inputs != nm.dimensions()) {
        throw std::invalid_argument("adjust_nn: model input size does not match mask");
    }
    const std::vector<double> xv = normalize(x, nm);
    std::vector<double> diff(xv.size());
    double sum = 0.0;
    for (const auto& nb : analogies.members) {
        const std::vector<double> yv = normalize(train[nb.index], nm);
        for (std::size_t j = 0; j < xv.size(); ++j) {
            diff[j] = feature_delta(xv[j], yv[j], nm.kinds[j]);
        }
        sum += train[nb.index].effort + model.effort_scale * model.forward(diff);
    }
    const double estimate = sum / static_cast<double>(analogies.members.size());
    return std::max(estimate, min_effort(train));
}

} // namespace kabe
