#include "flan/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "flan/errors.hpp"
#include "flan/params.hpp"

namespace flan {

ChernoffBounds chernoff_bounds(std::uint32_t num_repetitions, double p, double delta) {
    if (num_repetitions < 1) throw ValidationError("chernoff_bounds: T must be >= 1");
    if (!(p > 0.0 && p <= 1.0)) throw ValidationError("chernoff_bounds: p must lie in (0, 1]");
    if (!(delta > 0.0 && delta <= 1.0)) throw ValidationError("chernoff_bounds: delta must lie in (0, 1]");
    const double tp = static_cast<double>(num_repetitions) * p;
    ChernoffBounds b;
    b.lower_tail = std::exp(-tp * delta * delta / 2.0);
    b.upper_tail = std::exp(-tp * delta * delta / 3.0);
    return b;
}

TailBound fp_bound(std::uint32_t num_repetitions, double q, double alpha, std::uint64_t cluster_size) {
    if (num_repetitions < 1) throw ValidationError("fp_bound: T must be >= 1");
    if (!(q > 0.0 && q < 1.0)) throw ValidationError("fp_bound: q must lie in (0, 1)");
    if (!(alpha > q)) {
        throw ValidationError("fp_bound: requires alpha > q (delta = alpha/q - 1 must be positive)");
    }
    TailBound b;
    b.delta = alpha / q - 1.0;
    b.delta_in_range = b.delta > 0.0 && b.delta <= 1.0;
    const double diff = q - alpha;
    b.value = static_cast<double>(cluster_size) *
              std::exp(-static_cast<double>(num_repetitions) * diff * diff / (3.0 * q));
    return b;
}

TailBound fn_bound(std::uint32_t num_repetitions, double p, double alpha, std::uint64_t cluster_size) {
    if (num_repetitions < 1) throw ValidationError("fn_bound: T must be >= 1");
    if (!(p > 0.0 && p <= 1.0)) throw ValidationError("fn_bound: p must lie in (0, 1]");
    if (!(alpha < p)) {
        throw ValidationError("fn_bound: requires alpha < p (delta = 1 - alpha/p must be positive)");
    }
    TailBound b;
    b.delta = 1.0 - alpha / p;
    b.delta_in_range = b.delta > 0.0 && b.delta <= 1.0;
    const double diff = p - alpha;
    b.value = std::exp(-static_cast<double>(cluster_size) * static_cast<double>(num_repetitions) *
                       diff * diff / (2.0 * p));
    return b;
}

void EdgeModelParams::validate() const {
    if (!(p > 0.0 && p <= 1.0)) throw ValidationError("edge model: p must lie in (0, 1]");
    if (!(q >= 0.0 && q < 1.0)) throw ValidationError("edge model: q must lie in [0, 1)");
    if (!(p > q)) throw ValidationError("edge model: requires p > q");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ValidationError("edge model: alpha must lie in [0, 1]");
    if (num_repetitions < 1) throw ValidationError("edge model: T must be >= 1");
    if (trials < 1) throw ValidationError("edge model: trials must be >= 1");
    if (cluster_sizes.empty()) throw ValidationError("edge model: cluster_sizes must be nonempty");
    for (std::uint32_t size : cluster_sizes) {
        if (size < 1) throw ValidationError("edge model: cluster sizes must be >= 1");
    }
}

namespace {

inline double uniform01(std::uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

struct TrialOutcome {
    std::uint32_t fp_nodes = 0;
    std::uint32_t fn_nodes = 0;
};

TrialOutcome run_trial(const EdgeModelParams& params, const std::vector<std::uint32_t>& cluster_of,
                       std::uint64_t rng_state) {
    const std::size_t n = cluster_of.size();
    const double threshold = params.alpha * static_cast<double>(params.num_repetitions);
    std::vector<bool> has_inter(n, false);
    std::vector<bool> has_intra(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool intra = cluster_of[i] == cluster_of[j];
            const double prob = intra ? params.p : params.q;
            std::uint32_t weight = 0;
            for (std::uint32_t t = 0; t < params.num_repetitions; ++t) {
                if (uniform01(rng_state) < prob) ++weight;
            }
            if (static_cast<double>(weight) >= threshold) {
                if (intra) {
                    has_intra[i] = has_intra[j] = true;
                } else {
                    has_inter[i] = has_inter[j] = true;
                }
            }
        }
    }
    TrialOutcome outcome;
    for (std::size_t i = 0; i < n; ++i) {
        if (has_inter[i]) ++outcome.fp_nodes;
        if (params.cluster_sizes[cluster_of[i]] >= 2 && !has_intra[i]) ++outcome.fn_nodes;
    }
    return outcome;
}

}  // namespace

SimulationResult simulate_edge_model(const EdgeModelParams& params) {
    params.validate();

    std::vector<std::uint32_t> cluster_of;
    std::uint64_t fn_nodes_per_trial = 0;
    for (std::uint32_t c = 0; c < params.cluster_sizes.size(); ++c) {
        for (std::uint32_t k = 0; k < params.cluster_sizes[c]; ++k) cluster_of.push_back(c);
        if (params.cluster_sizes[c] >= 2) fn_nodes_per_trial += params.cluster_sizes[c];
    }

    SimulationResult result;
    result.per_trial.resize(params.trials);

    auto run_range = [&](std::uint32_t begin, std::uint32_t step) {
        for (std::uint32_t trial = begin; trial < params.trials; trial += step) {
            std::uint64_t state = params.seed + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(trial) + 1);
            const auto outcome = run_trial(params, cluster_of, splitmix64(state));
            result.per_trial[trial] = {outcome.fp_nodes, outcome.fn_nodes};
        }
    };

    const std::uint32_t workers = std::max<std::uint32_t>(1, std::min(params.workers, params.trials));
    if (workers == 1) {
        run_range(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::uint32_t w = 0; w < workers; ++w) pool.emplace_back(run_range, w, workers);
        for (auto& t : pool) t.join();
    }

    for (const auto& [fp, fn] : result.per_trial) {
        result.fp_events += fp;
        result.fn_events += fn;
    }
    result.fp_samples = static_cast<std::uint64_t>(cluster_of.size()) * params.trials;
    result.fn_samples = fn_nodes_per_trial * params.trials;
    result.fp_rate = static_cast<double>(result.fp_events) / static_cast<double>(result.fp_samples);
    result.fn_rate = result.fn_samples == 0
                         ? 0.0
                         : static_cast<double>(result.fn_events) / static_cast<double>(result.fn_samples);
    result.fp_stderr = std::sqrt(result.fp_rate * (1.0 - result.fp_rate) /
                                 static_cast<double>(result.fp_samples));
    result.fn_stderr = result.fn_samples == 0
                           ? 0.0
                           : std::sqrt(result.fn_rate * (1.0 - result.fn_rate) /
                                       static_cast<double>(result.fn_samples));
    return result;
}

}  // namespace flan
