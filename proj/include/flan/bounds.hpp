#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace flan {

struct ChernoffBounds {
    double lower_tail = 1.0;  // Pr[X <= (1-delta)Tp] <= exp(-Tp delta^2 / 2)
    double upper_tail = 1.0;  // Pr[X >= (1+delta)Tp] <= exp(-Tp delta^2 / 3)
};

// Both closed forms. Throws ValidationError unless delta in (0,1],
// p in (0,1] and T >= 1.
ChernoffBounds chernoff_bounds(std::uint32_t num_repetitions, double p, double delta);

struct TailBound {
    double value = 1.0;
    double delta = 0.0;
    bool delta_in_range = false;  // delta in (0,1], the Chernoff validity range
};

// False-positive bound |c| * exp(-T (q-alpha)^2 / (3q)) with delta = alpha/q - 1.
// Requires alpha > q; out-of-range delta is flagged, never silently dropped.
TailBound fp_bound(std::uint32_t num_repetitions, double q, double alpha, std::uint64_t cluster_size);

// False-negative bound exp(-|c| T (p-alpha)^2 / (2p)) with delta = 1 - alpha/p.
// Requires alpha < p.
TailBound fn_bound(std::uint32_t num_repetitions, double p, double alpha, std::uint64_t cluster_size);

struct EdgeModelParams {
    double p = 0.9;  // intra-cluster per-repetition collision probability, (0,1]
    double q = 0.1;  // inter-cluster probability, [0,1); p > q
    std::vector<std::uint32_t> cluster_sizes{5, 5};
    std::uint32_t num_repetitions = 20;
    double alpha = 0.5;
    std::uint32_t trials = 1000;
    std::uint64_t seed = 0;
    std::uint32_t workers = 1;

    void validate() const;
};

struct SimulationResult {
    double fp_rate = 0.0;
    double fn_rate = 0.0;
    std::uint64_t fp_events = 0;
    std::uint64_t fn_events = 0;
    std::uint64_t fp_samples = 0;  // nodes x trials
    std::uint64_t fn_samples = 0;  // nodes in clusters of size >= 2, x trials
    double fp_stderr = 0.0;
    double fn_stderr = 0.0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> per_trial;  // (fp, fn) node counts
};

// Draws every edge weight as T independent coin flips (probability p within a
// cluster, q across clusters), applies the weight >= alpha*T pruning rule, and
// counts per-node events: FP = some surviving inter-cluster edge, FN = no
// surviving edge into the node's own cluster. Nodes in singleton clusters
// have no intra-cluster edges and are excluded from the FN denominator.
SimulationResult simulate_edge_model(const EdgeModelParams& params);

}  // namespace flan
