#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "flan/params.hpp"
#include "flan/word_table.hpp"

namespace flan {

// Weighted word-to-word graph. An edge's weight counts the repetitions in
// which the two words shared a folded signature. Keys are unordered id pairs
// packed into 64 bits; self-edges cannot occur.
struct CollisionGraph {
    std::unordered_map<std::uint64_t, std::uint32_t> edges;

    static std::uint64_t edge_key(std::uint32_t a, std::uint32_t b) {
        const std::uint32_t lo = a < b ? a : b;
        const std::uint32_t hi = a < b ? b : a;
        return (static_cast<std::uint64_t>(lo) << 32) | hi;
    }
    static std::pair<std::uint32_t, std::uint32_t> key_pair(std::uint64_t key) {
        return {static_cast<std::uint32_t>(key >> 32), static_cast<std::uint32_t>(key & 0xFFFFFFFFull)};
    }

    void add_edge(std::uint32_t a, std::uint32_t b, std::uint32_t weight = 1) {
        edges[edge_key(a, b)] += weight;
    }
    std::uint32_t weight(std::uint32_t a, std::uint32_t b) const {
        const auto it = edges.find(edge_key(a, b));
        return it == edges.end() ? 0 : it->second;
    }
    // Commutative merge of per-worker partial graphs.
    void merge(const CollisionGraph& other) {
        for (const auto& [key, w] : other.edges) edges[key] += w;
    }

    bool operator==(const CollisionGraph&) const = default;
};

// One repetition's signature -> word-id buckets in CSR layout: bucket k holds
// ids[offsets[k] .. offsets[k+1]). Signatures are ascending and unique, id
// runs ascending. This is the inference-time lookup table.
struct SignatureBuckets {
    std::vector<std::uint64_t> signatures;
    std::vector<std::uint32_t> offsets{0};
    std::vector<std::uint32_t> ids;

    std::size_t size() const { return signatures.size(); }
    std::span<const std::uint32_t> bucket(std::size_t k) const {
        return {ids.data() + offsets[k], ids.data() + offsets[k + 1]};
    }
    // Empty span when the signature is absent.
    std::span<const std::uint32_t> find(std::uint64_t signature) const;

    void push_bucket(std::uint64_t signature, std::span<const std::uint32_t> bucket_ids);

    bool operator==(const SignatureBuckets&) const = default;
};

struct BucketIndex {
    std::vector<SignatureBuckets> repetitions;

    bool operator==(const BucketIndex&) const = default;
};

struct BuildOptions {
    std::uint32_t workers = 1;
    std::uint32_t warn_bucket_size = 10000;
    std::ostream* diagnostics = nullptr;  // bucket-size warnings; silent when null
};

// Adds +1 to every unordered pair inside each bucket (a clique per bucket).
// Buckets larger than warn_bucket_size emit a diagnostic but are processed.
void accumulate_repetition(const std::unordered_map<std::uint64_t, std::vector<std::uint32_t>>& buckets,
                           CollisionGraph& graph, std::uint32_t warn_bucket_size = 10000,
                           std::ostream* diagnostics = nullptr);

// Hashes every word across all repetitions, accumulates collision cliques,
// and returns the per-repetition bucket tables. Words whose substring set is
// empty are absent from both structures.
std::pair<CollisionGraph, BucketIndex> build_graph(const WordTable& words, const LshParams& params,
                                                   const std::vector<RepetitionCoeffs>& coeffs,
                                                   const BuildOptions& options = {});

// Keeps exactly the edges with weight >= alpha*T (real-valued comparison).
CollisionGraph prune(const CollisionGraph& graph, double alpha, std::uint32_t num_repetitions);

struct Component {
    std::uint32_t id = 0;
    std::vector<std::uint32_t> members;  // ascending
    std::uint32_t representative = 0;    // max frequency, ties to smallest token

    bool operator==(const Component&) const = default;
};

// Union-find over the pruned edges. Every indexed word lands in exactly one
// component (singletons included); ids are assigned by ascending smallest
// member id.
std::vector<Component> connected_components(const CollisionGraph& graph, const WordTable& words);

struct Vocabulary {
    std::vector<std::uint32_t> representative_of;  // word id -> representative id
    std::vector<std::uint32_t> component_of;       // word id -> component id
    std::vector<Component> components;

    bool operator==(const Vocabulary&) const = default;
};

Vocabulary build_vocabulary(std::vector<Component> components, const WordTable& words);

}  // namespace flan
