#include "flan/graph.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <thread>

#include "flan/errors.hpp"
#include "flan/hashing.hpp"

namespace flan {

std::span<const std::uint32_t> SignatureBuckets::find(std::uint64_t signature) const {
    const auto it = std::lower_bound(signatures.begin(), signatures.end(), signature);
    if (it == signatures.end() || *it != signature) return {};
    return bucket(static_cast<std::size_t>(it - signatures.begin()));
}

void SignatureBuckets::push_bucket(std::uint64_t signature, std::span<const std::uint32_t> bucket_ids) {
    signatures.push_back(signature);
    ids.insert(ids.end(), bucket_ids.begin(), bucket_ids.end());
    offsets.push_back(static_cast<std::uint32_t>(ids.size()));
}

void accumulate_repetition(const std::unordered_map<std::uint64_t, std::vector<std::uint32_t>>& buckets,
                           CollisionGraph& graph, std::uint32_t warn_bucket_size,
                           std::ostream* diagnostics) {
    for (const auto& [signature, ids] : buckets) {
        if (diagnostics != nullptr && ids.size() > warn_bucket_size) {
            *diagnostics << "warning: bucket for signature " << signature << " holds " << ids.size()
                         << " words (threshold " << warn_bucket_size << ")\n";
        }
        for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
            for (std::size_t j = i + 1; j < ids.size(); ++j) {
                graph.add_edge(ids[i], ids[j]);
            }
        }
    }
}

namespace {

struct RepetitionResult {
    CollisionGraph graph;
    SignatureBuckets buckets;
    std::vector<std::pair<std::uint64_t, std::size_t>> oversized;  // (signature, size)
};

RepetitionResult process_repetition(const std::vector<std::vector<std::uint64_t>>& digests,
                                    std::uint32_t rep, const LshParams& params,
                                    const RepetitionCoeffs& rep_coeffs, std::uint32_t warn_bucket_size) {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> pairs;
    pairs.reserve(digests.size());
    for (std::uint32_t id = 0; id < digests.size(); ++id) {
        const auto sig = signature_from_digests(digests[id], rep, params, rep_coeffs);
        if (sig) pairs.emplace_back(*sig, id);
    }
    std::sort(pairs.begin(), pairs.end());

    RepetitionResult result;
    result.buckets.signatures.reserve(pairs.size());
    result.buckets.ids.reserve(pairs.size());
    for (std::size_t begin = 0; begin < pairs.size();) {
        std::size_t end = begin + 1;
        while (end < pairs.size() && pairs[end].first == pairs[begin].first) ++end;
        result.buckets.signatures.push_back(pairs[begin].first);
        for (std::size_t k = begin; k < end; ++k) result.buckets.ids.push_back(pairs[k].second);
        result.buckets.offsets.push_back(static_cast<std::uint32_t>(result.buckets.ids.size()));
        const std::size_t size = end - begin;
        if (size > warn_bucket_size) result.oversized.emplace_back(pairs[begin].first, size);
        for (std::size_t i = begin; i + 1 < end; ++i) {
            for (std::size_t j = i + 1; j < end; ++j) {
                result.graph.add_edge(pairs[i].second, pairs[j].second);
            }
        }
        begin = end;
    }
    return result;
}

}  // namespace

std::pair<CollisionGraph, BucketIndex> build_graph(const WordTable& words, const LshParams& params,
                                                   const std::vector<RepetitionCoeffs>& coeffs,
                                                   const BuildOptions& options) {
    params.validate();
    if (coeffs.size() != params.num_repetitions) {
        throw ValidationError("build_graph: coefficient count does not match num_repetitions");
    }
    const std::uint32_t T = params.num_repetitions;

    // Slice and digest each word once; repetitions reuse the digests.
    std::vector<std::vector<std::uint64_t>> digests(words.size());
    for (std::uint32_t id = 0; id < words.size(); ++id) {
        digests[id] = substring_digests(slice_word(words.tokens[id], params.charlens));
    }

    std::vector<RepetitionResult> results(T);
    const std::uint32_t workers = std::max<std::uint32_t>(1, std::min(options.workers, T));
    if (workers == 1) {
        for (std::uint32_t rep = 0; rep < T; ++rep) {
            results[rep] = process_repetition(digests, rep, params, coeffs[rep], options.warn_bucket_size);
        }
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::uint32_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::uint32_t rep = w; rep < T; rep += workers) {
                    results[rep] =
                        process_repetition(digests, rep, params, coeffs[rep], options.warn_bucket_size);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    CollisionGraph graph;
    BucketIndex index;
    index.repetitions.resize(T);
    for (std::uint32_t rep = 0; rep < T; ++rep) {
        graph.merge(results[rep].graph);
        index.repetitions[rep] = std::move(results[rep].buckets);
        if (options.diagnostics != nullptr) {
            for (const auto& [signature, size] : results[rep].oversized) {
                *options.diagnostics << "warning: repetition " << rep << " bucket for signature "
                                     << signature << " holds " << size << " words (threshold "
                                     << options.warn_bucket_size << ")\n";
            }
        }
    }
    return {std::move(graph), std::move(index)};
}

CollisionGraph prune(const CollisionGraph& graph, double alpha, std::uint32_t num_repetitions) {
    const double threshold = alpha * static_cast<double>(num_repetitions);
    CollisionGraph kept;
    for (const auto& [key, weight] : graph.edges) {
        if (static_cast<double>(weight) >= threshold) kept.edges.emplace(key, weight);
    }
    return kept;
}

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), 0u);
    }

    std::uint32_t find(std::uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
};

}  // namespace

std::vector<Component> connected_components(const CollisionGraph& graph, const WordTable& words) {
    UnionFind uf(words.size());
    for (const auto& [key, _] : graph.edges) {
        const auto [a, b] = CollisionGraph::key_pair(key);
        if (a >= words.size() || b >= words.size()) {
            throw ValidationError("connected_components: edge references unknown word id");
        }
        uf.unite(a, b);
    }

    std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> groups;
    for (std::uint32_t id = 0; id < words.size(); ++id) {
        groups[uf.find(id)].push_back(id);  // ascending per group
    }

    std::vector<Component> components;
    components.reserve(groups.size());
    for (auto& [_, members] : groups) {
        Component c;
        c.members = std::move(members);
        c.representative = c.members.front();
        for (std::uint32_t id : c.members) {
            // Ids follow token order, so the smaller id is the smaller token.
            if (words.frequencies[id] > words.frequencies[c.representative]) c.representative = id;
        }
        components.push_back(std::move(c));
    }
    std::sort(components.begin(), components.end(),
              [](const Component& a, const Component& b) { return a.members.front() < b.members.front(); });
    for (std::uint32_t i = 0; i < components.size(); ++i) components[i].id = i;
    return components;
}

Vocabulary build_vocabulary(std::vector<Component> components, const WordTable& words) {
    Vocabulary vocab;
    vocab.representative_of.assign(words.size(), 0);
    vocab.component_of.assign(words.size(), 0);
    std::vector<bool> seen(words.size(), false);
    for (const auto& c : components) {
        for (std::uint32_t id : c.members) {
            if (id >= words.size() || seen[id]) {
                throw ValidationError("build_vocabulary: components do not partition the word table");
            }
            seen[id] = true;
            vocab.representative_of[id] = c.representative;
            vocab.component_of[id] = c.id;
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw ValidationError("build_vocabulary: components do not cover the word table");
    }
    vocab.components = std::move(components);
    return vocab;
}

}  // namespace flan
