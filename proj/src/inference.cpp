#include "flan/inference.hpp"

#include <algorithm>
#include <thread>
#include <unordered_map>

#include "flan/hashing.hpp"

namespace flan {

std::optional<InferenceMatch> infer_word(std::string_view word, const Index& index,
                                         const InferenceOptions& options) {
    const LshParams& params = index.manifest.params;
    const auto digests = substring_digests(slice_word(word, params.charlens));
    if (digests.empty()) return std::nullopt;

    std::unordered_map<std::uint32_t, std::uint32_t> weights;
    for (std::uint32_t rep = 0; rep < params.num_repetitions; ++rep) {
        const auto sig = signature_from_digests(digests, rep, params, index.manifest.coefficients[rep]);
        if (!sig) continue;
        for (std::uint32_t id : index.buckets.repetitions[rep].find(*sig)) ++weights[id];
    }

    const double threshold = params.alpha * static_cast<double>(params.num_repetitions);
    std::optional<std::uint32_t> best;
    for (const auto& [id, weight] : weights) {
        const double w = static_cast<double>(weight);
        const bool qualifies = options.inclusive_threshold ? w >= threshold : w > threshold;
        if (!qualifies) continue;
        if (!best) {
            best = id;
            continue;
        }
        const std::uint32_t bw = weights.at(*best);
        // Largest weight, then highest frequency, then smallest token (ids
        // follow token order).
        if (weight > bw ||
            (weight == bw && (index.words.frequencies[id] > index.words.frequencies[*best] ||
                              (index.words.frequencies[id] == index.words.frequencies[*best] && id < *best)))) {
            best = id;
        }
    }
    if (!best) return std::nullopt;

    InferenceMatch match;
    match.matched_id = *best;
    match.weight = weights.at(*best);
    match.representative_id = index.vocabulary.representative_of[*best];
    return match;
}

std::vector<std::optional<InferenceMatch>> infer_batch(const std::vector<std::string>& words,
                                                       const Index& index,
                                                       const InferenceOptions& options) {
    std::vector<std::optional<InferenceMatch>> results(words.size());
    const std::uint32_t workers =
        std::max<std::uint32_t>(1, std::min<std::uint64_t>(options.workers, words.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < words.size(); ++i) results[i] = infer_word(words[i], index, options);
        return results;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint32_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < words.size(); i += workers) {
                results[i] = infer_word(words[i], index, options);
            }
        });
    }
    for (auto& t : pool) t.join();
    return results;
}

}  // namespace flan
