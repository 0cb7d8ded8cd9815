#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flan/index_store.hpp"

namespace flan {

struct InferenceMatch {
    std::uint32_t matched_id = 0;
    std::uint32_t weight = 0;
    std::uint32_t representative_id = 0;

    bool operator==(const InferenceMatch&) const = default;
};

struct InferenceOptions {
    // The indexing criterion keeps weight >= alpha*T; inference defaults to
    // the strict form (> alpha*T). Set inclusive_threshold to use >= here too.
    bool inclusive_threshold = false;
    std::uint32_t workers = 1;  // used by infer_batch
};

// Hashes the word with the manifest coefficients, counts bucket collisions
// per repetition, and returns the heaviest candidate above the threshold —
// ties broken by higher frequency, then smaller token — resolved to its
// component representative. nullopt when nothing qualifies or the word is too
// short to hash.
std::optional<InferenceMatch> infer_word(std::string_view word, const Index& index,
                                         const InferenceOptions& options = {});

// Element-wise infer_word; order-preserving for any worker count.
std::vector<std::optional<InferenceMatch>> infer_batch(const std::vector<std::string>& words,
                                                       const Index& index,
                                                       const InferenceOptions& options = {});

}  // namespace flan
