#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "flan/index_store.hpp"
#include "flan/inference.hpp"

namespace flan {

struct CorpusStats {
    std::uint64_t lines = 0;
    std::uint64_t tokens = 0;
    std::uint64_t distinct_tokens = 0;
    std::uint64_t indexed_tokens = 0;  // distinct tokens that met min_frequency
    std::map<std::uint64_t, std::uint64_t> component_size_histogram;

    bool operator==(const CorpusStats&) const = default;
};

// Splits on Unicode whitespace; punctuation stays attached to tokens.
// Lowercasing is ASCII-only. Throws ValidationError on non-whitespace
// control characters.
std::vector<std::string> tokenize(std::string_view line, bool lowercase);

std::string ascii_lower(std::string_view token);

// Exact token counts over a line stream. Tokens below min_frequency are
// excluded from the table (they pass through normalization untouched).
WordTable count_frequencies(std::istream& corpus, bool lowercase, std::uint64_t min_frequency = 1,
                            CorpusStats* stats = nullptr);

struct IndexOptions {
    LshParams params;
    bool lowercase = false;
    std::uint64_t min_frequency = 1;
    std::uint32_t workers = 1;
    std::uint32_t warn_bucket_size = 10000;
    std::string created_at = kDefaultTimestamp;
    std::ostream* diagnostics = nullptr;
};

// tokenize -> count -> build_graph -> prune -> components -> vocabulary ->
// save_index. Returns corpus statistics including the component histogram.
CorpusStats index_corpus(const std::filesystem::path& input, const IndexOptions& options,
                         const std::filesystem::path& out_dir);

struct NormalizeSummary {
    std::uint64_t lines = 0;
    std::uint64_t tokens = 0;
    std::uint64_t replaced = 0;  // vocabulary hit, representative differs
    std::uint64_t passed = 0;    // unchanged
    std::uint64_t inferred = 0;  // rewritten via the inference criterion

    bool operator==(const NormalizeSummary&) const = default;
};

struct NormalizeOptions {
    bool infer_unseen = false;
    bool inclusive_threshold = false;
    std::uint32_t workers = 1;
};

// Replaces every indexed token by its representative, preserving line
// structure, token order, and inter-token whitespace byte-for-byte.
NormalizeSummary normalize_corpus(const std::filesystem::path& input, const Index& index,
                                  const std::filesystem::path& output,
                                  const NormalizeOptions& options = {});

NormalizeSummary normalize_corpus(const std::filesystem::path& input,
                                  const std::filesystem::path& index_dir,
                                  const std::filesystem::path& output,
                                  const NormalizeOptions& options = {});

struct RewriteSummary {
    std::uint64_t lines = 0;
    std::uint64_t tokens = 0;
    std::uint64_t changed = 0;
};

// Rewrites every token through `map_token` (whitespace and line structure
// preserved byte-for-byte); backs the baseline corrector's corpus mode.
RewriteSummary rewrite_corpus(const std::filesystem::path& input, const std::filesystem::path& output,
                              const std::function<std::string(std::string_view)>& map_token);

struct ComponentInfo {
    std::uint32_t id = 0;
    std::string representative;
    std::vector<std::string> members;
};

struct ComponentStatsReport {
    CorpusStats stats;
    std::vector<ComponentInfo> top_components;  // largest first
};

ComponentStatsReport component_stats(const Index& index, std::size_t top_k = 10);
ComponentStatsReport component_stats(const std::filesystem::path& index_dir, std::size_t top_k = 10);

// size -> count over the vocabulary's components.
std::map<std::uint64_t, std::uint64_t> component_histogram(const Vocabulary& vocabulary);

}  // namespace flan
