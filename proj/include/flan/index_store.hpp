#pragma once

#include <filesystem>

#include "flan/graph.hpp"
#include "flan/manifest.hpp"
#include "flan/word_table.hpp"

namespace flan {

// A complete loadable index: manifest.json + vocab.tsv + buckets.bin.
struct Index {
    Manifest manifest;
    WordTable words;
    Vocabulary vocabulary;
    BucketIndex buckets;

    bool operator==(const Index&) const = default;
};

// Writes the three artifacts with canonical bytes:
//   manifest.json  key-sorted JSON
//   vocab.tsv      "token\trepresentative\tfrequency\tcomponent_id\n", token-sorted
//   buckets.bin    per repetition: u64-LE entry count, then per entry
//                  u64-LE signature, u32-LE id count, u32-LE ids (ascending);
//                  entries sorted by signature
void save_index(const Manifest& manifest, const WordTable& words, const Vocabulary& vocabulary,
                const BucketIndex& buckets, const std::filesystem::path& dir);

void save_index(const Index& index, const std::filesystem::path& dir);

// Exact inverse of save_index. Throws ValidationError (version mismatch,
// malformed content, with line/offset) or IoError (missing/unreadable files).
Index load_index(const std::filesystem::path& dir);

}  // namespace flan
