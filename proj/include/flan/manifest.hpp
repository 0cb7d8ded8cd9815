#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flan/params.hpp"

namespace flan {

inline constexpr std::uint32_t kFormatVersion = 1;

// Deterministic default; pass --timestamp to record wall-clock provenance.
inline constexpr const char* kDefaultTimestamp = "1970-01-01T00:00:00Z";

// Everything needed to reproduce signatures bit-exactly: parameters, the
// drawn coefficient pairs, and the tokenizer settings the index was built
// with.
struct Manifest {
    std::uint32_t format_version = kFormatVersion;
    LshParams params;
    std::vector<RepetitionCoeffs> coefficients;
    std::uint64_t word_count = 0;
    std::string created_at = kDefaultTimestamp;
    bool lowercase = false;
    std::uint64_t min_frequency = 1;

    bool operator==(const Manifest&) const = default;
};

// Validates the parameters and draws the coefficient pairs from the seed.
Manifest make_manifest(const LshParams& params);

// Canonical bytes: key-sorted JSON, two-space indent, trailing newline.
std::string manifest_to_json(const Manifest& manifest);

// Throws ValidationError on malformed JSON or a format_version mismatch.
Manifest manifest_from_json(const std::string& text);

}  // namespace flan
