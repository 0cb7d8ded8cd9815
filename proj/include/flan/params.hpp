#pragma once

#include <cstdint>
#include <vector>

namespace flan {

// One (a, b) pair of a 2-universal hash h(x) = ((a*x + b) mod P) mod U.
struct HashCoeffs {
    std::uint64_t a = 1;  // drawn from [1, U]
    std::uint64_t b = 0;  // drawn from [0, U-1]

    bool operator==(const HashCoeffs&) const = default;
};

// The two coefficient pairs of one repetition: the substring hash h and the
// signature-folding hash h'.
struct RepetitionCoeffs {
    HashCoeffs substring;
    HashCoeffs fold;

    bool operator==(const RepetitionCoeffs&) const = default;
};

// Every tunable of the algorithm. Defaults follow the reference setting:
// trigram/5-gram/7-gram slicing, 4 bins over a 2^32 universe, prime 2^31-1,
// 20 repetitions, pruning threshold 0.2.
struct LshParams {
    std::vector<std::uint32_t> charlens{3, 5, 7};
    std::uint32_t num_repetitions = 20;                     // T
    double alpha = 0.2;                                     // pruning threshold
    std::uint32_t num_bins = 4;                             // m
    std::uint64_t universe_size = 1ull << 32;               // U (power of two)
    std::uint64_t folded_universe_size = 1ull << 32;        // U' (power of two)
    std::uint64_t prime = (1ull << 31) - 1;                 // P
    std::uint64_t seed = 0;

    // Throws ValidationError when any invariant is broken.
    void validate() const;

    bool operator==(const LshParams&) const = default;
};

// Deterministic coefficient stream: one substring pair and one fold pair per
// repetition, drawn from a splitmix64 sequence over `params.seed`. The drawn
// values are what gets persisted; reproducibility is anchored to the
// manifest, not to this generator.
std::vector<RepetitionCoeffs> draw_coefficients(const LshParams& params);

// splitmix64 step; also used to derive per-trial seeds elsewhere.
std::uint64_t splitmix64(std::uint64_t& state);

// Deterministic Miller-Rabin for 64-bit integers.
bool is_prime_u64(std::uint64_t n);

}  // namespace flan
