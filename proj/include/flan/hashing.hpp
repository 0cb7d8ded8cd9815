#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flan/params.hpp"

namespace flan {

// Sentinel for a bin that received no hash value. Universe sizes are capped
// below 2^63, so the sentinel can never collide with a real value.
inline constexpr std::uint64_t kEmptyBin = ~0ull;

// The set S(w) of character n-grams of a word, kept sorted and unique.
using SubstringSet = std::vector<std::string>;

// Per-bin minima over the universe partition; entries are values in [0, U)
// or kEmptyBin.
using BinSignature = std::vector<std::uint64_t>;

enum class BorrowDirection { kLeft, kRight };

std::uint64_t fnv1a64(std::string_view bytes);

// Union over k in charlens of all contiguous k-codepoint substrings of
// `word`. Lengths exceeding the word length contribute nothing; a word
// shorter than every configured length yields the empty set.
SubstringSet slice_word(std::string_view word, const std::vector<std::uint32_t>& charlens);

// ((a * fnv1a64(s) + b) mod P) mod U, evaluated exactly (128-bit product).
std::uint64_t string_to_universe(std::string_view s, const HashCoeffs& coeffs,
                                 std::uint64_t prime, std::uint64_t universe);

// Same affine map applied to a precomputed digest; the hot path digests each
// substring once and reuses it across repetitions.
std::uint64_t affine_universe(std::uint64_t digest, const HashCoeffs& coeffs,
                              std::uint64_t prime, std::uint64_t universe);

// Minimum hash per bin; bin i covers [i*U/m, (i+1)*U/m).
BinSignature bin_minima(const std::vector<std::uint64_t>& hashes, std::uint32_t num_bins,
                        std::uint64_t universe);

// Derandomized coin for densification: parity of
// fnv1a64(seed || rep_index || bin_index), each argument 8-byte little-endian.
BorrowDirection borrow_direction(std::uint64_t seed, std::uint32_t rep_index, std::size_t bin_index);

// Fills every empty bin with the value of the nearest non-empty bin, scanning
// circularly in the coin's direction. Throws ValidationError on an all-empty
// signature (callers route empty substring sets around hashing entirely).
BinSignature densify(BinSignature sig, std::uint32_t rep_index, std::uint64_t seed);

// Densification with an explicit per-bin coin; lets tests enumerate both
// outcomes.
template <typename CoinFn>
BinSignature densify_with(BinSignature sig, CoinFn&& coin);

// Recursive fold o_i = h'(s_i + o_{i-1}) with o_0 = 0; returns o_m.
std::uint64_t fold_signature(const BinSignature& sig, const HashCoeffs& coeffs,
                             std::uint64_t prime, std::uint64_t folded_universe);

// slice -> hash -> bin -> densify -> fold for one repetition. Returns nullopt
// when the substring set is empty (word shorter than every charlens entry).
std::optional<std::uint64_t> word_signature(std::string_view word, std::uint32_t rep_index,
                                            const LshParams& params,
                                            const std::vector<RepetitionCoeffs>& coeffs);

// Exact |S(w1) ∩ S(w2)| / |S(w1) ∪ S(w2)|, the brute-force collision oracle.
struct JaccardRatio {
    std::uint64_t intersection = 0;
    std::uint64_t union_size = 0;

    double value() const { return static_cast<double>(intersection) / static_cast<double>(union_size); }
};

JaccardRatio jaccard_exact(std::string_view w1, std::string_view w2,
                           const std::vector<std::uint32_t>& charlens);

std::vector<std::uint64_t> substring_digests(const SubstringSet& substrings);

// Signature of a word whose substrings were already digested.
std::optional<std::uint64_t> signature_from_digests(const std::vector<std::uint64_t>& digests,
                                                    std::uint32_t rep_index, const LshParams& params,
                                                    const RepetitionCoeffs& rep_coeffs);

namespace detail {
void densify_in_place(BinSignature& sig, const std::vector<BorrowDirection>& coins);
bool all_empty(const BinSignature& sig);
}  // namespace detail

template <typename CoinFn>
BinSignature densify_with(BinSignature sig, CoinFn&& coin) {
    std::vector<BorrowDirection> coins(sig.size());
    for (std::size_t i = 0; i < sig.size(); ++i) coins[i] = coin(i);
    detail::densify_in_place(sig, coins);
    return sig;
}

}  // namespace flan
