#include "flan/hashing.hpp"

#include <algorithm>
#include <array>
#include <cstring>

#include "flan/errors.hpp"
#include "flan/utf8.hpp"

namespace flan {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

SubstringSet slice_word(std::string_view word, const std::vector<std::uint32_t>& charlens) {
    SubstringSet out;
    if (word.empty()) return out;
    const auto offsets = utf8::codepoint_offsets(word);
    const std::size_t n = offsets.size() - 1;  // codepoint count
    for (std::uint32_t k : charlens) {
        if (k > n) continue;
        for (std::size_t i = 0; i + k <= n; ++i) {
            out.emplace_back(word.substr(offsets[i], offsets[i + k] - offsets[i]));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::uint64_t affine_universe(std::uint64_t digest, const HashCoeffs& coeffs,
                              std::uint64_t prime, std::uint64_t universe) {
    const auto wide = static_cast<unsigned __int128>(coeffs.a) * digest + coeffs.b;
    return static_cast<std::uint64_t>(wide % prime) % universe;
}

std::uint64_t string_to_universe(std::string_view s, const HashCoeffs& coeffs,
                                 std::uint64_t prime, std::uint64_t universe) {
    return affine_universe(fnv1a64(s), coeffs, prime, universe);
}

BinSignature bin_minima(const std::vector<std::uint64_t>& hashes, std::uint32_t num_bins,
                        std::uint64_t universe) {
    if (num_bins == 0 || universe % num_bins != 0) {
        throw ValidationError("bin_minima: universe must divide evenly into bins");
    }
    const std::uint64_t width = universe / num_bins;
    BinSignature sig(num_bins, kEmptyBin);
    for (std::uint64_t h : hashes) {
        const std::size_t bin = static_cast<std::size_t>(h / width);
        if (h < sig[bin]) sig[bin] = h;
    }
    return sig;
}

BorrowDirection borrow_direction(std::uint64_t seed, std::uint32_t rep_index, std::size_t bin_index) {
    std::array<char, 24> key{};
    const std::uint64_t rep = rep_index;
    const std::uint64_t bin = bin_index;
    for (int i = 0; i < 8; ++i) {
        key[i] = static_cast<char>((seed >> (8 * i)) & 0xFF);
        key[8 + i] = static_cast<char>((rep >> (8 * i)) & 0xFF);
        key[16 + i] = static_cast<char>((bin >> (8 * i)) & 0xFF);
    }
    const std::uint64_t h = fnv1a64(std::string_view(key.data(), key.size()));
    return (h & 1) == 0 ? BorrowDirection::kLeft : BorrowDirection::kRight;
}

namespace detail {

bool all_empty(const BinSignature& sig) {
    return std::all_of(sig.begin(), sig.end(), [](std::uint64_t v) { return v == kEmptyBin; });
}

void densify_in_place(BinSignature& sig, const std::vector<BorrowDirection>& coins) {
    if (all_empty(sig)) {
        throw ValidationError("densify: all bins empty");
    }
    const std::size_t m = sig.size();
    BinSignature out = sig;
    for (std::size_t i = 0; i < m; ++i) {
        if (sig[i] != kEmptyBin) continue;
        const std::size_t step = coins[i] == BorrowDirection::kLeft ? m - 1 : 1;
        std::size_t j = (i + step) % m;
        while (sig[j] == kEmptyBin) j = (j + step) % m;
        out[i] = sig[j];
    }
    sig = std::move(out);
}

}  // namespace detail

BinSignature densify(BinSignature sig, std::uint32_t rep_index, std::uint64_t seed) {
    std::vector<BorrowDirection> coins(sig.size());
    for (std::size_t i = 0; i < sig.size(); ++i) coins[i] = borrow_direction(seed, rep_index, i);
    detail::densify_in_place(sig, coins);
    return sig;
}

std::uint64_t fold_signature(const BinSignature& sig, const HashCoeffs& coeffs,
                             std::uint64_t prime, std::uint64_t folded_universe) {
    std::uint64_t acc = 0;  // o_0
    for (std::uint64_t s : sig) {
        if (s == kEmptyBin) throw ValidationError("fold_signature: signature not densified");
        const auto wide = static_cast<unsigned __int128>(coeffs.a) * (s + acc) + coeffs.b;
        acc = static_cast<std::uint64_t>(wide % prime) % folded_universe;
    }
    return acc;
}

std::vector<std::uint64_t> substring_digests(const SubstringSet& substrings) {
    std::vector<std::uint64_t> digests;
    digests.reserve(substrings.size());
    for (const auto& s : substrings) digests.push_back(fnv1a64(s));
    std::sort(digests.begin(), digests.end());
    digests.erase(std::unique(digests.begin(), digests.end()), digests.end());
    return digests;
}

std::optional<std::uint64_t> signature_from_digests(const std::vector<std::uint64_t>& digests,
                                                    std::uint32_t rep_index, const LshParams& params,
                                                    const RepetitionCoeffs& rep_coeffs) {
    if (digests.empty()) return std::nullopt;
    std::vector<std::uint64_t> hashes;
    hashes.reserve(digests.size());
    for (std::uint64_t d : digests) {
        hashes.push_back(affine_universe(d, rep_coeffs.substring, params.prime, params.universe_size));
    }
    BinSignature sig = bin_minima(hashes, params.num_bins, params.universe_size);
    sig = densify(std::move(sig), rep_index, params.seed);
    return fold_signature(sig, rep_coeffs.fold, params.prime, params.folded_universe_size);
}

std::optional<std::uint64_t> word_signature(std::string_view word, std::uint32_t rep_index,
                                            const LshParams& params,
                                            const std::vector<RepetitionCoeffs>& coeffs) {
    if (rep_index >= coeffs.size()) {
        throw ValidationError("word_signature: repetition index out of range");
    }
    const SubstringSet substrings = slice_word(word, params.charlens);
    return signature_from_digests(substring_digests(substrings), rep_index, params, coeffs[rep_index]);
}

JaccardRatio jaccard_exact(std::string_view w1, std::string_view w2,
                           const std::vector<std::uint32_t>& charlens) {
    const SubstringSet s1 = slice_word(w1, charlens);
    const SubstringSet s2 = slice_word(w2, charlens);
    if (s1.empty() && s2.empty()) {
        throw ValidationError("jaccard_exact: both substring sets are empty");
    }
    std::size_t inter = 0;
    auto it1 = s1.begin();
    auto it2 = s2.begin();
    while (it1 != s1.end() && it2 != s2.end()) {
        if (*it1 < *it2) {
            ++it1;
        } else if (*it2 < *it1) {
            ++it2;
        } else {
            ++inter;
            ++it1;
            ++it2;
        }
    }
    JaccardRatio r;
    r.intersection = inter;
    r.union_size = s1.size() + s2.size() - inter;
    return r;
}

}  // namespace flan
