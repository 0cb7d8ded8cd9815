#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace flan {

// token -> frequency; the comparison corrector's scoring source.
using Dictionary = std::unordered_map<std::string, std::uint64_t>;

inline constexpr std::string_view kDefaultAlphabet = "abcdefghijklmnopqrstuvwxyz'";

// All strings at edit distance exactly 1 from `word` via deletion, insertion,
// and replacement over `alphabet` (no transposition). Positions are codepoint
// positions; the result is sorted and unique and never contains `word`.
std::vector<std::string> edits1(std::string_view word, std::string_view alphabet = kDefaultAlphabet);

// Dictionary members within max_edits (1 or 2) of `word`, by ascending edit
// distance; exposed for cost accounting and tests.
std::vector<std::string> candidate_corrections(std::string_view word, const Dictionary& dictionary,
                                               int max_edits, std::string_view alphabet = kDefaultAlphabet);

// The plain frequency-argmax corrector: the word itself if known, else the
// highest-frequency dictionary member among edits1, else among edits2 when
// max_edits = 2, else the word unchanged. Frequency ties break
// lexicographically.
std::string correct(const std::string& word, const Dictionary& dictionary, int max_edits,
                    std::string_view alphabet = kDefaultAlphabet);

}  // namespace flan
