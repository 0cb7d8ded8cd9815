#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace flan {

// Indexed vocabulary words with frequencies. Tokens are unique and kept in
// byte-lexicographic order so that ids — and every artifact derived from
// them — do not depend on counting or merge order.
struct WordTable {
    std::vector<std::string> tokens;
    std::vector<std::uint64_t> frequencies;

    std::uint32_t size() const { return static_cast<std::uint32_t>(tokens.size()); }
    bool empty() const { return tokens.empty(); }

    std::optional<std::uint32_t> find(std::string_view token) const;

    // Sorts tokens and assigns dense ids [0, N). Throws ValidationError on
    // tokens containing TAB or newline, or when N would exceed 2^32-1.
    static WordTable from_counts(const std::unordered_map<std::string, std::uint64_t>& counts);

    // Checks ordering, uniqueness and size agreement; used after load.
    void validate() const;

    bool operator==(const WordTable&) const = default;
};

}  // namespace flan
