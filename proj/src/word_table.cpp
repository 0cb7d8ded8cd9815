#include "flan/word_table.hpp"

#include <algorithm>
#include <limits>

#include "flan/errors.hpp"

namespace flan {

std::optional<std::uint32_t> WordTable::find(std::string_view token) const {
    const auto it = std::lower_bound(tokens.begin(), tokens.end(), token);
    if (it == tokens.end() || *it != token) return std::nullopt;
    return static_cast<std::uint32_t>(it - tokens.begin());
}

WordTable WordTable::from_counts(const std::unordered_map<std::string, std::uint64_t>& counts) {
    if (counts.size() > std::numeric_limits<std::uint32_t>::max()) {
        throw ValidationError("word table exceeds 2^32-1 tokens");
    }
    WordTable table;
    table.tokens.reserve(counts.size());
    for (const auto& [token, _] : counts) {
        if (token.find('\t') != std::string::npos || token.find('\n') != std::string::npos) {
            throw ValidationError("token contains TAB or newline: " + token);
        }
        table.tokens.push_back(token);
    }
    std::sort(table.tokens.begin(), table.tokens.end());
    table.frequencies.reserve(table.tokens.size());
    for (const auto& token : table.tokens) table.frequencies.push_back(counts.at(token));
    return table;
}

void WordTable::validate() const {
    if (tokens.size() != frequencies.size()) {
        throw ValidationError("word table token/frequency size mismatch");
    }
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (!(tokens[i - 1] < tokens[i])) {
            throw ValidationError("word table tokens not strictly sorted at index " + std::to_string(i));
        }
    }
}

}  // namespace flan
