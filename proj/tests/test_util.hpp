#pragma once

// Shared test helpers: temp dirs, file I/O, and independent oracles
// (reference FNV, n-gram enumeration, Levenshtein, binomial tails). The
// oracles deliberately do not call the library code they check.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace testutil {

class TempDir {
public:
    TempDir() {
        auto base = std::filesystem::temp_directory_path();
        std::random_device rd;
        for (int attempt = 0; attempt < 64; ++attempt) {
            auto candidate = base / ("flan_test_" + std::to_string(rd()));
            std::error_code ec;
            if (std::filesystem::create_directory(candidate, ec)) {
                path_ = candidate;
                return;
            }
        }
        throw std::runtime_error("could not create temp directory");
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Reference FNV-1a 64, written separately from the library's.
inline std::uint64_t reference_fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h = (h ^ c) * 0x100000001b3ull;
    }
    return h;
}

// ASCII-only n-gram enumeration oracle (tests that need multibyte input use
// oracle_ngrams_utf8 below).
inline std::set<std::string> oracle_ngrams(std::string_view word, const std::vector<std::uint32_t>& lens) {
    std::set<std::string> out;
    for (std::uint32_t k : lens) {
        if (k > word.size()) continue;
        for (std::size_t i = 0; i + k <= word.size(); ++i) out.emplace(word.substr(i, k));
    }
    return out;
}

// Codepoint-aware variant; decodes UTF-8 starts by the continuation-byte rule.
inline std::set<std::string> oracle_ngrams_utf8(std::string_view word,
                                                const std::vector<std::uint32_t>& lens) {
    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if ((static_cast<unsigned char>(word[i]) & 0xC0) != 0x80) starts.push_back(i);
    }
    starts.push_back(word.size());
    const std::size_t n = starts.size() - 1;
    std::set<std::string> out;
    for (std::uint32_t k : lens) {
        if (k > n) continue;
        for (std::size_t i = 0; i + k <= n; ++i) {
            out.emplace(word.substr(starts[i], starts[i + k] - starts[i]));
        }
    }
    return out;
}

inline double oracle_jaccard(std::string_view a, std::string_view b,
                             const std::vector<std::uint32_t>& lens) {
    const auto sa = oracle_ngrams_utf8(a, lens);
    const auto sb = oracle_ngrams_utf8(b, lens);
    std::size_t inter = 0;
    for (const auto& s : sa) inter += sb.count(s);
    const std::size_t uni = sa.size() + sb.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

// Classic DP edit distance (deletion, insertion, substitution), byte-level.
inline std::size_t levenshtein(std::string_view a, std::string_view b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

// Exact P[Bin(n, p) >= k] via log-gamma.
inline double binom_tail_ge(int n, double p, int k) {
    if (k <= 0) return 1.0;
    if (k > n) return 0.0;
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    double tail = 0.0;
    for (int i = k; i <= n; ++i) {
        const double log_term = std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) +
                                i * std::log(p) + (n - i) * std::log1p(-p);
        tail += std::exp(log_term);
    }
    return std::min(tail, 1.0);
}

inline std::string random_word(std::mt19937_64& rng, std::size_t min_len, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len_dist(min_len, max_len);
    std::uniform_int_distribution<int> ch(0, 25);
    std::string w;
    const std::size_t len = len_dist(rng);
    for (std::size_t i = 0; i < len; ++i) w.push_back(static_cast<char>('a' + ch(rng)));
    return w;
}

}  // namespace testutil
