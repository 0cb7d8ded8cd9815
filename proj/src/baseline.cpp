#include "flan/baseline.hpp"

#include <algorithm>

#include "flan/errors.hpp"
#include "flan/utf8.hpp"

namespace flan {

namespace {

std::vector<std::string_view> alphabet_chars(std::string_view alphabet) {
    std::vector<std::string_view> chars;
    const auto offsets = utf8::codepoint_offsets(alphabet);
    for (std::size_t i = 0; i + 1 < offsets.size(); ++i) {
        chars.push_back(alphabet.substr(offsets[i], offsets[i + 1] - offsets[i]));
    }
    return chars;
}

void append_edits1(std::string_view word, const std::vector<std::string_view>& alphabet,
                   std::vector<std::string>& out) {
    const auto offsets = utf8::codepoint_offsets(word);
    const std::size_t n = offsets.size() - 1;
    std::string buf;
    for (std::size_t i = 0; i < n; ++i) {
        // deletion of codepoint i
        buf.assign(word.substr(0, offsets[i]));
        buf.append(word.substr(offsets[i + 1]));
        out.push_back(buf);
        // replacement of codepoint i
        const std::string_view original = word.substr(offsets[i], offsets[i + 1] - offsets[i]);
        for (std::string_view c : alphabet) {
            if (c == original) continue;
            buf.assign(word.substr(0, offsets[i]));
            buf.append(c);
            buf.append(word.substr(offsets[i + 1]));
            out.push_back(buf);
        }
    }
    for (std::size_t i = 0; i <= n; ++i) {
        // insertion before codepoint i (or at the end)
        for (std::string_view c : alphabet) {
            buf.assign(word.substr(0, offsets[i]));
            buf.append(c);
            buf.append(word.substr(offsets[i]));
            out.push_back(buf);
        }
    }
}

void sort_unique(std::vector<std::string>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<std::string> edits1(std::string_view word, std::string_view alphabet) {
    if (word.empty()) throw ValidationError("edits1: word must be nonempty");
    std::vector<std::string> out;
    append_edits1(word, alphabet_chars(alphabet), out);
    sort_unique(out);
    // Insertions can reproduce the word only via replacement-with-same, which
    // is skipped; deletions/insertions change the length. Still, keep the
    // exact-distance contract airtight:
    out.erase(std::remove(out.begin(), out.end(), std::string(word)), out.end());
    return out;
}

std::vector<std::string> candidate_corrections(std::string_view word, const Dictionary& dictionary,
                                               int max_edits, std::string_view alphabet) {
    if (max_edits != 1 && max_edits != 2) {
        throw ValidationError("candidate_corrections: max_edits must be 1 or 2");
    }
    std::vector<std::string> hits;
    const auto one = edits1(word, alphabet);
    for (const auto& s : one) {
        if (dictionary.contains(s)) hits.push_back(s);
    }
    if (!hits.empty() || max_edits == 1) {
        sort_unique(hits);
        return hits;
    }
    const auto chars = alphabet_chars(alphabet);
    std::vector<std::string> two;
    for (const auto& e : one) {
        if (e.empty()) continue;
        append_edits1(e, chars, two);
    }
    sort_unique(two);
    for (const auto& s : two) {
        if (s != word && dictionary.contains(s)) hits.push_back(s);
    }
    sort_unique(hits);
    return hits;
}

std::string correct(const std::string& word, const Dictionary& dictionary, int max_edits,
                    std::string_view alphabet) {
    if (dictionary.empty()) throw ValidationError("correct: dictionary must be nonempty");
    if (word.empty() || dictionary.contains(word)) return word;

    const auto hits = candidate_corrections(word, dictionary, max_edits, alphabet);
    if (hits.empty()) return word;
    const std::string* best = &hits.front();
    for (const auto& h : hits) {
        // hits are sorted, so '>' keeps the lexicographically smallest tie.
        if (dictionary.at(h) > dictionary.at(*best)) best = &h;
    }
    return *best;
}

}  // namespace flan
