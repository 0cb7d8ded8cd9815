#include "flan/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <unordered_map>

#include "flan/errors.hpp"
#include "flan/graph.hpp"
#include "flan/utf8.hpp"

namespace flan {

namespace fs = std::filesystem;

namespace {

std::string control_char_message(char32_t cp) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "U+%04X", static_cast<unsigned>(cp));
    return std::string("control character ") + buf + " in input";
}

// Walks a line as alternating whitespace / token spans. Spans are byte ranges
// of `line`; token spans never contain whitespace.
template <typename SpanFn>
void scan_spans(std::string_view line, SpanFn&& fn) {
    std::size_t pos = 0;
    while (pos < line.size()) {
        const std::size_t start = pos;
        std::size_t probe = pos;
        const char32_t first = utf8::decode_at(line, probe);
        if (utf8::is_control(first)) throw ValidationError(control_char_message(first));
        const bool in_space = utf8::is_space(first);
        pos = probe;
        while (pos < line.size()) {
            probe = pos;
            const char32_t cp = utf8::decode_at(line, probe);
            if (utf8::is_control(cp)) throw ValidationError(control_char_message(cp));
            if (utf8::is_space(cp) != in_space) break;
            pos = probe;
        }
        fn(line.substr(start, pos - start), in_space);
    }
}

std::ifstream open_text_input(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    return in;
}

}  // namespace

std::string ascii_lower(std::string_view token) {
    std::string out(token);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

std::vector<std::string> tokenize(std::string_view line, bool lowercase) {
    std::vector<std::string> tokens;
    scan_spans(line, [&](std::string_view span, bool is_space) {
        if (is_space) return;
        tokens.push_back(lowercase ? ascii_lower(span) : std::string(span));
    });
    return tokens;
}

WordTable count_frequencies(std::istream& corpus, bool lowercase, std::uint64_t min_frequency,
                            CorpusStats* stats) {
    std::unordered_map<std::string, std::uint64_t> counts;
    std::string line;
    std::uint64_t lines = 0;
    std::uint64_t tokens = 0;
    while (std::getline(corpus, line)) {
        ++lines;
        try {
            for (auto& token : tokenize(line, lowercase)) {
                ++tokens;
                ++counts[std::move(token)];
            }
        } catch (const ValidationError& e) {
            throw ValidationError("line " + std::to_string(lines) + ": " + e.what());
        }
    }
    const std::uint64_t distinct = counts.size();
    if (min_frequency > 1) {
        std::erase_if(counts, [&](const auto& kv) { return kv.second < min_frequency; });
    }
    if (stats != nullptr) {
        stats->lines = lines;
        stats->tokens = tokens;
        stats->distinct_tokens = distinct;
        stats->indexed_tokens = counts.size();
    }
    return WordTable::from_counts(counts);
}

std::map<std::uint64_t, std::uint64_t> component_histogram(const Vocabulary& vocabulary) {
    std::map<std::uint64_t, std::uint64_t> histogram;
    for (const auto& component : vocabulary.components) ++histogram[component.members.size()];
    return histogram;
}

CorpusStats index_corpus(const fs::path& input, const IndexOptions& options, const fs::path& out_dir) {
    options.params.validate();

    CorpusStats stats;
    WordTable words;
    {
        auto in = open_text_input(input);
        words = count_frequencies(in, options.lowercase, options.min_frequency, &stats);
    }

    Manifest manifest = make_manifest(options.params);
    manifest.word_count = words.size();
    manifest.created_at = options.created_at;
    manifest.lowercase = options.lowercase;
    manifest.min_frequency = options.min_frequency;

    BuildOptions build;
    build.workers = options.workers;
    build.warn_bucket_size = options.warn_bucket_size;
    build.diagnostics = options.diagnostics;
    auto [graph, buckets] = build_graph(words, options.params, manifest.coefficients, build);
    const CollisionGraph pruned = prune(graph, options.params.alpha, options.params.num_repetitions);
    Vocabulary vocabulary = build_vocabulary(connected_components(pruned, words), words);
    stats.component_size_histogram = component_histogram(vocabulary);

    save_index(manifest, words, vocabulary, buckets, out_dir);
    return stats;
}

NormalizeSummary normalize_corpus(const fs::path& input, const Index& index, const fs::path& output,
                                  const NormalizeOptions& options) {
    auto in = open_text_input(input);
    std::ofstream out(output, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + output.string());

    InferenceOptions infer_options;
    infer_options.inclusive_threshold = options.inclusive_threshold;
    const bool lowercase = index.manifest.lowercase;

    NormalizeSummary summary;
    std::string line;
    bool trailing_newline = true;
    while (std::getline(in, line)) {
        ++summary.lines;
        trailing_newline = !in.eof();
        std::string rendered;
        rendered.reserve(line.size());
        try {
            scan_spans(line, [&](std::string_view span, bool is_space) {
                if (is_space) {
                    rendered.append(span);
                    return;
                }
                ++summary.tokens;
                const std::string key = lowercase ? ascii_lower(span) : std::string(span);
                if (const auto id = index.words.find(key)) {
                    const std::string& rep = index.words.tokens[index.vocabulary.representative_of[*id]];
                    if (rep == span) {
                        ++summary.passed;
                    } else {
                        ++summary.replaced;
                    }
                    rendered.append(rep);
                    return;
                }
                if (options.infer_unseen) {
                    if (const auto match = infer_word(key, index, infer_options)) {
                        const std::string& rep = index.words.tokens[match->representative_id];
                        if (rep == span) {
                            ++summary.passed;
                        } else {
                            ++summary.inferred;
                        }
                        rendered.append(rep);
                        return;
                    }
                }
                ++summary.passed;
                rendered.append(span);
            });
        } catch (const ValidationError& e) {
            throw ValidationError("line " + std::to_string(summary.lines) + ": " + e.what());
        }
        out << rendered;
        if (trailing_newline) out << '\n';
    }
    if (!out) throw IoError("write failed: " + output.string());
    return summary;
}

NormalizeSummary normalize_corpus(const fs::path& input, const fs::path& index_dir,
                                  const fs::path& output, const NormalizeOptions& options) {
    const Index index = load_index(index_dir);
    return normalize_corpus(input, index, output, options);
}

RewriteSummary rewrite_corpus(const fs::path& input, const fs::path& output,
                              const std::function<std::string(std::string_view)>& map_token) {
    auto in = open_text_input(input);
    std::ofstream out(output, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + output.string());

    RewriteSummary summary;
    std::string line;
    bool trailing_newline = true;
    while (std::getline(in, line)) {
        ++summary.lines;
        trailing_newline = !in.eof();
        std::string rendered;
        rendered.reserve(line.size());
        try {
            scan_spans(line, [&](std::string_view span, bool is_space) {
                if (is_space) {
                    rendered.append(span);
                    return;
                }
                ++summary.tokens;
                const std::string mapped = map_token(span);
                if (mapped != span) ++summary.changed;
                rendered.append(mapped);
            });
        } catch (const ValidationError& e) {
            throw ValidationError("line " + std::to_string(summary.lines) + ": " + e.what());
        }
        out << rendered;
        if (trailing_newline) out << '\n';
    }
    if (!out) throw IoError("write failed: " + output.string());
    return summary;
}

ComponentStatsReport component_stats(const Index& index, std::size_t top_k) {
    ComponentStatsReport report;
    report.stats.distinct_tokens = index.words.size();
    report.stats.indexed_tokens = index.words.size();
    report.stats.component_size_histogram = component_histogram(index.vocabulary);

    std::vector<const Component*> order;
    order.reserve(index.vocabulary.components.size());
    for (const auto& c : index.vocabulary.components) order.push_back(&c);
    std::sort(order.begin(), order.end(), [](const Component* a, const Component* b) {
        if (a->members.size() != b->members.size()) return a->members.size() > b->members.size();
        return a->id < b->id;
    });
    const std::size_t take = std::min(top_k, order.size());
    report.top_components.reserve(take);
    for (std::size_t i = 0; i < take; ++i) {
        ComponentInfo info;
        info.id = order[i]->id;
        info.representative = index.words.tokens[order[i]->representative];
        for (std::uint32_t id : order[i]->members) info.members.push_back(index.words.tokens[id]);
        report.top_components.push_back(std::move(info));
    }
    return report;
}

ComponentStatsReport component_stats(const fs::path& index_dir, std::size_t top_k) {
    return component_stats(load_index(index_dir), top_k);
}

}  // namespace flan
