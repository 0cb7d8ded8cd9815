#include <doctest.h>

#include <map>
#include <sstream>

#include "flan/errors.hpp"
#include "flan/pipeline.hpp"
#include "test_util.hpp"

using namespace flan;

namespace {

const char* kNoisyCorpus =
    "good morning amazing world\n"
    "goood morning amazingg world\n"
    "good mornin amazing amazinggg\n"
    "unfortunately...i stayed good\n"
    "amazing amazing goood world\n";

IndexOptions default_options(std::uint64_t seed = 7) {
    IndexOptions options;
    options.params.seed = seed;
    options.lowercase = true;
    return options;
}

std::uint64_t count_tokens(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::uint64_t n = 0;
    while (std::getline(in, line)) n += tokenize(line, false).size();
    return n;
}

}  // namespace

TEST_CASE("tokenize splits on whitespace and keeps punctuation attached") {
    CHECK(tokenize("Good  morning", true) == std::vector<std::string>{"good", "morning"});
    CHECK(tokenize("", true).empty());
    CHECK(tokenize("unfortunately...i", false) == std::vector<std::string>{"unfortunately...i"});
    CHECK(tokenize("a\tb c", false) == std::vector<std::string>{"a", "b", "c"});
    CHECK_THROWS_AS(tokenize(std::string_view("a\x01", 2), false), ValidationError);
}

TEST_CASE("ascii_lower leaves non-ASCII intact") {
    CHECK(ascii_lower("GoOd") == "good");
    CHECK(ascii_lower("CAF\xc3\x89") == "caf\xc3\x89");  // É untouched
}

TEST_CASE("count_frequencies counts exactly and filters by min frequency") {
    SUBCASE("basic counts") {
        std::istringstream in("a b\na\n");
        CorpusStats stats;
        const auto words = count_frequencies(in, false, 1, &stats);
        CHECK(words.size() == 2);
        CHECK(words.frequencies[*words.find("a")] == 2);
        CHECK(words.frequencies[*words.find("b")] == 1);
        CHECK(stats.lines == 2);
        CHECK(stats.tokens == 3);
        CHECK(stats.distinct_tokens == 2);
    }
    SUBCASE("empty stream") {
        std::istringstream in("");
        CHECK(count_frequencies(in, false).empty());
    }
    SUBCASE("min frequency excludes rare tokens from the table") {
        std::istringstream in("a b a\n");
        CorpusStats stats;
        const auto words = count_frequencies(in, false, 2, &stats);
        CHECK(words.size() == 1);
        CHECK(words.find("a").has_value());
        CHECK(!words.find("b").has_value());
        CHECK(stats.distinct_tokens == 2);
        CHECK(stats.indexed_tokens == 1);
    }
    SUBCASE("control characters report the line") {
        std::istringstream in("fine\nbad\x02token\n");
        CHECK_THROWS_WITH_AS(count_frequencies(in, false), doctest::Contains("line 2"), ValidationError);
    }
}

TEST_CASE("index_corpus is deterministic and alpha=1 refines alpha=0") {
    testutil::TempDir dir;
    testutil::write_file(dir / "corpus.txt", kNoisyCorpus);

    auto run = [&](const char* name, double alpha, std::uint32_t workers) {
        auto options = default_options();
        options.params.alpha = alpha;
        options.workers = workers;
        return index_corpus(dir / "corpus.txt", options, dir / name);
    };

    const auto s1 = run("idx1", 0.2, 1);
    const auto s2 = run("idx2", 0.2, 1);
    const auto s3 = run("idx3", 0.2, 4);
    for (const char* file : {"manifest.json", "vocab.tsv", "buckets.bin"}) {
        CHECK(testutil::read_file(dir / "idx1" / file) == testutil::read_file(dir / "idx2" / file));
        CHECK(testutil::read_file(dir / "idx1" / file) == testutil::read_file(dir / "idx3" / file));
    }
    CHECK(s1 == s2);
    CHECK(s1 == s3);

    const auto union_stats = run("idx_union", 0.0, 1);
    const auto inter_stats = run("idx_inter", 1.0, 1);
    auto component_count = [](const CorpusStats& s) {
        std::uint64_t n = 0;
        for (const auto& [size, count] : s.component_size_histogram) n += count;
        return n;
    };
    CHECK(component_count(inter_stats) >= component_count(union_stats));

    SUBCASE("histogram sizes sum to the indexed token count") {
        std::uint64_t total = 0;
        for (const auto& [size, count] : s1.component_size_histogram) total += size * count;
        CHECK(total == s1.indexed_tokens);
    }
}

TEST_CASE("normalize_corpus rewrites variants and conserves structure") {
    testutil::TempDir dir;
    testutil::write_file(dir / "corpus.txt", kNoisyCorpus);
    const auto options = default_options();
    index_corpus(dir / "corpus.txt", options, dir / "idx");
    const Index index = load_index(dir / "idx");

    const auto summary = normalize_corpus(dir / "corpus.txt", index, dir / "out1.txt");
    const std::string input = testutil::read_file(dir / "corpus.txt");
    const std::string out1 = testutil::read_file(dir / "out1.txt");

    SUBCASE("token conservation and structure") {
        CHECK(count_tokens(out1) == count_tokens(input));
        CHECK(std::count(out1.begin(), out1.end(), '\n') == std::count(input.begin(), input.end(), '\n'));
        CHECK(summary.tokens == count_tokens(input));
        CHECK(summary.replaced + summary.passed + summary.inferred == summary.tokens);
    }
    SUBCASE("vocabulary hits are rewritten everywhere") {
        const auto goood = index.words.find("goood");
        REQUIRE(goood.has_value());
        const auto rep = index.words.tokens[index.vocabulary.representative_of[*goood]];
        if (rep != "goood") CHECK(out1.find("goood") == std::string::npos);
    }
    SUBCASE("normalization is idempotent") {
        normalize_corpus(dir / "out1.txt", index, dir / "out2.txt");
        CHECK(testutil::read_file(dir / "out2.txt") == out1);
    }
    SUBCASE("a representative-only corpus is a fixpoint, bytes included") {
        // out1 consists of representatives; double spacing must survive
        testutil::write_file(dir / "spaced.txt", "good  morning\tamazing\nworld\n");
        index_corpus(dir / "spaced.txt", options, dir / "idx_spaced");
        const auto spaced_summary =
            normalize_corpus(dir / "spaced.txt", load_index(dir / "idx_spaced"), dir / "spaced_out.txt");
        CHECK(testutil::read_file(dir / "spaced_out.txt") == testutil::read_file(dir / "spaced.txt"));
        CHECK(spaced_summary.replaced == 0);
    }
    SUBCASE("no trailing newline is preserved") {
        testutil::write_file(dir / "nonl.txt", "good morning");
        normalize_corpus(dir / "nonl.txt", index, dir / "nonl_out.txt");
        const auto out = testutil::read_file(dir / "nonl_out.txt");
        CHECK(!out.empty());
        CHECK(out.back() != '\n');
    }
}

TEST_CASE("unseen tokens pass through unless inference is enabled") {
    testutil::TempDir dir;
    testutil::write_file(dir / "corpus.txt", kNoisyCorpus);
    index_corpus(dir / "corpus.txt", default_options(), dir / "idx");
    const Index index = load_index(dir / "idx");

    testutil::write_file(dir / "probe.txt", "amazingggggg never-seen\n");

    const auto off = normalize_corpus(dir / "probe.txt", index, dir / "off.txt");
    CHECK(off.inferred == 0);
    CHECK(testutil::read_file(dir / "off.txt") == "amazingggggg never-seen\n");

    NormalizeOptions with_inference;
    with_inference.infer_unseen = true;
    const auto on = normalize_corpus(dir / "probe.txt", index, dir / "on.txt", with_inference);
    CHECK(on.inferred >= 1);  // amazingggggg resolves into the amazing component
    const auto rewritten = testutil::read_file(dir / "on.txt");
    CHECK(rewritten.find("amazing ") == 0);
}

TEST_CASE("component_stats histogram matches a recount from vocab.tsv") {
    testutil::TempDir dir;
    testutil::write_file(dir / "corpus.txt", kNoisyCorpus);
    index_corpus(dir / "corpus.txt", default_options(), dir / "idx");

    const auto report = component_stats(std::filesystem::path(dir / "idx"), 3);

    // independent recount: parse component ids straight out of the TSV
    std::map<std::uint64_t, std::uint64_t> bucket_counts;
    {
        std::istringstream tsv(testutil::read_file(dir / "idx" / "vocab.tsv"));
        std::map<std::string, std::uint64_t> members_per_component;
        std::string line;
        while (std::getline(tsv, line)) {
            const auto last_tab = line.rfind('\t');
            REQUIRE(last_tab != std::string::npos);
            ++members_per_component[line.substr(last_tab + 1)];
        }
        for (const auto& [_, size] : members_per_component) ++bucket_counts[size];
    }
    CHECK(report.stats.component_size_histogram == bucket_counts);

    SUBCASE("top components are sorted largest-first with members") {
        REQUIRE(!report.top_components.empty());
        for (std::size_t i = 1; i < report.top_components.size(); ++i) {
            CHECK(report.top_components[i - 1].members.size() >= report.top_components[i].members.size());
        }
        for (const auto& c : report.top_components) {
            CHECK(std::find(c.members.begin(), c.members.end(), c.representative) != c.members.end());
        }
    }
}

TEST_CASE("singleton-only corpora give a flat histogram") {
    testutil::TempDir dir;
    testutil::write_file(dir / "corpus.txt", "apple banana cherry\n");
    const auto stats = index_corpus(dir / "corpus.txt", default_options(), dir / "idx");
    CHECK(stats.component_size_histogram == std::map<std::uint64_t, std::uint64_t>{{1, 3}});

    testutil::write_file(dir / "pairs.txt", "amazing amazingg banana\n");
    const auto stats2 = index_corpus(dir / "pairs.txt", default_options(), dir / "idx2");
    CHECK(stats2.component_size_histogram == std::map<std::uint64_t, std::uint64_t>{{1, 1}, {2, 1}});
}
