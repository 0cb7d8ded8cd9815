#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "flan/graph.hpp"
#include "flan/hashing.hpp"
#include "test_util.hpp"

using namespace flan;

namespace {

WordTable table_of(std::initializer_list<std::pair<const char*, std::uint64_t>> items) {
    std::unordered_map<std::string, std::uint64_t> counts;
    for (const auto& [token, freq] : items) counts[token] = freq;
    return WordTable::from_counts(counts);
}

// component memberships as word->component lookups for refinement checks
std::vector<std::uint32_t> component_labels(const std::vector<Component>& components, std::uint32_t n) {
    std::vector<std::uint32_t> label(n, 0);
    for (const auto& c : components) {
        for (auto id : c.members) label[id] = c.id;
    }
    return label;
}

CollisionGraph random_graph(std::mt19937_64& rng, std::uint32_t n, std::uint32_t T) {
    CollisionGraph g;
    std::uniform_int_distribution<std::uint32_t> node(0, n - 1);
    std::uniform_int_distribution<std::uint32_t> weight(1, T);
    for (std::uint32_t e = 0; e < n * 2; ++e) {
        const auto a = node(rng);
        const auto b = node(rng);
        if (a != b) g.edges[CollisionGraph::edge_key(a, b)] = weight(rng);
    }
    return g;
}

}  // namespace

TEST_CASE("accumulate_repetition forms cliques per bucket") {
    CollisionGraph g;
    accumulate_repetition({{42, {0, 1, 2}}}, g);
    CHECK(g.weight(0, 1) == 1);
    CHECK(g.weight(0, 2) == 1);
    CHECK(g.weight(1, 2) == 1);
    CHECK(g.edges.size() == 3);

    // second repetition with the same bucket doubles every weight
    accumulate_repetition({{99, {0, 1, 2}}}, g);
    CHECK(g.weight(0, 1) == 2);
    CHECK(g.weight(1, 2) == 2);

    // singleton buckets contribute nothing
    CollisionGraph h;
    accumulate_repetition({{1, {0, 1}}, {2, {2}}}, h);
    CHECK(h.edges.size() == 1);
    CHECK(h.weight(0, 1) == 1);
}

TEST_CASE("oversized buckets warn but are still processed") {
    CollisionGraph g;
    std::ostringstream diag;
    accumulate_repetition({{7, {0, 1, 2, 3, 4}}}, g, 3, &diag);
    CHECK(g.edges.size() == 10);  // C(5,2)
    CHECK(diag.str().find("warning") != std::string::npos);
}

TEST_CASE("build_graph indexes words and excludes unhashable ones") {
    LshParams params;
    params.seed = 21;
    const auto coeffs = draw_coefficients(params);

    SUBCASE("single word: no edges, present in every repetition") {
        const auto words = table_of({{"amazing", 3}});
        const auto [graph, index] = build_graph(words, params, coeffs);
        CHECK(graph.edges.empty());
        REQUIRE(index.repetitions.size() == params.num_repetitions);
        for (const auto& rep : index.repetitions) {
            CHECK(rep.size() == 1);
            CHECK(rep.bucket(0).size() == 1);
            CHECK(rep.bucket(0)[0] == 0);
        }
    }
    SUBCASE("too-short words appear nowhere") {
        const auto words = table_of({{"ab", 5}, {"amazing", 3}});
        const auto [graph, index] = build_graph(words, params, coeffs);
        CHECK(graph.edges.empty());
        for (const auto& rep : index.repetitions) {
            CHECK(rep.size() == 1);  // only "amazing"
        }
    }
}

TEST_CASE("edge weights follow the measured per-repetition collision rate") {
    // The expected weight of (good, goood) is T*r with r measured by
    // Monte-Carlo; unrelated words collide essentially never.
    LshParams params;
    const auto d1 = substring_digests(slice_word("good", params.charlens));
    const auto d2 = substring_digests(slice_word("goood", params.charlens));
    int hits = 0;
    const int draws = 2000;
    for (int d = 0; d < draws; ++d) {
        LshParams p = params;
        p.num_repetitions = 1;
        p.seed = 50000 + d;
        const auto c = draw_coefficients(p);
        if (*signature_from_digests(d1, 0, p, c[0]) == *signature_from_digests(d2, 0, p, c[0])) ++hits;
    }
    const double r = static_cast<double>(hits) / draws;

    const auto words = table_of({{"good", 10}, {"goood", 2}, {"xyzqw", 1}});
    const auto good = *words.find("good");
    const auto goood = *words.find("goood");
    const auto xyzqw = *words.find("xyzqw");

    double total_weight = 0;
    int xyz_edges = 0;
    const int runs = 200;
    for (int i = 0; i < runs; ++i) {
        LshParams p = params;
        p.seed = 60000 + i;
        const auto [graph, index] = build_graph(words, p, draw_coefficients(p));
        total_weight += graph.weight(good, goood);
        if (graph.weight(good, xyzqw) > 0 || graph.weight(goood, xyzqw) > 0) ++xyz_edges;
    }
    const double mean_rate = total_weight / (runs * params.num_repetitions);
    // 3 sigma of a Binomial(T*runs, r) mean plus measurement slack
    const double sigma = std::sqrt(r * (1 - r) / (runs * params.num_repetitions));
    CHECK(std::abs(mean_rate - r) <= 3 * sigma + 0.02);
    CHECK(xyz_edges <= 2);  // absent in >= 99% of seeded runs
}

TEST_CASE("prune keeps exactly the edges at or above alpha*T") {
    CollisionGraph g;
    g.add_edge(0, 1, 3);
    g.add_edge(1, 2, 1);

    SUBCASE("threshold arithmetic") {
        const auto kept = prune(g, 0.5, 4);
        CHECK(kept.weight(0, 1) == 3);
        CHECK(kept.weight(1, 2) == 0);
        CHECK(kept.edges.size() == 1);
    }
    SUBCASE("alpha 0 keeps the union") { CHECK(prune(g, 0.0, 4) == g); }
    SUBCASE("alpha 1 keeps the intersection") {
        CollisionGraph h;
        h.add_edge(0, 1, 10);
        h.add_edge(1, 2, 9);
        const auto kept = prune(h, 1.0, 10);
        CHECK(kept.weight(0, 1) == 10);
        CHECK(kept.weight(1, 2) == 0);
    }
    SUBCASE("alpha 0.2, T 20 keeps weight-4 edges") {
        CollisionGraph h;
        h.add_edge(0, 1, 4);
        h.add_edge(1, 2, 3);
        const auto kept = prune(h, 0.2, 20);
        CHECK(kept.weight(0, 1) == 4);
        CHECK(kept.weight(1, 2) == 0);
    }
}

TEST_CASE("connected_components elects representatives by frequency then token") {
    SUBCASE("max frequency wins") {
        const auto words = table_of({{"big", 10}, {"bigg", 2}});
        CollisionGraph g;
        g.add_edge(*words.find("big"), *words.find("bigg"), 5);
        const auto components = connected_components(g, words);
        REQUIRE(components.size() == 1);
        CHECK(components[0].representative == *words.find("big"));
        CHECK(components[0].members.size() == 2);
    }
    SUBCASE("frequency ties break lexicographically") {
        const auto words = table_of({{"zeta", 5}, {"beta", 5}});
        CollisionGraph g;
        g.add_edge(0, 1, 5);
        const auto components = connected_components(g, words);
        REQUIRE(components.size() == 1);
        CHECK(words.tokens[components[0].representative] == "beta");
    }
    SUBCASE("chains are transitive") {
        const auto words = table_of({{"aa", 1}, {"bb", 1}, {"cc", 1}});
        CollisionGraph g;
        g.add_edge(0, 1, 1);
        g.add_edge(1, 2, 1);
        const auto components = connected_components(g, words);
        REQUIRE(components.size() == 1);
        CHECK(components[0].members == std::vector<std::uint32_t>{0, 1, 2});
    }
    SUBCASE("isolated words become singletons") {
        const auto words = table_of({{"aa", 1}, {"bb", 1}});
        const auto components = connected_components(CollisionGraph{}, words);
        CHECK(components.size() == 2);
    }
}

TEST_CASE("build_vocabulary maps members to representatives") {
    const auto words = table_of({{"amazing", 9000}, {"amazingg", 3}, {"amazinggg", 1}, {"solo", 1}});
    CollisionGraph g;
    g.add_edge(*words.find("amazing"), *words.find("amazingg"), 9);
    g.add_edge(*words.find("amazing"), *words.find("amazinggg"), 9);
    const auto vocab = build_vocabulary(connected_components(g, words), words);

    const auto rep = *words.find("amazing");
    CHECK(vocab.representative_of[*words.find("amazingg")] == rep);
    CHECK(vocab.representative_of[*words.find("amazinggg")] == rep);
    CHECK(vocab.representative_of[*words.find("solo")] == *words.find("solo"));

    SUBCASE("mapping is idempotent") {
        for (std::uint32_t id = 0; id < words.size(); ++id) {
            CHECK(vocab.representative_of[vocab.representative_of[id]] == vocab.representative_of[id]);
        }
    }
    SUBCASE("every word is in exactly one component") {
        std::size_t total = 0;
        for (const auto& c : vocab.components) total += c.members.size();
        CHECK(total == words.size());
    }
}

TEST_CASE("pruning at higher alpha refines lower-alpha components") {
    std::mt19937_64 rng(99);
    for (int round = 0; round < 20; ++round) {
        const std::uint32_t n = 30;
        const std::uint32_t T = 10;
        const auto g = random_graph(rng, n, T);
        std::unordered_map<std::string, std::uint64_t> counts;
        for (std::uint32_t i = 0; i < n; ++i) counts["w" + std::to_string(i)] = 1 + i;
        const auto words = WordTable::from_counts(counts);

        const auto low = component_labels(connected_components(prune(g, 0.2, T), words), n);
        const auto high_components = connected_components(prune(g, 0.7, T), words);
        for (const auto& c : high_components) {
            for (auto id : c.members) CHECK(low[id] == low[c.members.front()]);
        }
    }
}

TEST_CASE("edge accumulation commutes and weights stay within [1, T]") {
    LshParams params;
    params.seed = 33;
    params.num_repetitions = 8;
    const auto coeffs = draw_coefficients(params);
    std::unordered_map<std::string, std::uint64_t> counts;
    std::mt19937_64 rng(5);
    for (int i = 0; i < 40; ++i) counts[testutil::random_word(rng, 4, 8)] = 1 + (i % 7);
    counts["variantt"] = 3;
    counts["variant"] = 9;
    const auto words = WordTable::from_counts(counts);

    const auto [graph, index] = build_graph(words, params, coeffs);
    for (const auto& [key, w] : graph.edges) {
        CHECK(w >= 1);
        CHECK(w <= params.num_repetitions);
    }

    // merge per-repetition graphs in a shuffled order; result must be equal
    std::vector<CollisionGraph> per_rep(params.num_repetitions);
    for (std::uint32_t rep = 0; rep < params.num_repetitions; ++rep) {
        std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
        for (std::uint32_t id = 0; id < words.size(); ++id) {
            const auto sig = word_signature(words.tokens[id], rep, params, coeffs);
            if (sig) buckets[*sig].push_back(id);
        }
        accumulate_repetition(buckets, per_rep[rep]);
    }
    std::vector<std::size_t> order(per_rep.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    CollisionGraph merged;
    for (auto i : order) merged.merge(per_rep[i]);
    CHECK(merged == graph);
}

TEST_CASE("representatives are invariant under frequency scaling") {
    std::unordered_map<std::string, std::uint64_t> counts{
        {"alpha", 7}, {"alphaa", 3}, {"beta", 5}, {"betaa", 5}, {"gamma", 1}};
    const auto words = WordTable::from_counts(counts);
    CollisionGraph g;
    g.add_edge(*words.find("alpha"), *words.find("alphaa"), 2);
    g.add_edge(*words.find("beta"), *words.find("betaa"), 2);

    const auto base = connected_components(g, words);

    for (auto& [_, f] : counts) f *= 1000;
    const auto scaled_words = WordTable::from_counts(counts);
    const auto scaled = connected_components(g, scaled_words);
    REQUIRE(base.size() == scaled.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(base[i].representative == scaled[i].representative);
    }
}

TEST_CASE("worker count changes nothing") {
    LshParams params;
    params.seed = 77;
    const auto coeffs = draw_coefficients(params);
    std::unordered_map<std::string, std::uint64_t> counts;
    std::mt19937_64 rng(13);
    for (int i = 0; i < 60; ++i) counts[testutil::random_word(rng, 3, 9)] = 1 + (i % 9);
    const auto words = WordTable::from_counts(counts);

    BuildOptions serial;
    serial.workers = 1;
    BuildOptions parallel;
    parallel.workers = 3;
    const auto [g1, i1] = build_graph(words, params, coeffs, serial);
    const auto [g2, i2] = build_graph(words, params, coeffs, parallel);
    CHECK(g1 == g2);
    CHECK(i1 == i2);
}
