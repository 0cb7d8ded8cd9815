// flan: unsupervised lexical normalization via repeated MinHash signatures,
// collision-graph pruning, and frequency-elected representatives.
//
// Subcommands: index, normalize, infer, stats, bounds, baseline, bench.
// Reports go to stdout as key-sorted JSON; diagnostics go to stderr.
// Exit codes: 0 success, 1 validation, 2 I/O, 3 internal.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "flan/baseline.hpp"
#include "flan/bounds.hpp"
#include "flan/errors.hpp"
#include "flan/graph.hpp"
#include "flan/index_store.hpp"
#include "flan/inference.hpp"
#include "flan/pipeline.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitInternal = 3;

struct ParamFlags {
    std::vector<std::uint32_t> charlens{3, 5, 7};
    std::uint32_t repetitions = 20;
    double alpha = 0.2;
    std::uint32_t bins = 4;
    std::uint64_t universe = 1ull << 32;
    std::uint64_t folded_universe = 1ull << 32;
    std::uint64_t prime = (1ull << 31) - 1;
    std::uint64_t seed = 0;

    flan::LshParams to_params() const {
        flan::LshParams p;
        p.charlens = charlens;
        p.num_repetitions = repetitions;
        p.alpha = alpha;
        p.num_bins = bins;
        p.universe_size = universe;
        p.folded_universe_size = folded_universe;
        p.prime = prime;
        p.seed = seed;
        return p;
    }
};

void add_param_flags(CLI::App* cmd, ParamFlags& flags) {
    cmd->add_option("--charlens", flags.charlens, "Character n-gram lengths (comma separated)")
        ->delimiter(',');
    cmd->add_option("--repetitions", flags.repetitions, "Number of hashing repetitions T");
    cmd->add_option("--alpha", flags.alpha, "Edge pruning threshold in [0,1]");
    cmd->add_option("--bins", flags.bins, "Number of universe bins m");
    cmd->add_option("--universe", flags.universe, "Universe size U (power of two)");
    cmd->add_option("--folded-universe", flags.folded_universe, "Folded universe size U' (power of two)");
    cmd->add_option("--prime", flags.prime, "Modulus P of the 2-universal hash");
    cmd->add_option("--seed", flags.seed, "Seed for coefficient draws");
}

json params_to_json(const flan::LshParams& p) {
    return json{{"charlens", p.charlens},
                {"num_repetitions", p.num_repetitions},
                {"alpha", p.alpha},
                {"num_bins", p.num_bins},
                {"universe_size", p.universe_size},
                {"folded_universe_size", p.folded_universe_size},
                {"prime", p.prime},
                {"seed", p.seed}};
}

json histogram_to_json(const std::map<std::uint64_t, std::uint64_t>& histogram) {
    json out = json::object();
    for (const auto& [size, count] : histogram) out[std::to_string(size)] = count;
    return out;
}

void emit(const json& report) { std::cout << report.dump(2) << "\n"; }

std::string timestamp_value(const std::string& flag) {
    if (flag.empty()) return flan::kDefaultTimestamp;
    if (flag != "now") return flag;
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

flan::Dictionary read_dictionary_tsv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw flan::IoError("cannot open for reading: " + path);
    flan::Dictionary dict;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw flan::ValidationError(path + " line " + std::to_string(line_no) +
                                        ": expected token<TAB>frequency");
        }
        try {
            dict[line.substr(0, tab)] = std::stoull(line.substr(tab + 1));
        } catch (const std::exception&) {
            throw flan::ValidationError(path + " line " + std::to_string(line_no) + ": bad frequency");
        }
    }
    return dict;
}

// --- index ---------------------------------------------------------------

int run_index(const ParamFlags& flags, const std::string& input, const std::string& out_dir,
              bool lowercase, std::uint64_t min_freq, std::uint32_t workers,
              std::uint32_t warn_bucket_size, const std::string& timestamp) {
    flan::IndexOptions options;
    options.params = flags.to_params();
    options.lowercase = lowercase;
    options.min_frequency = min_freq;
    options.workers = workers;
    options.warn_bucket_size = warn_bucket_size;
    options.created_at = timestamp_value(timestamp);
    options.diagnostics = &std::cerr;

    const auto stats = flan::index_corpus(input, options, out_dir);

    json report;
    report["config"] = {{"command", "index"},
                        {"input", input},
                        {"out", out_dir},
                        {"lowercase", lowercase},
                        {"min_frequency", min_freq},
                        {"workers", workers},
                        {"warn_bucket_size", warn_bucket_size},
                        {"created_at", options.created_at},
                        {"params", params_to_json(options.params)}};
    report["stats"] = {{"lines", stats.lines},
                       {"tokens", stats.tokens},
                       {"distinct_tokens", stats.distinct_tokens},
                       {"indexed_tokens", stats.indexed_tokens},
                       {"component_size_histogram", histogram_to_json(stats.component_size_histogram)}};
    emit(report);
    return kExitOk;
}

// --- normalize -----------------------------------------------------------

int run_normalize(const std::string& index_dir, const std::string& input, const std::string& output,
                  bool infer_unseen, bool inclusive, std::uint32_t workers) {
    flan::NormalizeOptions options;
    options.infer_unseen = infer_unseen;
    options.inclusive_threshold = inclusive;
    options.workers = workers;
    const auto summary = flan::normalize_corpus(input, std::filesystem::path(index_dir), output, options);

    json report;
    report["config"] = {{"command", "normalize"},         {"index", index_dir},
                        {"input", input},                 {"output", output},
                        {"infer_unseen", infer_unseen},   {"inference_threshold_inclusive", inclusive},
                        {"workers", workers}};
    report["summary"] = {{"lines", summary.lines},
                         {"tokens", summary.tokens},
                         {"replaced", summary.replaced},
                         {"passed", summary.passed},
                         {"inferred", summary.inferred}};
    emit(report);
    return kExitOk;
}

// --- infer ---------------------------------------------------------------

int run_infer(const std::string& index_dir, std::vector<std::string> words, const std::string& words_file,
              bool inclusive, std::uint32_t workers) {
    if (!words_file.empty()) {
        std::ifstream in(words_file, std::ios::binary);
        if (!in) throw flan::IoError("cannot open for reading: " + words_file);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty()) words.push_back(line);
        }
    }
    const flan::Index index = flan::load_index(index_dir);
    flan::InferenceOptions options;
    options.inclusive_threshold = inclusive;
    options.workers = workers;
    const auto results = flan::infer_batch(words, index, options);

    json rows = json::array();
    for (std::size_t i = 0; i < words.size(); ++i) {
        json row;
        row["word"] = words[i];
        if (results[i]) {
            row["matched"] = index.words.tokens[results[i]->matched_id];
            row["weight"] = results[i]->weight;
            row["representative"] = index.words.tokens[results[i]->representative_id];
        } else {
            row["matched"] = nullptr;
        }
        rows.push_back(row);
    }
    json report;
    report["config"] = {{"command", "infer"},
                        {"index", index_dir},
                        {"inference_threshold_inclusive", inclusive},
                        {"workers", workers}};
    report["results"] = rows;
    emit(report);
    return kExitOk;
}

// --- stats ---------------------------------------------------------------

int run_stats(const std::string& index_dir, std::size_t top_k) {
    const auto report_data = flan::component_stats(std::filesystem::path(index_dir), top_k);

    json top = json::array();
    for (const auto& c : report_data.top_components) {
        top.push_back({{"id", c.id},
                       {"representative", c.representative},
                       {"size", c.members.size()},
                       {"members", c.members}});
    }
    json report;
    report["config"] = {{"command", "stats"}, {"index", index_dir}, {"top", top_k}};
    report["component_size_histogram"] = histogram_to_json(report_data.stats.component_size_histogram);
    report["indexed_tokens"] = report_data.stats.indexed_tokens;
    report["top_components"] = top;
    emit(report);
    return kExitOk;
}

// --- bounds --------------------------------------------------------------

json tail_bound_json(const flan::TailBound& b) {
    return json{{"value", b.value}, {"delta", b.delta}, {"delta_in_range", b.delta_in_range}};
}

int run_bounds(double p, double q, double alpha, std::uint32_t repetitions, std::uint32_t trials,
               const std::vector<std::uint32_t>& cluster_sizes, std::uint64_t seed,
               std::uint32_t workers) {
    flan::EdgeModelParams model;
    model.p = p;
    model.q = q;
    model.alpha = alpha;
    model.num_repetitions = repetitions;
    model.trials = trials;
    model.cluster_sizes = cluster_sizes;
    model.seed = seed;
    model.workers = workers;

    const auto sim = flan::simulate_edge_model(model);

    // Per-node envelopes: FP is the union bound over the other clusters,
    // FN depends on the node's own cluster; both maximized over clusters so
    // they upper-bound every node's rate.
    json closed = json::object();
    double fp_envelope = 0.0;
    bool fp_available = true;
    std::string fp_note;
    try {
        json per_cluster = json::array();
        double max_union = 0.0;
        for (std::size_t k = 0; k < cluster_sizes.size(); ++k) {
            double union_bound = 0.0;
            for (std::size_t c = 0; c < cluster_sizes.size(); ++c) {
                if (c == k) continue;
                union_bound += flan::fp_bound(repetitions, q, alpha, cluster_sizes[c]).value;
            }
            per_cluster.push_back(union_bound);
            max_union = std::max(max_union, union_bound);
        }
        const auto representative = flan::fp_bound(repetitions, q, alpha, cluster_sizes.front());
        closed["fp"] = tail_bound_json(representative);
        closed["fp_union_per_cluster"] = per_cluster;
        fp_envelope = max_union;
    } catch (const flan::ValidationError& e) {
        closed["fp"] = nullptr;
        fp_available = false;
        fp_note = e.what();
    }

    double fn_envelope = 0.0;
    bool fn_available = true;
    std::string fn_note;
    try {
        double max_bound = 0.0;
        for (std::uint32_t size : cluster_sizes) {
            if (size < 2) continue;
            max_bound = std::max(max_bound, flan::fn_bound(repetitions, p, alpha, size).value);
        }
        closed["fn"] = tail_bound_json(flan::fn_bound(repetitions, p, alpha, cluster_sizes.front()));
        fn_envelope = max_bound;
    } catch (const flan::ValidationError& e) {
        closed["fn"] = nullptr;
        fn_available = false;
        fn_note = e.what();
    }

    json report;
    report["config"] = {{"command", "bounds"},
                        {"p", p},
                        {"q", q},
                        {"alpha", alpha},
                        {"repetitions", repetitions},
                        {"trials", trials},
                        {"cluster_sizes", cluster_sizes},
                        {"seed", seed},
                        {"workers", workers}};
    report["closed_form"] = closed;
    report["empirical"] = {{"fp_rate", sim.fp_rate},     {"fn_rate", sim.fn_rate},
                           {"fp_events", sim.fp_events}, {"fn_events", sim.fn_events},
                           {"fp_samples", sim.fp_samples}, {"fn_samples", sim.fn_samples},
                           {"fp_stderr", sim.fp_stderr}, {"fn_stderr", sim.fn_stderr}};
    json envelope;
    if (fp_available) {
        envelope["fp_bound"] = fp_envelope;
        envelope["fp_within_bound"] = sim.fp_rate <= fp_envelope + 3.0 * sim.fp_stderr;
    } else {
        envelope["fp_bound"] = nullptr;
        envelope["fp_note"] = fp_note;
    }
    if (fn_available) {
        envelope["fn_bound"] = fn_envelope;
        envelope["fn_within_bound"] = sim.fn_rate <= fn_envelope + 3.0 * sim.fn_stderr;
    } else {
        envelope["fn_bound"] = nullptr;
        envelope["fn_note"] = fn_note;
    }
    report["envelope"] = envelope;
    emit(report);
    return kExitOk;
}

// --- baseline ------------------------------------------------------------

int run_baseline(const std::string& index_dir, const std::string& dict_path, const std::string& input,
                 const std::string& output, int max_edits, const std::string& alphabet, bool lowercase) {
    flan::Dictionary dict;
    if (!index_dir.empty()) {
        const flan::Index index = flan::load_index(index_dir);
        for (std::uint32_t id = 0; id < index.words.size(); ++id) {
            dict[index.words.tokens[id]] = index.words.frequencies[id];
        }
        lowercase = lowercase || index.manifest.lowercase;
    } else {
        dict = read_dictionary_tsv(dict_path);
    }
    if (dict.empty()) throw flan::ValidationError("baseline: dictionary is empty");

    const auto summary = flan::rewrite_corpus(input, output, [&](std::string_view token) {
        const std::string key = lowercase ? flan::ascii_lower(token) : std::string(token);
        return flan::correct(key, dict, max_edits, alphabet);
    });

    json report;
    report["config"] = {{"command", "baseline"}, {"index", index_dir},   {"dict", dict_path},
                        {"input", input},        {"output", output},     {"max_edits", max_edits},
                        {"alphabet", alphabet},  {"lowercase", lowercase}};
    report["summary"] = {{"lines", summary.lines}, {"tokens", summary.tokens}, {"changed", summary.changed}};
    emit(report);
    return kExitOk;
}

// --- bench ---------------------------------------------------------------

flan::WordTable synthetic_table(std::uint64_t n, std::uint64_t seed) {
    std::unordered_map<std::string, std::uint64_t> counts;
    counts.reserve(n * 2);
    std::uint64_t state = seed;
    while (counts.size() < n) {
        const std::uint64_t r = flan::splitmix64(state);
        const std::size_t len = 5 + (r % 8);
        std::string word;
        word.reserve(len);
        std::uint64_t bits = flan::splitmix64(state);
        for (std::size_t i = 0; i < len; ++i) {
            word.push_back(static_cast<char>('a' + (bits % 26)));
            bits /= 26;
            if (bits < 26) bits = flan::splitmix64(state);
        }
        counts.emplace(std::move(word), 1 + (r >> 32) % 100);
    }
    return flan::WordTable::from_counts(counts);
}

double time_indexing(const flan::WordTable& words, const flan::LshParams& params,
                     std::uint32_t workers, int samples) {
    const auto coeffs = flan::draw_coefficients(params);
    std::vector<double> times;
    for (int s = 0; s < samples; ++s) {
        const auto start = std::chrono::steady_clock::now();
        flan::BuildOptions options;
        options.workers = workers;
        auto [graph, buckets] = flan::build_graph(words, params, coeffs, options);
        const auto pruned = flan::prune(graph, params.alpha, params.num_repetitions);
        const auto vocab = flan::build_vocabulary(flan::connected_components(pruned, words), words);
        const auto end = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double>(end - start).count());
        if (vocab.components.empty() && !words.empty()) throw flan::ValidationError("bench: empty vocabulary");
    }
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
}

int run_bench(const std::vector<std::uint64_t>& sizes, const std::vector<std::uint32_t>& repetitions,
              const std::vector<std::uint32_t>& workers, std::uint64_t seed, int samples) {
    struct Cell {
        std::uint64_t n;
        std::uint32_t t;
        std::uint32_t w;
        double seconds;
    };
    std::vector<Cell> cells;
    for (std::uint64_t n : sizes) {
        const auto words = synthetic_table(n, seed);
        for (std::uint32_t t : repetitions) {
            flan::LshParams params;
            params.num_repetitions = t;
            params.seed = seed;
            for (std::uint32_t w : workers) {
                cells.push_back({n, t, w, time_indexing(words, params, w, samples)});
                std::cerr << "bench: N=" << n << " T=" << t << " workers=" << w << " -> "
                          << cells.back().seconds << "s\n";
            }
        }
    }

    json rows = json::array();
    for (const auto& c : cells) {
        rows.push_back({{"N", c.n}, {"T", c.t}, {"workers", c.w}, {"index_seconds", c.seconds}});
    }

    auto ratio_rows = [&](auto&& matches_pair) {
        json out = json::array();
        for (const auto& a : cells) {
            for (const auto& b : cells) {
                if (!matches_pair(a, b)) continue;
                const double ratio = b.seconds / a.seconds;
                out.push_back({{"from", {{"N", a.n}, {"T", a.t}, {"workers", a.w}}},
                               {"to", {{"N", b.n}, {"T", b.t}, {"workers", b.w}}},
                               {"ratio", ratio},
                               {"near_linear", ratio >= 1.6 && ratio <= 2.6}});
            }
        }
        return out;
    };
    json scaling;
    scaling["doubling_n"] = ratio_rows(
        [](const Cell& a, const Cell& b) { return b.n == 2 * a.n && a.t == b.t && a.w == b.w; });
    scaling["doubling_t"] = ratio_rows(
        [](const Cell& a, const Cell& b) { return b.t == 2 * a.t && a.n == b.n && a.w == b.w; });

    json report;
    report["config"] = {{"command", "bench"}, {"sizes", sizes},   {"repetitions", repetitions},
                        {"workers", workers}, {"seed", seed},     {"samples", samples}};
    report["cells"] = rows;
    report["scaling"] = scaling;
    emit(report);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lexical normalization via repeated MinHash signatures and collision-graph pruning"};
    app.require_subcommand(1);

    // index
    auto* index_cmd = app.add_subcommand("index", "Build an index from a corpus");
    ParamFlags index_params;
    std::string index_input, index_out, index_timestamp;
    bool index_lowercase = false;
    std::uint64_t index_min_freq = 1;
    std::uint32_t index_workers = 1, index_warn = 10000;
    index_cmd->add_option("--input", index_input, "Input corpus (UTF-8, one document per line)")->required();
    index_cmd->add_option("--out", index_out, "Output index directory")->required();
    add_param_flags(index_cmd, index_params);
    index_cmd->add_flag("--lowercase", index_lowercase, "ASCII-lowercase tokens");
    index_cmd->add_option("--min-freq", index_min_freq, "Minimum frequency for indexing");
    index_cmd->add_option("--workers", index_workers, "Worker threads");
    index_cmd->add_option("--warn-bucket-size", index_warn, "Bucket size diagnostic threshold");
    index_cmd->add_option("--timestamp", index_timestamp,
                          "Manifest created_at: explicit value or 'now' (default: fixed epoch)");

    // normalize
    auto* normalize_cmd = app.add_subcommand("normalize", "Rewrite a corpus using an index");
    std::string norm_index, norm_input, norm_output;
    bool norm_infer = false, norm_inclusive = false;
    std::uint32_t norm_workers = 1;
    normalize_cmd->add_option("--index", norm_index, "Index directory")->required();
    normalize_cmd->add_option("--input", norm_input, "Input corpus")->required();
    normalize_cmd->add_option("--output", norm_output, "Output corpus")->required();
    normalize_cmd->add_flag("--infer-unseen", norm_infer, "Infer matches for unseen tokens");
    normalize_cmd->add_flag("--inference-threshold-inclusive", norm_inclusive,
                            "Use weight >= alpha*T at inference instead of strict >");
    normalize_cmd->add_option("--workers", norm_workers, "Worker threads");

    // infer
    auto* infer_cmd = app.add_subcommand("infer", "Map words onto the indexed vocabulary");
    std::string infer_index, infer_file;
    std::vector<std::string> infer_words;
    bool infer_inclusive = false;
    std::uint32_t infer_workers = 1;
    infer_cmd->add_option("--index", infer_index, "Index directory")->required();
    infer_cmd->add_option("--word", infer_words, "Word to infer (repeatable)");
    infer_cmd->add_option("--input", infer_file, "File of words, one per line");
    infer_cmd->add_flag("--inference-threshold-inclusive", infer_inclusive,
                        "Use weight >= alpha*T instead of strict >");
    infer_cmd->add_option("--workers", infer_workers, "Worker threads");

    // stats
    auto* stats_cmd = app.add_subcommand("stats", "Component statistics of an index");
    std::string stats_index;
    std::size_t stats_top = 10;
    stats_cmd->add_option("--index", stats_index, "Index directory")->required();
    stats_cmd->add_option("--top", stats_top, "Number of largest components to list");

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate and simulate the error bounds");
    double bounds_p = 0.9, bounds_q = 0.1, bounds_alpha = 0.5;
    std::uint32_t bounds_T = 20, bounds_trials = 1000, bounds_workers = 1;
    std::vector<std::uint32_t> bounds_clusters{5, 5};
    std::uint64_t bounds_seed = 0;
    bounds_cmd->add_option("--p", bounds_p, "Intra-cluster per-repetition collision probability");
    bounds_cmd->add_option("--q", bounds_q, "Inter-cluster per-repetition collision probability");
    bounds_cmd->add_option("--alpha", bounds_alpha, "Pruning threshold");
    bounds_cmd->add_option("--T,--repetitions", bounds_T, "Number of repetitions");
    bounds_cmd->add_option("--trials", bounds_trials, "Monte-Carlo trials");
    bounds_cmd->add_option("--cluster-sizes", bounds_clusters, "Cluster sizes (comma separated)")
        ->delimiter(',');
    bounds_cmd->add_option("--seed", bounds_seed, "Simulation seed");
    bounds_cmd->add_option("--workers", bounds_workers, "Worker threads");

    // baseline
    auto* baseline_cmd = app.add_subcommand("baseline", "Edit-distance spell corrector over a corpus");
    std::string base_index, base_dict, base_input, base_output, base_alphabet{flan::kDefaultAlphabet};
    int base_max_edits = 2;
    bool base_lowercase = false;
    baseline_cmd->add_option("--index", base_index, "Index directory to use as the dictionary");
    baseline_cmd->add_option("--dict", base_dict, "token<TAB>frequency dictionary file");
    baseline_cmd->add_option("--input", base_input, "Input corpus")->required();
    baseline_cmd->add_option("--output", base_output, "Output corpus")->required();
    baseline_cmd->add_option("--max-edits", base_max_edits, "Edit budget (1 or 2)")
        ->check(CLI::IsMember({1, 2}));
    baseline_cmd->add_option("--alphabet", base_alphabet, "Insertion/replacement alphabet");
    baseline_cmd->add_flag("--lowercase", base_lowercase, "ASCII-lowercase tokens before lookup");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Scaling benchmark on synthetic corpora");
    std::vector<std::uint64_t> bench_sizes{100000, 200000};
    std::vector<std::uint32_t> bench_reps{20, 40};
    std::vector<std::uint32_t> bench_workers{1};
    std::uint64_t bench_seed = 7;
    int bench_samples = 3;
    bench_cmd->add_option("--sizes", bench_sizes, "Distinct-word counts (comma separated)")->delimiter(',');
    bench_cmd->add_option("--repetitions", bench_reps, "Repetition counts (comma separated)")
        ->delimiter(',');
    bench_cmd->add_option("--workers", bench_workers, "Worker counts (comma separated)")->delimiter(',');
    bench_cmd->add_option("--seed", bench_seed, "Corpus and coefficient seed");
    bench_cmd->add_option("--samples", bench_samples, "Timing samples per cell (median reported)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (index_cmd->parsed()) {
            return run_index(index_params, index_input, index_out, index_lowercase, index_min_freq,
                             index_workers, index_warn, index_timestamp);
        }
        if (normalize_cmd->parsed()) {
            return run_normalize(norm_index, norm_input, norm_output, norm_infer, norm_inclusive,
                                 norm_workers);
        }
        if (infer_cmd->parsed()) {
            return run_infer(infer_index, infer_words, infer_file, infer_inclusive, infer_workers);
        }
        if (stats_cmd->parsed()) return run_stats(stats_index, stats_top);
        if (bounds_cmd->parsed()) {
            return run_bounds(bounds_p, bounds_q, bounds_alpha, bounds_T, bounds_trials, bounds_clusters,
                              bounds_seed, bounds_workers);
        }
        if (baseline_cmd->parsed()) {
            if (base_index.empty() == base_dict.empty()) {
                throw flan::ValidationError("baseline: provide exactly one of --index or --dict");
            }
            return run_baseline(base_index, base_dict, base_input, base_output, base_max_edits,
                                base_alphabet, base_lowercase);
        }
        if (bench_cmd->parsed()) {
            return run_bench(bench_sizes, bench_reps, bench_workers, bench_seed, bench_samples);
        }
    } catch (const flan::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const flan::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
