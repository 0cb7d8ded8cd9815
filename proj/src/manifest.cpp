#include "flan/manifest.hpp"

#include <json.hpp>

#include "flan/errors.hpp"

namespace flan {

using nlohmann::json;

Manifest make_manifest(const LshParams& params) {
    Manifest m;
    m.params = params;
    m.coefficients = draw_coefficients(params);
    return m;
}

std::string manifest_to_json(const Manifest& manifest) {
    json doc;
    doc["format_version"] = manifest.format_version;
    doc["created_at"] = manifest.created_at;
    doc["word_count"] = manifest.word_count;
    doc["lowercase"] = manifest.lowercase;
    doc["min_frequency"] = manifest.min_frequency;

    json params;
    params["charlens"] = manifest.params.charlens;
    params["num_repetitions"] = manifest.params.num_repetitions;
    params["alpha"] = manifest.params.alpha;
    params["num_bins"] = manifest.params.num_bins;
    params["universe_size"] = manifest.params.universe_size;
    params["folded_universe_size"] = manifest.params.folded_universe_size;
    params["prime"] = manifest.params.prime;
    params["seed"] = manifest.params.seed;
    doc["params"] = params;

    json coeffs = json::array();
    for (std::size_t rep = 0; rep < manifest.coefficients.size(); ++rep) {
        const auto& c = manifest.coefficients[rep];
        json entry;
        entry["repetition"] = rep;
        entry["substring"] = {{"a", c.substring.a}, {"b", c.substring.b}};
        entry["fold"] = {{"a", c.fold.a}, {"b", c.fold.b}};
        coeffs.push_back(entry);
    }
    doc["coefficients"] = coeffs;

    return doc.dump(2) + "\n";
}

namespace {

template <typename T>
T require(const json& doc, const char* key) {
    if (!doc.contains(key)) {
        throw ValidationError(std::string("manifest: missing key '") + key + "'");
    }
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("manifest: bad value for '") + key + "': " + e.what());
    }
}

}  // namespace

Manifest manifest_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("manifest: invalid JSON: ") + e.what());
    }

    Manifest m;
    m.format_version = require<std::uint32_t>(doc, "format_version");
    if (m.format_version != kFormatVersion) {
        throw ValidationError("manifest: unsupported format_version " + std::to_string(m.format_version));
    }
    m.created_at = require<std::string>(doc, "created_at");
    m.word_count = require<std::uint64_t>(doc, "word_count");
    m.lowercase = require<bool>(doc, "lowercase");
    m.min_frequency = require<std::uint64_t>(doc, "min_frequency");

    if (!doc.contains("params")) throw ValidationError("manifest: missing key 'params'");
    const json& params = doc.at("params");
    m.params.charlens = require<std::vector<std::uint32_t>>(params, "charlens");
    m.params.num_repetitions = require<std::uint32_t>(params, "num_repetitions");
    m.params.alpha = require<double>(params, "alpha");
    m.params.num_bins = require<std::uint32_t>(params, "num_bins");
    m.params.universe_size = require<std::uint64_t>(params, "universe_size");
    m.params.folded_universe_size = require<std::uint64_t>(params, "folded_universe_size");
    m.params.prime = require<std::uint64_t>(params, "prime");
    m.params.seed = require<std::uint64_t>(params, "seed");
    m.params.validate();

    if (!doc.contains("coefficients")) throw ValidationError("manifest: missing key 'coefficients'");
    const json& coeffs = doc.at("coefficients");
    if (!coeffs.is_array() || coeffs.size() != m.params.num_repetitions) {
        throw ValidationError("manifest: coefficient array does not match num_repetitions");
    }
    m.coefficients.resize(coeffs.size());
    for (std::size_t rep = 0; rep < coeffs.size(); ++rep) {
        const json& entry = coeffs[rep];
        if (require<std::size_t>(entry, "repetition") != rep) {
            throw ValidationError("manifest: coefficient entries out of order");
        }
        const json& sub = entry.at("substring");
        const json& fold = entry.at("fold");
        m.coefficients[rep].substring = {require<std::uint64_t>(sub, "a"), require<std::uint64_t>(sub, "b")};
        m.coefficients[rep].fold = {require<std::uint64_t>(fold, "a"), require<std::uint64_t>(fold, "b")};
    }
    return m;
}

}  // namespace flan
