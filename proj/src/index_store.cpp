#include "flan/index_store.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <string>

#include "flan/errors.hpp"

namespace flan {

namespace fs = std::filesystem;

namespace {

constexpr const char* kManifestFile = "manifest.json";
constexpr const char* kVocabFile = "vocab.tsv";
constexpr const char* kBucketsFile = "buckets.bin";

void write_u32_le(std::ostream& out, std::uint32_t v) {
    char bytes[4];
    for (int i = 0; i < 4; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    out.write(bytes, 4);
}

void write_u64_le(std::ostream& out, std::uint64_t v) {
    char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    out.write(bytes, 8);
}

class BinaryReader {
public:
    BinaryReader(std::istream& in, std::string name) : in_(in), name_(std::move(name)) {}

    std::uint32_t u32() { return static_cast<std::uint32_t>(read(4)); }
    std::uint64_t u64() { return read(8); }
    std::size_t offset() const { return offset_; }

    void expect_eof() {
        if (in_.peek() != std::char_traits<char>::eof()) {
            throw ValidationError(name_ + ": trailing bytes at offset " + std::to_string(offset_));
        }
    }

private:
    std::uint64_t read(int n) {
        char bytes[8] = {};
        in_.read(bytes, n);
        if (in_.gcount() != n) {
            throw ValidationError(name_ + ": truncated at offset " + std::to_string(offset_));
        }
        offset_ += static_cast<std::size_t>(n);
        std::uint64_t v = 0;
        for (int i = 0; i < n; ++i) {
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[i])) << (8 * i);
        }
        return v;
    }

    std::istream& in_;
    std::string name_;
    std::size_t offset_ = 0;
};

std::uint64_t parse_u64_field(std::string_view field, const char* what, std::size_t line_no) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw ValidationError(std::string(kVocabFile) + " line " + std::to_string(line_no) +
                              ": malformed " + what + " '" + std::string(field) + "'");
    }
    return value;
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    return out;
}

std::ifstream open_input(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    return in;
}

}  // namespace

void save_index(const Manifest& manifest, const WordTable& words, const Vocabulary& vocabulary,
                const BucketIndex& buckets, const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());

    {
        auto out = open_output(dir / kManifestFile);
        out << manifest_to_json(manifest);
        if (!out) throw IoError("write failed: " + (dir / kManifestFile).string());
    }
    {
        auto out = open_output(dir / kVocabFile);
        for (std::uint32_t id = 0; id < words.size(); ++id) {
            out << words.tokens[id] << '\t' << words.tokens[vocabulary.representative_of[id]] << '\t'
                << words.frequencies[id] << '\t' << vocabulary.component_of[id] << '\n';
        }
        if (!out) throw IoError("write failed: " + (dir / kVocabFile).string());
    }
    {
        auto out = open_output(dir / kBucketsFile);
        for (const auto& rep : buckets.repetitions) {
            write_u64_le(out, rep.size());
            for (std::size_t k = 0; k < rep.size(); ++k) {
                const auto ids = rep.bucket(k);
                write_u64_le(out, rep.signatures[k]);
                write_u32_le(out, static_cast<std::uint32_t>(ids.size()));
                for (std::uint32_t id : ids) write_u32_le(out, id);
            }
        }
        if (!out) throw IoError("write failed: " + (dir / kBucketsFile).string());
    }
}

void save_index(const Index& index, const fs::path& dir) {
    save_index(index.manifest, index.words, index.vocabulary, index.buckets, dir);
}

Index load_index(const fs::path& dir) {
    Index index;

    {
        auto in = open_input(dir / kManifestFile);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        index.manifest = manifest_from_json(text);
    }

    // vocab.tsv: tokens arrive sorted; representatives and components are
    // resolved after the full table is read.
    std::vector<std::string> rep_tokens;
    std::vector<std::uint32_t> component_ids;
    {
        auto in = open_input(dir / kVocabFile);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            std::array<std::string_view, 4> fields;
            std::string_view rest = line;
            for (int f = 0; f < 3; ++f) {
                const auto tab = rest.find('\t');
                if (tab == std::string_view::npos) {
                    throw ValidationError(std::string(kVocabFile) + " line " + std::to_string(line_no) +
                                          ": expected 4 tab-separated fields");
                }
                fields[f] = rest.substr(0, tab);
                rest.remove_prefix(tab + 1);
            }
            if (rest.find('\t') != std::string_view::npos) {
                throw ValidationError(std::string(kVocabFile) + " line " + std::to_string(line_no) +
                                      ": too many fields");
            }
            fields[3] = rest;

            index.words.tokens.emplace_back(fields[0]);
            rep_tokens.emplace_back(fields[1]);
            index.words.frequencies.push_back(parse_u64_field(fields[2], "frequency", line_no));
            component_ids.push_back(
                static_cast<std::uint32_t>(parse_u64_field(fields[3], "component id", line_no)));
        }
        index.words.validate();
    }
    if (index.words.size() != index.manifest.word_count) {
        throw ValidationError(std::string(kVocabFile) + ": row count " + std::to_string(index.words.size()) +
                              " does not match manifest word_count " +
                              std::to_string(index.manifest.word_count));
    }

    const std::uint32_t n = index.words.size();
    index.vocabulary.representative_of.resize(n);
    index.vocabulary.component_of = component_ids;
    std::uint32_t component_count = 0;
    for (std::uint32_t id = 0; id < n; ++id) {
        const auto rep = index.words.find(rep_tokens[id]);
        if (!rep) {
            throw ValidationError(std::string(kVocabFile) + " line " + std::to_string(id + 1) +
                                  ": representative '" + rep_tokens[id] + "' is not an indexed token");
        }
        index.vocabulary.representative_of[id] = *rep;
        component_count = std::max(component_count, component_ids[id] + 1);
    }
    index.vocabulary.components.resize(component_count);
    for (std::uint32_t c = 0; c < component_count; ++c) index.vocabulary.components[c].id = c;
    for (std::uint32_t id = 0; id < n; ++id) {
        auto& component = index.vocabulary.components[component_ids[id]];
        component.members.push_back(id);  // ascending
        component.representative = index.vocabulary.representative_of[id];
    }
    for (const auto& component : index.vocabulary.components) {
        if (component.members.empty()) {
            throw ValidationError(std::string(kVocabFile) + ": component ids are not dense");
        }
    }

    {
        auto in = open_input(dir / kBucketsFile);
        BinaryReader reader(in, kBucketsFile);
        index.buckets.repetitions.resize(index.manifest.params.num_repetitions);
        for (auto& rep : index.buckets.repetitions) {
            const std::uint64_t count = reader.u64();
            std::uint64_t prev_sig = 0;
            for (std::uint64_t e = 0; e < count; ++e) {
                const std::uint64_t signature = reader.u64();
                if (e > 0 && signature <= prev_sig) {
                    throw ValidationError(std::string(kBucketsFile) + ": signatures not ascending at offset " +
                                          std::to_string(reader.offset()));
                }
                prev_sig = signature;
                const std::uint32_t len = reader.u32();
                rep.signatures.push_back(signature);
                std::uint32_t prev_id = 0;
                for (std::uint32_t i = 0; i < len; ++i) {
                    const std::uint32_t id = reader.u32();
                    if (id >= n || (i > 0 && id <= prev_id)) {
                        throw ValidationError(std::string(kBucketsFile) + ": bad word id at offset " +
                                              std::to_string(reader.offset()));
                    }
                    prev_id = id;
                    rep.ids.push_back(id);
                }
                rep.offsets.push_back(static_cast<std::uint32_t>(rep.ids.size()));
            }
        }
        reader.expect_eof();
    }

    return index;
}

}  // namespace flan
