#include "flan/utf8.hpp"

namespace flan::utf8 {

namespace {

inline bool is_continuation(unsigned char b) { return (b & 0xC0u) == 0x80u; }

}  // namespace

std::vector<std::size_t> codepoint_offsets(std::string_view text) {
    std::vector<std::size_t> offsets;
    offsets.reserve(text.size() + 1);
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (!is_continuation(static_cast<unsigned char>(text[i]))) {
            offsets.push_back(i);
        }
    }
    offsets.push_back(text.size());
    return offsets;
}

std::size_t codepoint_count(std::string_view text) {
    std::size_t n = 0;
    for (char c : text) {
        if (!is_continuation(static_cast<unsigned char>(c))) ++n;
    }
    return n;
}

char32_t decode_at(std::string_view text, std::size_t& pos) {
    const auto b0 = static_cast<unsigned char>(text[pos]);
    if (b0 < 0x80u) {
        ++pos;
        return b0;
    }
    std::size_t len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0u) == 0xC0u) {
        len = 2;
        cp = b0 & 0x1Fu;
    } else if ((b0 & 0xF0u) == 0xE0u) {
        len = 3;
        cp = b0 & 0x0Fu;
    } else if ((b0 & 0xF8u) == 0xF0u) {
        len = 4;
        cp = b0 & 0x07u;
    } else {
        ++pos;
        return 0xFFFD;
    }
    if (pos + len > text.size()) {
        ++pos;
        return 0xFFFD;
    }
    for (std::size_t i = 1; i < len; ++i) {
        const auto b = static_cast<unsigned char>(text[pos + i]);
        if (!is_continuation(b)) {
            ++pos;
            return 0xFFFD;
        }
        cp = (cp << 6) | (b & 0x3Fu);
    }
    pos += len;
    return cp;
}

bool is_space(char32_t cp) {
    switch (cp) {
        case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D:
        case 0x20: case 0x85: case 0xA0: case 0x1680:
        case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

bool is_control(char32_t cp) {
    if (cp < 0x20) return !is_space(cp);
    if (cp == 0x7F) return true;
    return cp >= 0x80 && cp <= 0x9F && cp != 0x85;
}

}  // namespace flan::utf8
