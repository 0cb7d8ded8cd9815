#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace flan::utf8 {

// Byte offsets of each codepoint start, plus a final entry equal to text.size().
// Continuation bytes of invalid sequences are treated as starts, so any byte
// string gets a consistent (if degenerate) slicing.
std::vector<std::size_t> codepoint_offsets(std::string_view text);

std::size_t codepoint_count(std::string_view text);

// Decodes the codepoint starting at `pos` and advances `pos` past it.
// Malformed sequences decode one byte at a time as U+FFFD.
char32_t decode_at(std::string_view text, std::size_t& pos);

// Unicode whitespace (the token separator set).
bool is_space(char32_t cp);

// C0/C1 control characters that are not whitespace.
bool is_control(char32_t cp);

}  // namespace flan::utf8
