#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Byte-oriented UTF-8 helpers shared by the parsers and the corpus code.
// Case folding is ASCII-only; multibyte sequences pass through unchanged so
// byte offsets stay on character boundaries.
namespace kgtext::text {

void append_utf8(std::string& out, char32_t cp);

/// Decodes the code point starting at `pos`; sets `len` to its byte length.
/// Invalid sequences decode as U+FFFD with length 1.
char32_t decode_utf8(std::string_view s, std::size_t pos, std::size_t& len);

/// Number of code points.
std::size_t utf8_length(std::string_view s);

/// True if `pos` is not inside a multibyte sequence.
inline bool is_char_boundary(std::string_view s, std::size_t pos) {
  return pos == 0 || pos >= s.size() || (static_cast<unsigned char>(s[pos]) & 0xC0) != 0x80;
}

inline bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline bool is_ascii_alnum(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

inline char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

std::string ascii_lower(std::string_view s);

/// Letters and digits for word-boundary purposes. Non-ASCII code points count
/// as word characters except Latin-1 punctuation/symbols, general punctuation
/// and CJK punctuation.
bool is_word_char(char32_t cp);

/// Trim and collapse internal whitespace runs to single spaces.
std::string collapse_whitespace(std::string_view s);

/// Lowercase + trim + collapse whitespace.
std::string fold(std::string_view s);

/// Maximal runs of word bytes (ASCII alnum or any byte >= 0x80), lowercased.
std::vector<std::string> word_tokens(std::string_view s);

}  // namespace kgtext::text
