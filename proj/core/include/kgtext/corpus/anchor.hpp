#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kgtext {

/// Half-open byte range [start, end) inside a text.
struct Anchor {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start; }
  std::string_view slice(std::string_view text) const { return text.substr(start, end - start); }

  friend auto operator<=>(const Anchor&, const Anchor&) = default;
  friend bool operator==(const Anchor&, const Anchor&) = default;
};

/// First occurrence of `answer` in `text` that starts and ends on word
/// boundaries. Case-sensitive matches are preferred; otherwise the first
/// ASCII case-insensitive match. Throws std::invalid_argument on an empty
/// answer.
std::optional<Anchor> find_anchor(std::string_view text, std::string_view answer);

struct Window {
  std::string text;
  Anchor anchor;  ///< re-based to `text`
  std::size_t offset = 0;  ///< byte offset of the window within the source

  friend bool operator==(const Window&, const Window&) = default;
};

/// A substring of at most `chars` code points that contains `anchor`.
///
/// The window is centred on the anchor midpoint and clamped to the text. An
/// edge that would split a word is moved inward to the nearest whitespace,
/// never past the anchor, so the result stays within the budget. Throws
/// std::invalid_argument if the anchor is out of range, not on character
/// boundaries, or longer than `chars` code points.
Window window(std::string_view text, const Anchor& anchor, std::size_t chars);

}  // namespace kgtext
