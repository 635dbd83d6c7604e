#include "kgtext/corpus/anchor.hpp"

#include <algorithm>
#include <vector>

#include "kgtext/util/text.hpp"

namespace kgtext {

namespace {

bool word_char_before(std::string_view text, std::size_t pos) {
  if (pos == 0) return false;
  std::size_t start = pos - 1;
  while (start > 0 && !text::is_char_boundary(text, start)) --start;
  std::size_t len = 0;
  return text::is_word_char(text::decode_utf8(text, start, len));
}

bool word_char_at(std::string_view text, std::size_t pos) {
  if (pos >= text.size()) return false;
  std::size_t len = 0;
  return text::is_word_char(text::decode_utf8(text, pos, len));
}

bool at_word_boundaries(std::string_view text, std::size_t start, std::size_t end) {
  return !word_char_before(text, start) && !word_char_at(text, end);
}

std::optional<Anchor> scan(std::string_view haystack, std::string_view needle,
                           std::string_view original) {
  for (std::size_t pos = haystack.find(needle); pos != std::string_view::npos;
       pos = haystack.find(needle, pos + 1)) {
    if (text::is_char_boundary(original, pos) &&
        at_word_boundaries(original, pos, pos + needle.size())) {
      return Anchor{pos, pos + needle.size()};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Anchor> find_anchor(std::string_view text, std::string_view answer) {
  if (answer.empty()) throw std::invalid_argument("find_anchor: empty answer");
  if (auto hit = scan(text, answer, text)) return hit;
  const std::string lower_text = text::ascii_lower(text);
  const std::string lower_answer = text::ascii_lower(answer);
  return scan(lower_text, lower_answer, text);
}

Window window(std::string_view text, const Anchor& anchor, std::size_t chars) {
  if (anchor.start >= anchor.end || anchor.end > text.size() ||
      !text::is_char_boundary(text, anchor.start) || !text::is_char_boundary(text, anchor.end)) {
    throw std::invalid_argument("window: anchor is not a valid range of the text");
  }
  // Byte offset of every code point, plus a sentinel at text.size().
  std::vector<std::size_t> cp;
  cp.reserve(text.size() + 1);
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text::is_char_boundary(text, i)) cp.push_back(i);
  }
  const std::size_t n = cp.size();
  cp.push_back(text.size());

  auto to_char = [&cp](std::size_t byte) {
    return static_cast<std::size_t>(std::lower_bound(cp.begin(), cp.end(), byte) - cp.begin());
  };
  const std::size_t a_start = to_char(anchor.start);
  const std::size_t a_end = to_char(anchor.end);
  if (a_end - a_start > chars) {
    throw std::invalid_argument("window: anchor spans more than the window size");
  }
  if (chars >= n) return Window{std::string(text), anchor, 0};

  // Centre on the anchor midpoint: floor((a_start + a_end - chars) / 2).
  const auto lo = static_cast<long long>(a_start + a_end) - static_cast<long long>(chars);
  long long start = lo >= 0 ? lo / 2 : -((-lo + 1) / 2);
  start = std::clamp<long long>(start, 0, static_cast<long long>(n - chars));
  auto w_start = static_cast<std::size_t>(start);
  std::size_t w_end = w_start + chars;

  auto space_at = [&](std::size_t c) { return text::is_ascii_space(text[cp[c]]); };
  while (w_start > 0 && w_start < a_start && !space_at(w_start - 1) && !space_at(w_start)) {
    ++w_start;
  }
  while (w_start < a_start && space_at(w_start)) ++w_start;
  while (w_end < n && w_end > a_end && !space_at(w_end - 1) && !space_at(w_end)) --w_end;
  while (w_end > a_end && space_at(w_end - 1)) --w_end;

  const std::size_t b_start = cp[w_start];
  const std::size_t b_end = cp[w_end];
  return Window{std::string(text.substr(b_start, b_end - b_start)),
                Anchor{anchor.start - b_start, anchor.end - b_start}, b_start};
}

}  // namespace kgtext
