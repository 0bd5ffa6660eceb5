#pragma once

#include <string>
#include <string_view>

namespace issr {

inline constexpr std::string_view kBlankMarker = "_____";
inline constexpr std::size_t kMinBlankRun = 3;

// Rewrites the single run of >= 3 underscores as the canonical marker.
// Throws Error(kNoBlank) or Error(kMultipleBlanks).
std::string normalize_blank(std::string_view stem);

// Replaces the canonical marker of a normalized stem with `word`.
std::string fill_blank(std::string_view normalized_stem, std::string_view word);

std::string to_lower(std::string_view text);
std::string trim(std::string_view text);

// True for a nonempty run of ASCII letters, apostrophes or hyphens with no
// whitespace or digits.
bool is_single_word(std::string_view word);

}  // namespace issr
