#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "issr/core/types.h"

namespace issr::modelio {

struct DroppedLine {
  std::string text;
  std::string reason;
};

struct ParsedList {
  std::vector<std::string> words;
  std::vector<DroppedLine> dropped;
};

// Reads an enumerated reply ("1. journey\n2. traffic" or the inline
// "1. brogue 2. lilt 3. twang"). Strips enumeration and bullet prefixes,
// quotes and trailing punctuation, lowercases, and drops multiword entries,
// non-words, the target word, duplicates, and anything past `expected`.
// Throws Error(kNoParsableLines) when no word survives.
ParsedList parse_enumerated(std::string_view reply, int expected, std::string_view target = {});

// "both are good" wins; otherwise the option word that appears first (whole
// word, case-insensitive) decides; neither gives ParseFailure.
VerdictReason parse_binary_verdict(std::string_view reply, std::string_view target, std::string_view distractor);

// First whole-word "yes" or "no" in the reply.
std::optional<bool> parse_yes_no(std::string_view reply);

// Index of the option mentioned first in the reply.
std::optional<std::size_t> parse_choice(std::string_view reply, std::span<const std::string> options);

// Position of the first whole-word, case-insensitive match of `word`.
std::optional<std::size_t> find_word(std::string_view haystack_lower, std::string_view word_lower);

}  // namespace issr::modelio
