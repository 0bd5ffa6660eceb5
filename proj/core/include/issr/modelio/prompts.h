#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "issr/core/types.h"
#include "issr/modelio/chat.h"

namespace issr::modelio {

struct PromptTemplate {
  std::string name;
  std::string body;
};

/// The prompt templates used by every model call. Loaded once; rendering is
/// pure string substitution of `{placeholder}` tokens.
///
/// `{avoid}` expands to a "**Words to avoid picking**" section followed by a
/// newline, or to nothing when the avoid-list is empty.
class PromptSet {
 public:
  static const PromptSet& builtin();

  // Reads `<role>.txt` files from `dir`; roles without a file keep the
  // built-in text. Throws Error(kInvalidConfig) when a template lacks a
  // placeholder its role needs.
  static PromptSet load_directory(const std::filesystem::path& dir);

  const PromptTemplate& get(PromptRole role) const;
  void set(PromptRole role, PromptTemplate tmpl);

  // Hex FNV-1a over every template body, for run manifests.
  std::string digest() const;

 private:
  std::map<PromptRole, PromptTemplate> templates_;
};

std::string_view role_file_name(PromptRole role);
const std::vector<PromptRole>& templated_roles();
const std::vector<std::string_view>& required_placeholders(PromptRole role);

std::string render(const PromptTemplate& tmpl, const std::map<std::string, std::string, std::less<>>& values);

// `"a", "b", "c"`.
std::string quoted_list(std::span<const std::string> words);
std::string avoid_section(std::span<const std::string> avoid);

// Throws Error(kEmptyPool) if the pool is empty or k is outside [1, |pool|].
std::string render_selector_prompt(const PromptSet& prompts, std::string_view stem, std::string_view target,
                                   std::span<const std::string> pool, int k,
                                   std::span<const std::string> avoid = {});

std::string render_selector_retry_prompt(const PromptSet& prompts, std::string_view stem, std::string_view target,
                                         std::span<const std::string> pool, int k,
                                         std::span<const std::string> avoid);

// Direct-generation request with the accumulated avoid-list.
std::string render_avoid_prompt(const PromptSet& prompts, std::string_view stem, std::string_view target,
                                std::span<const std::string> avoid, int k);

std::string render_validator_prompt(const PromptSet& prompts, ValidatorStrategy strategy, std::string_view stem,
                                    std::string_view target, std::string_view distractor);

std::string render_answer_prompt(const PromptSet& prompts, std::string_view stem,
                                 std::span<const std::string> options);

}  // namespace issr::modelio
