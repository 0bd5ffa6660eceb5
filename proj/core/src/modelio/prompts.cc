#include "issr/modelio/prompts.h"

#include <fstream>
#include <sstream>

#include "embedded.h"
#include "issr/core/blank.h"
#include "issr/core/error.h"
#include "issr/core/hash.h"

namespace issr::modelio {

namespace {

std::string strip_final_newline(std::string_view text) {
  if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
  return std::string(text);
}

std::string join(std::span<const std::string> words, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out += sep;
    out += words[i];
  }
  return out;
}

void check_placeholders(PromptRole role, const PromptTemplate& tmpl) {
  for (auto name : required_placeholders(role)) {
    const std::string token = "{" + std::string(name) + "}";
    if (tmpl.body.find(token) == std::string::npos) {
      throw Error(ErrorCode::kInvalidConfig,
                  "template '" + tmpl.name + "' is missing placeholder " + token);
    }
  }
}

}  // namespace

std::string_view role_file_name(PromptRole role) {
  switch (role) {
    case PromptRole::kSelector: return "selector";
    case PromptRole::kSelectorRetry: return "selector_retry";
    case PromptRole::kDirectGeneration: return "direct_generation";
    case PromptRole::kValidateS1: return "validator_s1";
    case PromptRole::kValidateS2: return "validator_s2";
    case PromptRole::kValidateS3: return "validator_s3";
    case PromptRole::kAnswer: return "answer";
    case PromptRole::kOther: break;
  }
  return "other";
}

const std::vector<PromptRole>& templated_roles() {
  static const std::vector<PromptRole> roles = {
      PromptRole::kSelector,   PromptRole::kSelectorRetry, PromptRole::kDirectGeneration, PromptRole::kValidateS1,
      PromptRole::kValidateS2, PromptRole::kValidateS3,    PromptRole::kAnswer};
  return roles;
}

const std::vector<std::string_view>& required_placeholders(PromptRole role) {
  static const std::vector<std::string_view> selector = {"stem", "target", "pool", "avoid", "k"};
  static const std::vector<std::string_view> direct = {"stem", "target", "avoid", "k"};
  static const std::vector<std::string_view> validator = {"stem", "target", "distractor"};
  static const std::vector<std::string_view> consistency = {"sentence1", "sentence2"};
  static const std::vector<std::string_view> answer = {"stem", "options"};
  static const std::vector<std::string_view> none;
  switch (role) {
    case PromptRole::kSelector:
    case PromptRole::kSelectorRetry: return selector;
    case PromptRole::kDirectGeneration: return direct;
    case PromptRole::kValidateS1:
    case PromptRole::kValidateS3: return validator;
    case PromptRole::kValidateS2: return consistency;
    case PromptRole::kAnswer: return answer;
    case PromptRole::kOther: break;
  }
  return none;
}

const PromptSet& PromptSet::builtin() {
  static const PromptSet instance = [] {
    PromptSet set;
    for (PromptRole role : templated_roles()) {
      const std::string name(role_file_name(role));
      const auto text = detail::embedded_file("templates/" + name + ".txt");
      set.set(role, PromptTemplate{name, strip_final_newline(text)});
    }
    return set;
  }();
  return instance;
}

PromptSet PromptSet::load_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kIo, "template directory not found: " + dir.string());
  }
  PromptSet set = builtin();
  for (PromptRole role : templated_roles()) {
    const std::string name(role_file_name(role));
    const auto path = dir / (name + ".txt");
    if (!std::filesystem::exists(path)) continue;
    std::ifstream in(path);
    std::ostringstream body;
    body << in.rdbuf();
    set.set(role, PromptTemplate{name, strip_final_newline(body.str())});
  }
  return set;
}

const PromptTemplate& PromptSet::get(PromptRole role) const {
  auto it = templates_.find(role);
  if (it == templates_.end()) {
    throw Error(ErrorCode::kInvalidConfig, "no template for role " + std::string(role_file_name(role)));
  }
  return it->second;
}

void PromptSet::set(PromptRole role, PromptTemplate tmpl) {
  check_placeholders(role, tmpl);
  templates_[role] = std::move(tmpl);
}

std::string PromptSet::digest() const {
  std::string all;
  for (const auto& [role, tmpl] : templates_) {
    all += tmpl.name;
    all += '\0';
    all += tmpl.body;
    all += '\0';
  }
  return hex64(fnv1a64(all));
}

std::string render(const PromptTemplate& tmpl, const std::map<std::string, std::string, std::less<>>& values) {
  std::string out;
  out.reserve(tmpl.body.size() + 256);
  const std::string& body = tmpl.body;
  std::size_t i = 0;
  while (i < body.size()) {
    if (body[i] == '{') {
      const auto close = body.find('}', i + 1);
      if (close != std::string::npos) {
        const std::string_view name(body.data() + i + 1, close - i - 1);
        if (auto it = values.find(name); it != values.end()) {
          out += it->second;
          i = close + 1;
          continue;
        }
      }
    }
    out += body[i++];
  }
  return out;
}

std::string quoted_list(std::span<const std::string> words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out += ", ";
    out += '"';
    out += words[i];
    out += '"';
  }
  return out;
}

std::string avoid_section(std::span<const std::string> avoid) {
  if (avoid.empty()) return {};
  return "**Words to avoid picking**\n" + join(avoid, ", ") + "\n";
}

std::string render_selector_prompt(const PromptSet& prompts, std::string_view stem, std::string_view target,
                                   std::span<const std::string> pool, int k, std::span<const std::string> avoid) {
  if (pool.empty()) throw Error(ErrorCode::kEmptyPool, "selector pool is empty");
  if (k < 1 || static_cast<std::size_t>(k) > pool.size()) {
    throw Error(ErrorCode::kEmptyPool, "cannot pick " + std::to_string(k) + " from a pool of " +
                                           std::to_string(pool.size()));
  }
  return render(prompts.get(PromptRole::kSelector), {{"stem", std::string(stem)},
                                                      {"target", std::string(target)},
                                                      {"pool", quoted_list(pool)},
                                                      {"avoid", avoid_section(avoid)},
                                                      {"k", std::to_string(k)}});
}

std::string render_selector_retry_prompt(const PromptSet& prompts, std::string_view stem, std::string_view target,
                                         std::span<const std::string> pool, int k,
                                         std::span<const std::string> avoid) {
  if (pool.empty() || k < 1 || static_cast<std::size_t>(k) > pool.size()) {
    throw Error(ErrorCode::kEmptyPool, "corrective selector prompt has nothing to offer");
  }
  return render(prompts.get(PromptRole::kSelectorRetry), {{"stem", std::string(stem)},
                                                           {"target", std::string(target)},
                                                           {"pool", quoted_list(pool)},
                                                           {"avoid", avoid_section(avoid)},
                                                           {"k", std::to_string(k)}});
}

std::string render_avoid_prompt(const PromptSet& prompts, std::string_view stem, std::string_view target,
                                std::span<const std::string> avoid, int k) {
  return render(prompts.get(PromptRole::kDirectGeneration), {{"stem", std::string(stem)},
                                                              {"target", std::string(target)},
                                                              {"avoid", avoid_section(avoid)},
                                                              {"k", std::to_string(k)}});
}

std::string render_validator_prompt(const PromptSet& prompts, ValidatorStrategy strategy, std::string_view stem,
                                    std::string_view target, std::string_view distractor) {
  switch (strategy) {
    case ValidatorStrategy::kS1Independent:
      return render(prompts.get(PromptRole::kValidateS1), {{"stem", std::string(stem)},
                                                            {"target", std::string(target)},
                                                            {"distractor", std::string(distractor)}});
    case ValidatorStrategy::kS2Consistency:
      return render(prompts.get(PromptRole::kValidateS2), {{"sentence1", fill_blank(stem, distractor)},
                                                            {"sentence2", fill_blank(stem, target)}});
    case ValidatorStrategy::kS3Binary:
      break;
  }
  return render(prompts.get(PromptRole::kValidateS3), {{"stem", std::string(stem)},
                                                        {"target", std::string(target)},
                                                        {"distractor", std::string(distractor)}});
}

std::string render_answer_prompt(const PromptSet& prompts, std::string_view stem,
                                 std::span<const std::string> options) {
  return render(prompts.get(PromptRole::kAnswer), {{"stem", std::string(stem)}, {"options", join(options, "\n")}});
}

}  // namespace issr::modelio
