#include "issr/core/config.h"

#include <charconv>
#include <fstream>

#include "issr/core/blank.h"
#include "issr/core/error.h"

namespace issr {

namespace {

[[noreturn]] void bad_config(const std::string& message) {
  throw Error(ErrorCode::kInvalidConfig, message);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  const std::string value = trim(text);
  T out{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last || value.empty()) {
    bad_config("bad value '" + value + "' for " + std::string(key));
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view text) {
  const std::string value = to_lower(trim(text));
  if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
  if (value == "0" || value == "false" || value == "no" || value == "off") return false;
  bad_config("bad boolean '" + value + "' for " + std::string(key));
}

}  // namespace

void PipelineConfig::validate() const {
  auto positive = [](int v, const char* name) {
    if (v <= 0) bad_config(std::string(name) + " must be positive");
  };
  auto non_negative = [](int v, const char* name) {
    if (v < 0) bad_config(std::string(name) + " must be >= 0");
  };
  positive(pool_cap, "pool_cap");
  positive(k_per_round, "k_per_round");
  positive(target_count, "target_count");
  positive(max_rounds, "max_rounds");
  positive(max_tokens, "max_tokens");
  positive(fetch_multiplier, "fetch_multiplier");
  non_negative(length_delta_max, "length_delta_max");
  non_negative(difficulty_delta_max, "difficulty_delta_max");
  non_negative(retry_limit, "retry_limit");
  non_negative(retry_backoff_ms, "retry_backoff_ms");
  if (!(temperature >= 0.0)) bad_config("temperature must be >= 0");
  if (k_per_round > pool_cap) bad_config("k_per_round must not exceed pool_cap");
  // The pool is never refilled, so replenishment draws from the same cap.
  if (target_count > pool_cap) bad_config("target_count must not exceed pool_cap");
  const int min_rounds = (target_count + k_per_round - 1) / k_per_round;
  if (max_rounds < min_rounds) {
    bad_config("max_rounds must be >= ceil(target_count / k_per_round) = " + std::to_string(min_rounds));
  }
}

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys = {
      "pool_cap",         "k_per_round",    "target_count",     "max_rounds",
      "temperature",      "validator_strategy", "length_delta_max", "difficulty_delta_max",
      "retry_limit",      "fetch_multiplier", "max_tokens",     "retry_backoff_ms",
      "parallel_validation", "seed"};
  return keys;
}

void apply_setting(PipelineConfig& c, std::string_view key, std::string_view value) {
  if (key == "pool_cap") c.pool_cap = parse_number<int>(key, value);
  else if (key == "k_per_round" || key == "k") c.k_per_round = parse_number<int>(key, value);
  else if (key == "target_count") c.target_count = parse_number<int>(key, value);
  else if (key == "max_rounds") c.max_rounds = parse_number<int>(key, value);
  else if (key == "temperature") c.temperature = parse_number<double>(key, value);
  else if (key == "validator_strategy" || key == "strategy") {
    auto s = parse_strategy(value);
    if (!s) bad_config("unknown validator strategy '" + std::string(value) + "'");
    c.validator_strategy = *s;
  } else if (key == "length_delta_max") c.length_delta_max = parse_number<int>(key, value);
  else if (key == "difficulty_delta_max") c.difficulty_delta_max = parse_number<int>(key, value);
  else if (key == "retry_limit") c.retry_limit = parse_number<int>(key, value);
  else if (key == "fetch_multiplier") c.fetch_multiplier = parse_number<int>(key, value);
  else if (key == "max_tokens") c.max_tokens = parse_number<int>(key, value);
  else if (key == "retry_backoff_ms") c.retry_backoff_ms = parse_number<int>(key, value);
  else if (key == "parallel_validation") c.parallel_validation = parse_bool(key, value);
  else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
  else bad_config("unknown config key '" + std::string(key) + "'");
}

std::map<std::string, std::string> read_key_value_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config file " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      bad_config(path.string() + ":" + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = trim(std::string_view(t).substr(0, eq));
    std::string value = trim(std::string_view(t).substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    out[std::move(key)] = std::move(value);
  }
  return out;
}

}  // namespace issr
