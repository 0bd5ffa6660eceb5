#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "issr/core/types.h"

namespace issr {

struct PipelineConfig {
  int pool_cap = 50;
  int k_per_round = 3;
  int target_count = 30;
  int max_rounds = 20;
  double temperature = 0.7;
  ValidatorStrategy validator_strategy = ValidatorStrategy::kS3Binary;
  int length_delta_max = 2;
  int difficulty_delta_max = 1;
  int retry_limit = 3;
  // Raw predictions fetched per item = fetch_multiplier * pool_cap.
  int fetch_multiplier = 4;
  int max_tokens = 256;
  int retry_backoff_ms = 200;
  bool parallel_validation = false;
  std::uint64_t seed = 0;

  // Throws Error(kInvalidConfig).
  void validate() const;

  int fetch_size() const { return fetch_multiplier * pool_cap; }

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

// Sets one field from its textual form. Keys use the field names above;
// unknown keys and malformed values throw Error(kInvalidConfig).
void apply_setting(PipelineConfig& config, std::string_view key, std::string_view value);

// Reads a `key = value` file. Blank lines and lines starting with '#' are
// skipped; values may be wrapped in double quotes.
std::map<std::string, std::string> read_key_value_file(const std::filesystem::path& path);

// Every key accepted by apply_setting.
const std::vector<std::string_view>& config_keys();

}  // namespace issr
