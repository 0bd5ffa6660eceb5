#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "issr/core/config.h"

namespace issr::cli {

/// Reproducibility record written next to a command's outputs.
struct RunManifest {
  std::string command;
  PipelineConfig config;
  std::map<std::string, std::string> inputs;
  std::map<std::string, std::string> endpoints;
  std::vector<std::string> api_keys_present;
  std::string template_digest;
  std::string template_revision;
  std::vector<std::string> outputs;
  std::chrono::system_clock::time_point started = std::chrono::system_clock::now();
  double wall_clock_seconds = 0.0;
  int exit_code = 0;
  nlohmann::json extra = nlohmann::json::object();

  nlohmann::json to_json() const;
  void write(const std::filesystem::path& path) const;
};

// Drops user-info and masks credential-like query values.
std::string redact_url(const std::string& url);

// `git describe --always --dirty` for the repository holding `dir`, or
// "unknown".
std::string git_describe(const std::filesystem::path& dir);

}  // namespace issr::cli
