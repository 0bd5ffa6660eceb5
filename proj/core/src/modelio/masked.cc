#include "issr/modelio/masked.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "issr/core/error.h"

namespace issr::modelio {

std::vector<MaskedPrediction> parse_predictions(const nlohmann::json& payload) {
  if (!payload.is_array()) throw Error(ErrorCode::kBadPayload, "expected an array of predictions");
  std::vector<MaskedPrediction> out;
  out.reserve(payload.size());
  for (const auto& p : payload) {
    if (!p.is_object() || !p.contains("token") || !p.contains("score") || !p["token"].is_string() ||
        !p["score"].is_number()) {
      throw Error(ErrorCode::kBadPayload, "prediction must be {\"token\": str, \"score\": number}");
    }
    if (p["token"].get_ref<const std::string&>().empty()) throw Error(ErrorCode::kBadPayload, "empty prediction token");
    out.push_back(MaskedPrediction{p["token"].get<std::string>(), p["score"].get<double>()});
  }
  return out;
}

std::vector<MaskedPrediction> masked_candidates(MaskedSource& source, std::string_view stem_with_mask, int top_n) {
  if (stem_with_mask.find(kMaskToken) == std::string_view::npos) {
    throw Error(ErrorCode::kNoBlank, "text has no " + std::string(kMaskToken) + " token");
  }
  if (top_n <= 0) return {};
  auto predictions = source.predict(stem_with_mask, top_n);
  for (const auto& p : predictions) {
    if (p.token.empty()) throw Error(ErrorCode::kBadPayload, "empty prediction token");
    if (!std::isfinite(p.score)) throw Error(ErrorCode::kBadPayload, "non-finite score for '" + p.token + "'");
  }
  std::sort(predictions.begin(), predictions.end(), [](const MaskedPrediction& a, const MaskedPrediction& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.token < b.token;
  });
  if (predictions.size() > static_cast<std::size_t>(top_n)) predictions.resize(static_cast<std::size_t>(top_n));
  return predictions;
}

FixtureMaskedSource::FixtureMaskedSource(const nlohmann::json& fixture) {
  if (fixture.is_array()) {
    by_text_["*"] = parse_predictions(fixture);
    return;
  }
  if (!fixture.is_object()) throw Error(ErrorCode::kBadPayload, "fixture must be an array or an object");
  for (const auto& [text, predictions] : fixture.items()) by_text_[text] = parse_predictions(predictions);
}

FixtureMaskedSource FixtureMaskedSource::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open prediction fixture " + path.string());
  try {
    return FixtureMaskedSource(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kBadPayload, path.string() + ": " + e.what());
  }
}

std::vector<MaskedPrediction> FixtureMaskedSource::predict(std::string_view masked_text, int /*top_n*/) {
  if (auto it = by_text_.find(masked_text); it != by_text_.end()) return it->second;
  if (auto it = by_text_.find("*"); it != by_text_.end()) return it->second;
  return {};
}

}  // namespace issr::modelio
