#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace issr::modelio {

inline constexpr std::string_view kMaskToken = "[MASK]";

struct MaskedPrediction {
  std::string token;
  double score = 0.0;

  friend bool operator==(const MaskedPrediction&, const MaskedPrediction&) = default;
};

/// Fill-in-the-blank candidate generator (a served masked language model or
/// a fixture standing in for one).
class MaskedSource {
 public:
  virtual ~MaskedSource() = default;
  // Raw predictions in any order; may return more or fewer than top_n.
  virtual std::vector<MaskedPrediction> predict(std::string_view masked_text, int top_n) = 0;
};

// Calls the source and returns at most top_n predictions, score descending,
// ties broken by token. Throws Error(kNoBlank) when the text lacks the mask
// token and Error(kBadPayload) on a non-finite score or empty token.
std::vector<MaskedPrediction> masked_candidates(MaskedSource& source, std::string_view stem_with_mask, int top_n);

// Parses a `[{"token": ..., "score": ...}, ...]` payload.
std::vector<MaskedPrediction> parse_predictions(const nlohmann::json& payload);

/// Reads predictions from JSON instead of a network service. Accepts either
/// a bare prediction array (served for every text) or an object mapping the
/// exact masked text to an array, with "*" as the fallback key.
class FixtureMaskedSource : public MaskedSource {
 public:
  explicit FixtureMaskedSource(const nlohmann::json& fixture);
  static FixtureMaskedSource from_file(const std::filesystem::path& path);

  std::vector<MaskedPrediction> predict(std::string_view masked_text, int top_n) override;

 private:
  std::map<std::string, std::vector<MaskedPrediction>, std::less<>> by_text_;
};

}  // namespace issr::modelio
