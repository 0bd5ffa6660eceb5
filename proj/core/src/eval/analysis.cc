#include "issr/eval/analysis.h"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

namespace issr::eval {

AnalysisReport analyze_corpus(const std::vector<QuestionItem>& items, const lexicon::Lexicon& lexicon,
                              const embeddings::VectorTable* vectors) {
  AnalysisReport report;
  report.items = items.size();
  std::vector<double> cos_all;
  std::vector<double> cos_low;
  std::vector<double> levels;
  std::vector<double> pass_rates;
  const embeddings::LemmaFn lemma = [&](std::string_view w) { return lexicon.lemmatize(w); };

  for (const auto& item : items) {
    const Level answer_level = lexicon.level(item.answer);
    if (answer_level) {
      ++report.answer_levels[*answer_level];
      if (item.pass_rate) {
        levels.push_back(*answer_level);
        pass_rates.push_back(*item.pass_rate);
      }
    } else {
      ++report.ungraded_answers;
    }

    const bool low_pass = item.pass_rate && *item.pass_rate < kLowPassRate;
    for (const auto& d : item.gold_distractors) {
      const Level level = lexicon.level(d);
      if (!level) {
        ++report.ungraded_distractors;
      } else if (answer_level) {
        const int diff = std::abs(*level - *answer_level);
        ++report.level_differences[diff];
        ++report.level_differences_by_answer[*answer_level][diff];
      }
      if (vectors == nullptr) continue;
      const auto c = vectors->cosine(item.answer, d, lemma);
      if (!c) {
        ++report.pairs_without_vectors;
        continue;
      }
      cos_all.push_back(*c);
      if (low_pass) cos_low.push_back(*c);
    }
  }

  if (vectors != nullptr) {
    if (!cos_all.empty()) report.cosine_all = describe(cos_all);
    if (!cos_low.empty()) report.cosine_low_pass = describe(cos_low);
  }
  if (levels.size() >= 2) {
    try {
      report.pass_rate_vs_level = pearson(levels, pass_rates);
    } catch (const std::exception&) {
      // Constant levels or pass rates: no correlation to report.
    }
  }
  return report;
}

namespace {

nlohmann::json histogram_json(const std::map<int, std::size_t>& h) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [bucket, count] : h) j[std::to_string(bucket)] = count;
  return j;
}

nlohmann::json summary_json(const std::optional<Summary>& s) {
  if (!s) return nullptr;
  return {{"n", s->n}, {"mean", s->mean}, {"std", s->std}};
}

}  // namespace

nlohmann::json to_json(const AnalysisReport& report) {
  nlohmann::json by_answer = nlohmann::json::object();
  for (const auto& [level, h] : report.level_differences_by_answer) by_answer[std::to_string(level)] = histogram_json(h);
  nlohmann::json corr = nullptr;
  if (report.pass_rate_vs_level) {
    const auto& p = *report.pass_rate_vs_level;
    corr = {{"n", p.n}, {"r", p.r}, {"p_value", std::isnan(p.p_value) ? nlohmann::json(nullptr) : nlohmann::json(p.p_value)}};
  }
  return {{"items", report.items},
          {"ungraded_answers", report.ungraded_answers},
          {"ungraded_distractors", report.ungraded_distractors},
          {"answer_levels", histogram_json(report.answer_levels)},
          {"level_differences", histogram_json(report.level_differences)},
          {"level_differences_by_answer_level", by_answer},
          {"cosine", {{"all", summary_json(report.cosine_all)},
                      {"low_pass", summary_json(report.cosine_low_pass)},
                      {"low_pass_threshold", kLowPassRate},
                      {"pairs_without_vectors", report.pairs_without_vectors}}},
          {"pass_rate_vs_level", corr}};
}

std::string histograms_csv(const AnalysisReport& report) {
  std::ostringstream out;
  out << "histogram,answer_level,bucket,count\n";
  for (const auto& [level, count] : report.answer_levels) out << "answer_level,," << level << ',' << count << '\n';
  for (const auto& [diff, count] : report.level_differences) out << "level_difference,," << diff << ',' << count << '\n';
  for (const auto& [level, h] : report.level_differences_by_answer) {
    for (const auto& [diff, count] : h) out << "level_difference," << level << ',' << diff << ',' << count << '\n';
  }
  return out.str();
}

}  // namespace issr::eval
