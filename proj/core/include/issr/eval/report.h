#pragma once

#include <istream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "issr/core/types.h"

namespace issr::eval {

struct MetricKey {
  std::string name;
  bool is_f1 = false;
  int k = 0;
};

// f1@3, f1@10, ndcg@3, ndcg@10, ndcg@30.
const std::vector<MetricKey>& metric_keys();

struct GeneratedList {
  std::string id;
  std::vector<std::string> distractors;
};

struct MetricReport {
  // item id -> metric name -> value.
  std::map<std::string, std::map<std::string, double>> per_item;
  // Macro averages over per_item.
  std::map<std::string, double> means;
  // Pooled hit counts for the F1 keys.
  std::map<std::string, double> micro_f1;
  // Dataset items with gold but no generated list; they score zero.
  std::vector<std::string> missing;
  // Dataset items without gold distractors, left out of every average.
  std::vector<std::string> skipped;
};

MetricReport evaluate(const std::vector<GeneratedList>& generated, const std::vector<QuestionItem>& dataset);

// Reads generate output: one {"id", "distractors", ...} object per line.
std::vector<GeneratedList> read_generated(std::istream& in);

nlohmann::json to_json(const MetricReport& report);
// One row per item, then "mean" and "micro" rows.
std::string to_csv(const MetricReport& report);

}  // namespace issr::eval
