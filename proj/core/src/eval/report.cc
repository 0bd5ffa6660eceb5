#include "issr/eval/report.h"

#include <iomanip>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "issr/core/blank.h"
#include "issr/core/error.h"
#include "issr/eval/metrics.h"

namespace issr::eval {

const std::vector<MetricKey>& metric_keys() {
  static const std::vector<MetricKey> kKeys = {
      {"f1@3", true, 3}, {"f1@10", true, 10}, {"ndcg@3", false, 3}, {"ndcg@10", false, 10}, {"ndcg@30", false, 30}};
  return kKeys;
}

MetricReport evaluate(const std::vector<GeneratedList>& generated, const std::vector<QuestionItem>& dataset) {
  std::map<std::string, const GeneratedList*> by_id;
  for (const auto& g : generated) by_id[g.id] = &g;

  MetricReport report;
  std::map<std::string, long> micro_hits;
  long micro_gold = 0;
  const std::vector<std::string> none;

  for (const auto& item : dataset) {
    if (item.gold_distractors.empty()) {
      report.skipped.push_back(item.id);
      continue;
    }
    auto it = by_id.find(item.id);
    if (it == by_id.end()) report.missing.push_back(item.id);
    const auto& list = it == by_id.end() ? none : it->second->distractors;
    auto& row = report.per_item[item.id];
    for (const auto& key : metric_keys()) {
      row[key.name] = key.is_f1 ? f1_at_k(list, item.gold_distractors, key.k)
                                : ndcg_at_k(list, item.gold_distractors, key.k);
      if (key.is_f1) micro_hits[key.name] += hits_at_k(list, item.gold_distractors, key.k);
    }
    micro_gold += static_cast<long>(std::set<std::string>(item.gold_distractors.begin(), item.gold_distractors.end()).size());
  }

  const auto n = static_cast<double>(report.per_item.size());
  for (const auto& key : metric_keys()) {
    double sum = 0.0;
    for (const auto& [id, row] : report.per_item) sum += row.at(key.name);
    report.means[key.name] = n > 0 ? sum / n : 0.0;
    if (!key.is_f1) continue;
    const double hits = static_cast<double>(micro_hits[key.name]);
    double f1 = 0.0;
    if (hits > 0) {
      const double p = hits / (n * key.k);
      const double r = hits / static_cast<double>(micro_gold);
      f1 = 2 * p * r / (p + r);
    }
    report.micro_f1[key.name] = f1;
  }
  return report;
}

std::vector<GeneratedList> read_generated(std::istream& in) {
  std::vector<GeneratedList> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      out.push_back(GeneratedList{j.at("id").get<std::string>(), j.at("distractors").get<std::vector<std::string>>()});
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, "generated list line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

nlohmann::json to_json(const MetricReport& report) {
  return nlohmann::json{{"per_item", report.per_item},
                        {"means", report.means},
                        {"micro", report.micro_f1},
                        {"missing", report.missing},
                        {"skipped", report.skipped}};
}

std::string to_csv(const MetricReport& report) {
  std::ostringstream out;
  out << std::setprecision(10);
  out << "id";
  for (const auto& key : metric_keys()) out << ',' << key.name;
  out << '\n';
  for (const auto& [id, row] : report.per_item) {
    out << id;
    for (const auto& key : metric_keys()) out << ',' << row.at(key.name);
    out << '\n';
  }
  out << "mean";
  for (const auto& key : metric_keys()) out << ',' << report.means.at(key.name);
  out << "\nmicro";
  for (const auto& key : metric_keys()) {
    out << ',';
    if (auto it = report.micro_f1.find(key.name); it != report.micro_f1.end()) out << it->second;
  }
  out << '\n';
  return out.str();
}

}  // namespace issr::eval
