#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "issr/core/config.h"
#include "issr/lexicon/lexicon.h"
#include "issr/pipeline/candidates.h"

namespace {

std::string syllables(std::mt19937& rng, int n) {
  static const std::string c = "bdfgklmnprtvz";
  static const std::string v = "aiou";
  std::string w;
  for (int i = 0; i < n; ++i) {
    w += c[rng() % c.size()];
    w += v[rng() % v.size()];
  }
  return w;
}

void BM_FilterCandidates(benchmark::State& state) {
  std::mt19937 rng(11);
  issr::lexicon::Lexicon lex;
  std::vector<issr::modelio::MaskedPrediction> preds;
  lex.add({"concert", issr::Pos::kNoun, 2});
  while (preds.size() < static_cast<std::size_t>(state.range(0))) {
    const std::string w = syllables(rng, 2 + static_cast<int>(rng() % 3));
    if (lex.add({w, rng() % 4 ? issr::Pos::kNoun : issr::Pos::kVerb, 1 + static_cast<int>(rng() % 6)})) {
      preds.push_back({w, std::uniform_real_distribution<double>(0, 1)(rng)});
    }
  }
  issr::PipelineConfig config;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        issr::pipeline::filter_candidates(preds, "concert", "We went to a _____ last night.", lex, config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FilterCandidates)->Arg(100)->Arg(400);

}  // namespace
