#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "issr/lexicon/lemmatizer.h"

namespace {

void BM_Lemmatize(benchmark::State& state) {
  const std::vector<std::string> inputs = {"running", "studies", "mice", "wolves", "played",
                                           "boxes",   "concerts", "went", "making", "news"};
  const auto& lem = issr::lexicon::Lemmatizer::builtin();
  for (auto _ : state) {
    for (const auto& w : inputs) benchmark::DoNotOptimize(lem.lemmatize(w));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(inputs.size()));
}
BENCHMARK(BM_Lemmatize);

}  // namespace
