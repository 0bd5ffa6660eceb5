#include <benchmark/benchmark.h>

#include <random>
#include <sstream>
#include <string>

#include "issr/embeddings/vector_table.h"

namespace {

std::string vector_text(int rows, int dim) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<float> u(-1.0f, 1.0f);
  std::ostringstream s;
  for (int r = 0; r < rows; ++r) {
    s << "w" << r;
    for (int d = 0; d < dim; ++d) s << ' ' << u(rng);
    s << '\n';
  }
  return s.str();
}

void BM_LoadVectors(benchmark::State& state) {
  const std::string text = vector_text(static_cast<int>(state.range(0)), 300);
  for (auto _ : state) {
    std::istringstream in(text);
    benchmark::DoNotOptimize(issr::embeddings::VectorTable::load(in).size());
  }
  state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_LoadVectors)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Cosine(benchmark::State& state) {
  std::istringstream in(vector_text(1000, 300));
  const auto table = issr::embeddings::VectorTable::load(in);
  for (auto _ : state) benchmark::DoNotOptimize(table.cosine("w10", "w900"));
}
BENCHMARK(BM_Cosine);

}  // namespace
