#include <benchmark/benchmark.h>

#include <sstream>
#include <string>

#include "cipscan/dataflow.hpp"
#include "cipscan/matcher.hpp"
#include "cipscan/symbols.hpp"

namespace {

// Synthetic corpus: `classes` classes, each with a handful of fields,
// getters, and guard methods that exercise the common patterns.
std::vector<std::pair<std::string, std::string>> synth_corpus(int classes) {
  std::vector<std::pair<std::string, std::string>> files;
  for (int i = 0; i < classes; ++i) {
    std::ostringstream src;
    src << "class Widget" << i << " {\n";
    src << "  private int size;\n";
    src << "  private boolean active;\n";
    src << "  private String label;\n";
    src << "  public int getSize() { return size; }\n";
    src << "  public boolean isActive() { return active; }\n";
    src << "  void configure() {\n";
    src << "    size = " << (i + 10) << ";\n";
    src << "    if (size > 100) { size = 100; }\n";
    src << "  }\n";
    src << "  boolean check(Widget" << i << " other) {\n";
    src << "    if (label == null) { return false; }\n";
    src << "    if (isActive()) { return getSize() > other.getSize(); }\n";
    src << "    return label.equals(\"a\") || label.equals(\"b\");\n";
    src << "  }\n";
    src << "}\n";
    files.emplace_back("Widget" + std::to_string(i) + ".java", src.str());
  }
  return files;
}

void BM_ParseCorpus(benchmark::State& state) {
  const auto files = synth_corpus(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto corpus = cipscan::parse_corpus_from_memory(files);
    benchmark::DoNotOptimize(corpus.asts.size());
  }
}
BENCHMARK(BM_ParseCorpus)->Arg(8)->Arg(64);

void BM_MatchAll(benchmark::State& state) {
  const auto files = synth_corpus(static_cast<int>(state.range(0)));
  const auto corpus = cipscan::parse_corpus_from_memory(files);
  const auto symbols = cipscan::build_symbols(corpus);
  for (auto _ : state) {
    auto instances = cipscan::match_all(corpus, symbols);
    benchmark::DoNotOptimize(instances.size());
  }
}
BENCHMARK(BM_MatchAll)->Arg(8)->Arg(64);

void BM_BuildDefUse(benchmark::State& state) {
  const auto files = synth_corpus(static_cast<int>(state.range(0)));
  const auto corpus = cipscan::parse_corpus_from_memory(files);
  const auto symbols = cipscan::build_symbols(corpus);
  for (auto _ : state) {
    auto graph = cipscan::build_def_use(corpus, symbols);
    benchmark::DoNotOptimize(graph.defs.size());
  }
}
BENCHMARK(BM_BuildDefUse)->Arg(8)->Arg(64);

void BM_ForwardSlice(benchmark::State& state) {
  const auto files = synth_corpus(64);
  const auto corpus = cipscan::parse_corpus_from_memory(files);
  const auto symbols = cipscan::build_symbols(corpus);
  const auto graph = cipscan::build_def_use(corpus, symbols);
  const auto seeds = graph.defs_at(corpus, "Widget0.java", 2);
  for (auto _ : state) {
    auto slice = cipscan::forward_slice(graph, seeds.front(), 3);
    benchmark::DoNotOptimize(slice->reached.size());
  }
}
BENCHMARK(BM_ForwardSlice);

}  // namespace

BENCHMARK_MAIN();
