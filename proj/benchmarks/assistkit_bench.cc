#include <benchmark/benchmark.h>

#include <fstream>
#include <random>
#include <sstream>

#include "assistkit/eval.h"
#include "assistkit/parser.h"
#include "assistkit/pipeline.h"
#include "assistkit/sanitizers.h"

namespace {

using namespace assistkit;

std::string ReadCorpus(const std::string& name) {
  std::ifstream in(std::string(ASSISTKIT_CORPUS_DIR) + "/" + name, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Program Load(const std::string& name) {
  ParseOptions o;
  o.file = name;
  o.allow_sanitizers = true;
  return ParseProgram(ReadCorpus(name), o);
}

std::string HazardString(std::size_t n) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pick(0, 9);
  const char alphabet[] = "ab'\"\\ ;-=0";
  std::string s;
  s.reserve(n);
  for (std::size_t i = 0; i < n; ++i) s += alphabet[pick(rng)];
  return s;
}

void BM_SanitizeString(benchmark::State& state) {
  std::string input = HazardString(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(SanitizeString(input));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SanitizeString)->RangeMultiplier(10)->Range(1'000, 100'000)->Complexity(benchmark::oN);

void BM_SanitizeNumeric(benchmark::State& state) {
  std::string input(static_cast<std::size_t>(state.range(0)), '7');
  for (auto _ : state) benchmark::DoNotOptimize(SanitizeNumeric(input));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SanitizeNumeric)->RangeMultiplier(10)->Range(1'000, 100'000)->Complexity(benchmark::oN);

void BM_AnalyzeCorpus(benchmark::State& state, const char* program, const char* schema_file) {
  Program p = Load(program);
  Schema schema = LoadSchema(ReadCorpus(schema_file));
  for (auto _ : state) benchmark::DoNotOptimize(AnalyzeProgram(p, schema));
}
BENCHMARK_CAPTURE(BM_AnalyzeCorpus, bookstore, "bookstore_mini.qs", "bookstore.schema");
BENCHMARK_CAPTURE(BM_AnalyzeCorpus, classifieds, "classifieds.qs", "apps.schema");
BENCHMARK_CAPTURE(BM_AnalyzeCorpus, portal, "portal.qs", "apps.schema");

// Chain of n `+=` statements, each appending either a literal or an input.
void BM_AnalyzeConcatChain(benchmark::State& state) {
  std::string src = "var q = \"SELECT * FROM BOOKS WHERE author = '\";\n";
  for (std::int64_t i = 0; i < state.range(0); ++i) {
    src += i % 2 ? "q += \"x\";\n" : "q += getParam(\"a" + std::to_string(i) + "\");\n";
  }
  src += "q += \"'\";\nexecuteQuery(q);\n";
  ParseOptions o;
  Program p = ParseProgram(src, o);
  Schema schema = LoadSchema(ReadCorpus("bookstore.schema"));
  for (auto _ : state) benchmark::DoNotOptimize(AnalyzeProgram(p, schema));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AnalyzeConcatChain)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_EvaluateSuite(benchmark::State& state) {
  Program p = Load("classifieds.qs");
  Schema schema = LoadSchema(ReadCorpus("apps.schema"));
  AnalysisResult a = AnalyzeProgram(p, schema);
  std::vector<TestInput> suite = ParseTestSuite(ReadCorpus("classifieds.suite"));
  EvalOptions options;
  options.jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Evaluate(p, *a.instrumented, schema, suite, options));
}
BENCHMARK(BM_EvaluateSuite)->Arg(1)->Arg(4)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
