// Serial vs OpenMP counting kernels on synthetic token streams.
//
//   cmake --build build --target bench_counting
//   ./build/benchmarks/bench_counting

#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "qcorpus/counting.hpp"

using namespace qcorpus;

namespace {

TokenStream synthetic_stream(std::size_t n_tokens, std::uint64_t seed) {
    static const std::vector<std::string> vocab = [] {
        std::vector<std::string> v{"horse", "whinnies", "bear", "growls"};
        for (int i = 0; i < 60; ++i) v.push_back("w" + std::to_string(i));
        return v;
    }();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
    TokenStream s;
    s.source = "synthetic";
    s.tokens.reserve(n_tokens);
    for (std::size_t i = 0; i < n_tokens; ++i) s.tokens.push_back(vocab[pick(rng)]);
    return s;
}

std::vector<TokenStream> synthetic_corpus(std::size_t n_docs, std::size_t tokens_per_doc) {
    std::vector<TokenStream> docs;
    docs.reserve(n_docs);
    for (std::size_t d = 0; d < n_docs; ++d)
        docs.push_back(synthetic_stream(tokens_per_doc, 1000 + d));
    return docs;
}

const TokenStream& big_stream() {
    static const TokenStream s = synthetic_stream(1 << 21, 7);
    return s;
}

const std::vector<TokenStream>& corpus() {
    static const std::vector<TokenStream> docs = synthetic_corpus(256, 1 << 13);
    return docs;
}

void BM_exact_serial(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(count_exact(big_stream(), "horse", "whinnies"));
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(big_stream().tokens.size()));
}

void BM_exact_omp(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(count_exact_omp(big_stream(), "horse", "whinnies"));
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(big_stream().tokens.size()));
}

void BM_collocate_serial(benchmark::State& state) {
    const int window = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(count_collocate(big_stream(), "horse", "growls", window));
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(big_stream().tokens.size()));
}

void BM_collocate_omp(benchmark::State& state) {
    const int window = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(count_collocate_omp(big_stream(), "horse", "growls", window));
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(big_stream().tokens.size()));
}

void BM_corpus_serial(benchmark::State& state) {
    const WordPair pair{"horse", "growls", 1};
    for (auto _ : state)
        benchmark::DoNotOptimize(corpus_count(corpus(), pair, Mode::Collocates, 9));
}

void BM_corpus_omp(benchmark::State& state) {
    const WordPair pair{"horse", "growls", 1};
    for (auto _ : state)
        benchmark::DoNotOptimize(corpus_count_omp(corpus(), pair, Mode::Collocates, 9));
}

BENCHMARK(BM_exact_serial);
BENCHMARK(BM_exact_omp);
BENCHMARK(BM_collocate_serial)->Arg(9);
BENCHMARK(BM_collocate_omp)->Arg(9);
BENCHMARK(BM_corpus_serial);
BENCHMARK(BM_corpus_omp);

} // namespace

BENCHMARK_MAIN();
