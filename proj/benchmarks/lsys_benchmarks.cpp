#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "lsys/lsys.hpp"

using namespace lsys;

namespace {

std::vector<Word> sample_words(std::size_t n) {
    GenerationConfig c;
    c.target_unique = n;
    c.master_seed = 1;
    std::vector<Word> out;
    for (const auto& e : generate(c).entries) out.push_back(parse(e.word, Scheme::Char));
    return out;
}

const std::vector<Word>& words() {
    static const std::vector<Word> w = sample_words(512);
    return w;
}

void BM_Derive(benchmark::State& state) {
    const Grammar g = Grammar::default_grammar();
    const int steps = static_cast<int>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(derive(g, steps, seed++));
}
BENCHMARK(BM_Derive)->DenseRange(1, 7, 2);

void BM_RewriteCanonical(benchmark::State& state) {
    const auto& ws = words();
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(rewrite_canonical(ws[i++ % ws.size()]));
}
BENCHMARK(BM_RewriteCanonical);

void BM_Check(benchmark::State& state) {
    const auto& ws = words();
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(check(ws[i++ % ws.size()]));
}
BENCHMARK(BM_Check);

void BM_Render(benchmark::State& state) {
    const auto& ws = words();
    const RenderOptions options{25.0, 100.0, static_cast<int>(state.range(0)), kDefaultMargin};
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(render_word(ws[i++ % ws.size()], options));
}
BENCHMARK(BM_Render)->Arg(128)->Arg(512);

void BM_Generate(benchmark::State& state) {
    GenerationConfig c;
    c.target_unique = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(generate(c));
}
BENCHMARK(BM_Generate)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
