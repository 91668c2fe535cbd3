#include <benchmark/benchmark.h>

#include <notrade/agreement.hpp>
#include <notrade/announcements.hpp>
#include <notrade/enumeration.hpp>
#include <notrade/epistemic.hpp>
#include <notrade/examples.hpp>
#include <notrade/model_io.hpp>
#include <notrade/scoring.hpp>
#include <notrade/verifiability.hpp>

using namespace notrade;

namespace {

Model sample_model(int n_states, int n_agents, unsigned seed) {
    Rng rng(seed);
    return random_model(rng, n_states, n_agents);
}

Security sample_security(int n_states, unsigned seed) {
    Rng rng(seed);
    return random_security(rng, n_states);
}

}  // namespace

static void BM_Reach(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Model m = sample_model(n, 3, 11);
    for (auto _ : state)
        for (StateIdx s = 0; s < m.n_states(); ++s)
            benchmark::DoNotOptimize(reach(m.profile(), s));
}
BENCHMARK(BM_Reach)->Arg(6)->Arg(12)->Arg(24);

static void BM_ThresholdVerdict(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Model m = sample_model(n, 3, 12);
    Security x = sample_security(n, 13);
    for (auto _ : state)
        for (StateIdx s = 0; s < m.n_states(); ++s)
            benchmark::DoNotOptimize(is_threshold_verifiable(m.profile(), x, s));
}
BENCHMARK(BM_ThresholdVerdict)->Arg(6)->Arg(12)->Arg(24);

static void BM_DetectTrade(benchmark::State& state) {
    ModelDocument doc = example_one();
    const Security& x = doc.securities.at("X");
    for (auto _ : state) benchmark::DoNotOptimize(detect_ck_trade(doc.model, x, 0));
}
BENCHMARK(BM_DetectTrade);

static void BM_SynthesizePriors(benchmark::State& state) {
    ModelDocument doc = example_one();
    const Security& x = doc.securities.at("X");
    for (auto _ : state)
        benchmark::DoNotOptimize(synthesize_disagreement_priors(doc.model.profile(), x, 0));
}
BENCHMARK(BM_SynthesizePriors);

static void BM_Announcements(benchmark::State& state) {
    ModelDocument doc = example_two();
    const Security& x = doc.securities.at("X");
    for (auto _ : state)
        benchmark::DoNotOptimize(run_announcements(doc.model, x, 0, {0, 1}));
}
BENCHMARK(BM_Announcements);

static void BM_MarketQuadratic(benchmark::State& state) {
    ModelDocument doc = example_two();
    const Security& x = doc.securities.at("X");
    Rat y0 = default_initial_prediction(x);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            run_market(doc.model, x, 0, ScoringRule::quadratic(), y0, {0, 1}));
}
BENCHMARK(BM_MarketQuadratic);

static void BM_EnumerateTheorem(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_theorem(n, 2));
}
BENCHMARK(BM_EnumerateTheorem)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_SerializeParseRoundTrip(benchmark::State& state) {
    ModelDocument doc = example_two();
    for (auto _ : state) {
        std::string text = serialize_model(doc);
        benchmark::DoNotOptimize(parse_model(text));
    }
}
BENCHMARK(BM_SerializeParseRoundTrip);

BENCHMARK_MAIN();
