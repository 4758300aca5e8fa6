#include <benchmark/benchmark.h>

#include <random>

#include "otk/judge.hpp"
#include "otk/metrics.hpp"
#include "otk/patterns.hpp"
#include "otk/stats.hpp"
#include "otk/synth.hpp"
#include "otk/trajectory.hpp"
#include "otk/util.hpp"

namespace {

otk::synth::SynthCorpus demo_corpus(int n_tasks, int samples) {
    otk::synth::SynthConfig cfg;
    cfg.n_tasks = n_tasks;
    cfg.samples_per_task = samples;
    cfg.p_paralysis = 0.3;
    cfg.p_rogue = 0.3;
    cfg.p_premature = 0.2;
    cfg.seed = 4242;
    return otk::synth::generate_corpus(cfg);
}

std::vector<otk::metrics::TaskSamples> demo_tasks(int n_tasks, int samples) {
    std::mt19937_64 rng(17);
    std::vector<otk::metrics::TaskSamples> tasks;
    for (int t = 0; t < n_tasks; ++t) {
        otk::metrics::TaskSamples task;
        task.task_id = "task-" + std::to_string(t);
        for (int s = 0; s < samples; ++s) {
            task.samples.push_back({s, static_cast<double>(otk::uniform_below(rng, 11)),
                                    otk::bernoulli(rng, 0.4), 1.0, 10});
        }
        tasks.push_back(std::move(task));
    }
    return tasks;
}

void bm_detect_all(benchmark::State& state) {
    auto corpus = demo_corpus(64, 2);
    std::size_t i = 0;
    for (auto _ : state) {
        auto flags = otk::patterns::detect_all(corpus.trajectories[i % corpus.trajectories.size()]);
        benchmark::DoNotOptimize(flags);
        ++i;
    }
}
BENCHMARK(bm_detect_all);

void bm_render_judge_view(benchmark::State& state) {
    auto corpus = demo_corpus(32, 1);
    std::size_t i = 0;
    for (auto _ : state) {
        auto view = otk::render_judge_view(corpus.trajectories[i % corpus.trajectories.size()]);
        benchmark::DoNotOptimize(view);
        ++i;
    }
}
BENCHMARK(bm_render_judge_view);

void bm_build_prompt(benchmark::State& state) {
    auto corpus = demo_corpus(1, 1);
    auto view = otk::render_judge_view(corpus.trajectories[0]);
    for (auto _ : state) {
        auto prompt = otk::judge::build_prompt(view);
        benchmark::DoNotOptimize(prompt);
    }
}
BENCHMARK(bm_build_prompt);

void bm_lowest_overthinking_at_k(benchmark::State& state) {
    auto tasks = demo_tasks(static_cast<int>(state.range(0)), 8);
    for (auto _ : state) {
        const double lo = otk::metrics::lowest_overthinking_at_k(tasks, 4);
        benchmark::DoNotOptimize(lo);
    }
}
BENCHMARK(bm_lowest_overthinking_at_k)->Arg(100)->Arg(500);

void bm_linear_regression(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::vector<otk::stats::DataPoint> pts;
    for (int i = 0; i < 19; ++i) {
        pts.push_back({otk::uniform01(rng) * 10.0, otk::uniform01(rng) * 100.0});
    }
    for (auto _ : state) {
        auto fit = otk::stats::linear_regression(pts);
        benchmark::DoNotOptimize(fit);
    }
}
BENCHMARK(bm_linear_regression);

void bm_parse_corpus(benchmark::State& state) {
    auto corpus = demo_corpus(64, 2);
    std::string text;
    for (const auto& t : corpus.trajectories) text += otk::serialize(t) + "\n";
    for (auto _ : state) {
        auto parsed = otk::parse_corpus_text(text);
        benchmark::DoNotOptimize(parsed);
    }
}
BENCHMARK(bm_parse_corpus);

}  // namespace

BENCHMARK_MAIN();
