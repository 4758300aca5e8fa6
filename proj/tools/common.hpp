// Shared plumbing for the ot subcommands.
#pragma once

#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "otk/manifest.hpp"
#include "otk/util.hpp"

namespace ot_cli {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitUsage = 2;

inline int fail_usage(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return kExitUsage;
}

inline std::string must_read(const std::filesystem::path& path) {
    auto content = otk::read_file(path);
    if (!content) throw std::runtime_error("cannot read " + path.string());
    return *content;
}

/// results[i] = f(i), computed by up to `parallelism` workers. Output is
/// positional, so parallelism never changes it.
template <typename Fn>
void parallel_for_indexed(std::size_t count, int parallelism, Fn&& f) {
    if (count == 0) return;
    const int threads = std::max(1, std::min<int>(parallelism, static_cast<int>(count)));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            f(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

struct ScoreOptions {
    std::string input;
    std::string output;
    std::string judge_config;
    bool mock = false;
    int parallelism = 1;
    bool no_timestamp = false;
    std::vector<std::string> mock_fail_tasks;  // testing hook
};

struct AnalyzeOptions {
    std::string scores;
    std::string registry;
    std::string out_dir;
    double size_boundary_b = 14.0;
    bool no_timestamp = false;
};

struct SelectOptions {
    std::string scores;
    int k = 1;
    double z = 1.96;
    std::string output;
    std::string model_filter;
    std::string estimator = "exact";
    std::uint64_t seed = 0;
    int mc_samples = 20000;
    bool no_timestamp = false;
    std::vector<std::string> cost_rows;  // label=rate,cost
};

struct SynthOptions {
    std::string config;
    std::int64_t seed = -1;  // <0: take the config's seed
    std::string output;
    std::string labels;
    bool no_timestamp = false;
};

struct ReportOptions {
    std::string analysis_dir;
    std::string format = "csv";
    std::string out_dir;
    bool no_timestamp = false;
};

struct ValidateOptions {
    std::string input;
};

int run_score(const ScoreOptions& opts);
int run_analyze(const AnalyzeOptions& opts);
int run_select(const SelectOptions& opts);
int run_synth(const SynthOptions& opts);
int run_report(const ReportOptions& opts);
int run_validate(const ValidateOptions& opts);

}  // namespace ot_cli
