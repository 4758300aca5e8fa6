#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "otk/stats.hpp"

namespace otk::metrics {

struct Sample {
    int sample_index = 0;
    double score = 0.0;  // overthinking score, 0..10
    bool resolved = false;
    double cost_usd = 0.0;
    int step_count = 0;
};

struct TaskSamples {
    std::string task_id;
    std::vector<Sample> samples;
};

struct SelectionOutcome {
    std::string task_id;
    int sample_index = 0;
    double score = 0.0;
    bool resolved = false;
    bool tie_broken = false;
};

/// Selection priority: lower score first, ties broken by fewer steps, then
/// lower cost, then lower sample_index. sample_index is unique per task, so
/// this is a strict total order.
bool selection_precedes(const Sample& a, const Sample& b);

/// Pick the minimal-priority sample of a non-empty subset. tie_broken is set
/// when at least two samples share the minimal score.
SelectionOutcome select_best(const std::string& task_id, std::span<const Sample> subset);

/// Mean over tasks of the probability that a uniformly random k-subset of a
/// task's samples contains at least one resolved sample:
/// 1 - C(n-c, k) / C(n, k). Every task needs n >= k.
double pass_at_k(std::span<const TaskSamples> tasks, int k);

enum class Estimator {
    exact,        // closed-form rank weights, exact for any C(n, k)
    monte_carlo,  // seeded subset sampling, mainly for cross-checking
};

struct LowestOverthinkingOptions {
    Estimator estimator = Estimator::exact;
    std::uint64_t seed = 0;       // Monte Carlo only; per-task stream derived from task_id
    int mc_samples = 20000;       // Monte Carlo draws per task
};

/// Mean over tasks of E[selected sample is resolved] where the expectation
/// runs over all C(n, k) k-subsets and selection follows select_best.
double lowest_overthinking_at_k(std::span<const TaskSamples> tasks, int k,
                                const LowestOverthinkingOptions& opts = {});

struct CostRow {
    std::string label;
    double resolution_rate = 0.0;  // fraction or percent, caller's unit
    double total_cost_usd = 0.0;
};

struct CostDelta {
    std::string alternative;
    std::string baseline;
    double cost_delta = 0.0;       // 1 - cost(alternative) / cost(baseline)
    int cost_delta_pct = 0;        // rounded to whole percent for reports
    double rate_delta = 0.0;       // rate(alternative) - rate(baseline)
};

/// All ordered pairs (alternative, baseline) with relative cost savings and
/// rate deltas. Costs must be > 0.
std::vector<CostDelta> cost_summary(std::span<const CostRow> rows);

struct MetricReport {
    int k = 0;
    double pass_at_k = 0.0;
    double lowest_overthinking_at_k = 0.0;
    stats::WilsonInterval wilson_pass;
    stats::WilsonInterval wilson_lo;
    int n_tasks = 0;
    double total_cost_usd = 0.0;  // sum over tasks of k * mean sample cost
};

MetricReport metric_report(std::span<const TaskSamples> tasks, int k, double z = 1.96,
                           const LowestOverthinkingOptions& opts = {});

/// Concrete per-task choice over the first k samples in sample_index order
/// (the deterministic k-subset reported in selection CSVs).
std::vector<SelectionOutcome> select_first_k(std::span<const TaskSamples> tasks, int k);

/// Per-task variants of the two rates, used for reporting.
double task_pass_at_k(const TaskSamples& task, int k);
double task_lowest_overthinking_at_k(const TaskSamples& task, int k,
                                     const LowestOverthinkingOptions& opts = {});

}  // namespace otk::metrics
