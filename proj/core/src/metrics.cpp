#include "otk/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "otk/util.hpp"

namespace otk::metrics {

namespace {

void require_k_fits(const TaskSamples& task, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (static_cast<std::size_t>(k) > task.samples.size()) {
        throw std::invalid_argument("task '" + task.task_id + "' has " +
                                    std::to_string(task.samples.size()) +
                                    " samples, fewer than k=" + std::to_string(k));
    }
}

std::vector<const Sample*> by_selection_priority(const TaskSamples& task) {
    std::vector<const Sample*> order;
    order.reserve(task.samples.size());
    for (const auto& s : task.samples) order.push_back(&s);
    std::sort(order.begin(), order.end(),
              [](const Sample* a, const Sample* b) { return selection_precedes(*a, *b); });
    return order;
}

double task_lo_exact(const TaskSamples& task, int k) {
    const auto order = by_selection_priority(task);
    const int n = static_cast<int>(order.size());
    // P(rank-j sample is the subset minimum) = C(n-1-j, k-1) / C(n, k).
    // Forward recurrence: w_0 = k/n, w_{j+1} = w_j * (n-k-j) / (n-1-j).
    double w = static_cast<double>(k) / static_cast<double>(n);
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
        if (order[j]->resolved) total += w;
        const int num = n - k - j;
        if (num <= 0) break;  // remaining ranks can never be the minimum
        w *= static_cast<double>(num) / static_cast<double>(n - 1 - j);
    }
    return total;
}

double task_lo_monte_carlo(const TaskSamples& task, int k, std::uint64_t seed, int draws) {
    const int n = static_cast<int>(task.samples.size());
    std::mt19937_64 rng(derive_seed(seed, task.task_id));
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::vector<Sample> subset(static_cast<std::size_t>(k));
    long long hits = 0;
    for (int d = 0; d < draws; ++d) {
        // Partial Fisher-Yates: first k positions become the subset.
        for (int i = 0; i < k; ++i) {
            const int j = i + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n - i)));
            std::swap(idx[i], idx[j]);
            subset[static_cast<std::size_t>(i)] = task.samples[static_cast<std::size_t>(idx[i])];
        }
        if (select_best(task.task_id, subset).resolved) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(draws);
}

}  // namespace

bool selection_precedes(const Sample& a, const Sample& b) {
    if (a.score != b.score) return a.score < b.score;
    if (a.step_count != b.step_count) return a.step_count < b.step_count;
    if (a.cost_usd != b.cost_usd) return a.cost_usd < b.cost_usd;
    return a.sample_index < b.sample_index;
}

SelectionOutcome select_best(const std::string& task_id, std::span<const Sample> subset) {
    if (subset.empty()) throw std::invalid_argument("select_best: empty subset");
    for (const auto& s : subset) {
        if (!std::isfinite(s.score)) {
            throw std::invalid_argument("select_best: missing or non-finite score in task '" +
                                        task_id + "'");
        }
    }
    const Sample* best = &subset[0];
    for (const auto& s : subset.subspan(1)) {
        if (selection_precedes(s, *best)) best = &s;
    }
    int min_score_count = 0;
    for (const auto& s : subset) {
        if (s.score == best->score) ++min_score_count;
    }
    return SelectionOutcome{task_id, best->sample_index, best->score, best->resolved,
                            min_score_count > 1};
}

double task_pass_at_k(const TaskSamples& task, int k) {
    require_k_fits(task, k);
    const int n = static_cast<int>(task.samples.size());
    int c = 0;
    for (const auto& s : task.samples) {
        if (s.resolved) ++c;
    }
    // C(n-c, k) / C(n, k) as a running product, zero when n-c < k.
    if (n - c < k) return 1.0;
    double ratio = 1.0;
    for (int i = 0; i < k; ++i) {
        ratio *= static_cast<double>(n - c - i) / static_cast<double>(n - i);
    }
    return 1.0 - ratio;
}

double pass_at_k(std::span<const TaskSamples> tasks, int k) {
    if (tasks.empty()) throw std::invalid_argument("pass_at_k: no tasks");
    double sum = 0.0;
    for (const auto& t : tasks) sum += task_pass_at_k(t, k);
    return sum / static_cast<double>(tasks.size());
}

double task_lowest_overthinking_at_k(const TaskSamples& task, int k,
                                     const LowestOverthinkingOptions& opts) {
    require_k_fits(task, k);
    for (const auto& s : task.samples) {
        if (!std::isfinite(s.score)) {
            throw std::invalid_argument("task '" + task.task_id + "': sample " +
                                        std::to_string(s.sample_index) + " has no valid score");
        }
    }
    if (opts.estimator == Estimator::monte_carlo) {
        return task_lo_monte_carlo(task, k, opts.seed, opts.mc_samples);
    }
    return task_lo_exact(task, k);
}

double lowest_overthinking_at_k(std::span<const TaskSamples> tasks, int k,
                                const LowestOverthinkingOptions& opts) {
    if (tasks.empty()) throw std::invalid_argument("lowest_overthinking_at_k: no tasks");
    double sum = 0.0;
    for (const auto& t : tasks) sum += task_lowest_overthinking_at_k(t, k, opts);
    return sum / static_cast<double>(tasks.size());
}

std::vector<CostDelta> cost_summary(std::span<const CostRow> rows) {
    for (const auto& r : rows) {
        if (!(r.total_cost_usd > 0.0)) {
            throw std::invalid_argument("cost_summary: non-positive cost for '" + r.label + "'");
        }
    }
    std::vector<CostDelta> out;
    for (const auto& alt : rows) {
        for (const auto& base : rows) {
            if (&alt == &base) continue;
            CostDelta d;
            d.alternative = alt.label;
            d.baseline = base.label;
            d.cost_delta = 1.0 - alt.total_cost_usd / base.total_cost_usd;
            d.cost_delta_pct = static_cast<int>(std::lround(d.cost_delta * 100.0));
            d.rate_delta = alt.resolution_rate - base.resolution_rate;
            out.push_back(std::move(d));
        }
    }
    return out;
}

MetricReport metric_report(std::span<const TaskSamples> tasks, int k, double z,
                           const LowestOverthinkingOptions& opts) {
    MetricReport rep;
    rep.k = k;
    rep.n_tasks = static_cast<int>(tasks.size());
    rep.pass_at_k = pass_at_k(tasks, k);
    rep.lowest_overthinking_at_k = lowest_overthinking_at_k(tasks, k, opts);
    const int pass_successes = static_cast<int>(std::lround(rep.pass_at_k * rep.n_tasks));
    const int lo_successes =
        static_cast<int>(std::lround(rep.lowest_overthinking_at_k * rep.n_tasks));
    rep.wilson_pass = stats::wilson_interval(pass_successes, rep.n_tasks, z);
    rep.wilson_lo = stats::wilson_interval(lo_successes, rep.n_tasks, z);
    for (const auto& t : tasks) {
        double mean_cost = 0.0;
        for (const auto& s : t.samples) mean_cost += s.cost_usd;
        mean_cost /= static_cast<double>(t.samples.size());
        rep.total_cost_usd += static_cast<double>(k) * mean_cost;
    }
    return rep;
}

std::vector<SelectionOutcome> select_first_k(std::span<const TaskSamples> tasks, int k) {
    std::vector<SelectionOutcome> out;
    out.reserve(tasks.size());
    for (const auto& t : tasks) {
        require_k_fits(t, k);
        std::vector<Sample> subset(t.samples.begin(), t.samples.end());
        std::sort(subset.begin(), subset.end(),
                  [](const Sample& a, const Sample& b) { return a.sample_index < b.sample_index; });
        subset.resize(static_cast<std::size_t>(k));
        out.push_back(select_best(t.task_id, subset));
    }
    return out;
}

}  // namespace otk::metrics
