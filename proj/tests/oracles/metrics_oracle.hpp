// Exhaustive subset-enumeration reference for the pass@k and
// lowest-overthinking@k estimators. Walks every C(n, k) subset directly and
// re-states the selection rule from scratch. Test-only code.
#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "otk/metrics.hpp"

namespace oracle {

/// Visit every k-combination of {0, .., n-1} in lexicographic order.
template <typename Fn>
void for_each_combination(int n, int k, Fn&& fn) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == i + n - k) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) {
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
}

/// Restatement of the documented tie-break: score, then step count, then
/// cost, then sample_index.
inline const otk::metrics::Sample* pick_min(const std::vector<const otk::metrics::Sample*>& subset) {
    const otk::metrics::Sample* best = nullptr;
    for (const auto* s : subset) {
        if (best == nullptr) {
            best = s;
            continue;
        }
        bool better = false;
        if (s->score < best->score) {
            better = true;
        } else if (s->score == best->score) {
            if (s->step_count < best->step_count) {
                better = true;
            } else if (s->step_count == best->step_count) {
                if (s->cost_usd < best->cost_usd) {
                    better = true;
                } else if (s->cost_usd == best->cost_usd && s->sample_index < best->sample_index) {
                    better = true;
                }
            }
        }
        if (better) best = s;
    }
    return best;
}

inline double task_pass_at_k(const otk::metrics::TaskSamples& task, int k) {
    const int n = static_cast<int>(task.samples.size());
    if (k < 1 || k > n) throw std::invalid_argument("oracle pass@k: bad k");
    long long subsets = 0, hit = 0;
    for_each_combination(n, k, [&](const std::vector<int>& idx) {
        ++subsets;
        for (int i : idx) {
            if (task.samples[static_cast<std::size_t>(i)].resolved) {
                ++hit;
                return;
            }
        }
    });
    return static_cast<double>(hit) / static_cast<double>(subsets);
}

inline double task_lo_at_k(const otk::metrics::TaskSamples& task, int k) {
    const int n = static_cast<int>(task.samples.size());
    if (k < 1 || k > n) throw std::invalid_argument("oracle lo@k: bad k");
    long long subsets = 0, hit = 0;
    std::vector<const otk::metrics::Sample*> subset;
    for_each_combination(n, k, [&](const std::vector<int>& idx) {
        ++subsets;
        subset.clear();
        for (int i : idx) subset.push_back(&task.samples[static_cast<std::size_t>(i)]);
        if (pick_min(subset)->resolved) ++hit;
    });
    return static_cast<double>(hit) / static_cast<double>(subsets);
}

inline double pass_at_k(std::span<const otk::metrics::TaskSamples> tasks, int k) {
    double sum = 0.0;
    for (const auto& t : tasks) sum += oracle::task_pass_at_k(t, k);
    return sum / static_cast<double>(tasks.size());
}

inline double lo_at_k(std::span<const otk::metrics::TaskSamples> tasks, int k) {
    double sum = 0.0;
    for (const auto& t : tasks) sum += oracle::task_lo_at_k(t, k);
    return sum / static_cast<double>(tasks.size());
}

}  // namespace oracle
