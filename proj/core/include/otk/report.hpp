#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "otk/manifest.hpp"
#include "otk/metrics.hpp"
#include "otk/registry.hpp"
#include "otk/scores.hpp"

namespace otk::report {

/// Marker written into regression cells when a group has no usable variation
/// in x (fewer than two models or all means equal).
inline constexpr const char* kInsufficientVariation = "insufficient variation";

/// "3.505 ± 1.774" with three decimals; bare mean when the std is absent.
std::string format_mean_std(double mean, std::optional<double> stddev);

// ---- analysis over a scored corpus ----

struct GroupMeanRow {
    std::string axis;
    std::string label;
    int n = 0;  // trajectories in the group
    double mean = 0.0;
    std::optional<double> stddev;
};

struct RegressionRow {
    std::string group;  // reasoning / non-reasoning
    int n_models = 0;
    bool degenerate = false;  // insufficient variation in x
    double beta0 = 0.0;
    double beta1 = 0.0;
    double r_squared = 0.0;
    std::optional<double> p_value;
};

struct ScatterRow {
    std::string model_id;
    int n = 0;  // trajectories for this model
    double mean_score = 0.0;
    double resolution_pct = 0.0;  // 0..100
    bool reasoning = false;
};

struct Analysis {
    std::vector<GroupMeanRow> group_means;   // reasoning, family, size, fc, effort axes
    std::vector<RegressionRow> regressions;  // per reasoning group, over per-model points
    std::vector<ScatterRow> scatter;         // one row per model
};

/// Group means over trajectories, per-model scatter points, and the
/// per-group score-vs-resolution regression. Unknown model ids raise
/// std::runtime_error listing the offenders.
Analysis analyze(std::span<const ScoreRecord> records, const registry::Registry& registry,
                 const registry::GroupingOptions& options = {});

nlohmann::json analysis_to_json(const Analysis& analysis, const RunManifest& manifest);
Analysis analysis_from_json(const nlohmann::json& j);

// ---- CSV / JSON emission (manifest in the first comment line) ----

std::string group_means_csv(std::span<const GroupMeanRow> rows, const RunManifest& manifest);
std::string regression_csv(std::span<const RegressionRow> rows, const RunManifest& manifest);
std::string scatter_csv(std::span<const ScatterRow> rows, const RunManifest& manifest);

/// One regression-table line as printed into regression.csv, exposed for
/// format pinning: "group,n,beta0,beta1,r_squared,p_value".
std::string regression_csv_row(const RegressionRow& row);

// Fig. 1 companion: fitted line samples y = beta0 + beta1 * x per group.
struct FittedLinePoint {
    std::string group;
    double beta0 = 0.0;
    double beta1 = 0.0;
    double x = 0.0;
    double y = 0.0;
};

std::vector<FittedLinePoint> fitted_line_points(std::span<const RegressionRow> rows,
                                                double x_min = 0.0, double x_max = 10.0,
                                                int points_per_line = 21);
std::string fig1_lines_csv(std::span<const FittedLinePoint> points, const RunManifest& manifest);
nlohmann::json fig1_lines_json(std::span<const FittedLinePoint> points,
                               const RunManifest& manifest);
nlohmann::json fig1_scatter_json(std::span<const ScatterRow> rows, const RunManifest& manifest);

// Fig. 3 companion: pass@k and lowest-overthinking@k vs k with Wilson bounds.
struct Fig3Row {
    int k = 0;
    std::string metric;  // "pass" or "lowest_overthinking"
    double rate = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    int n_tasks = 0;
};

std::vector<Fig3Row> fig3_rows(std::span<const metrics::MetricReport> reports);
std::string fig3_csv(std::span<const Fig3Row> rows, const RunManifest& manifest);
nlohmann::json fig3_json(std::span<const Fig3Row> rows, const RunManifest& manifest);

// Selection artifacts.
nlohmann::json metric_report_json(const metrics::MetricReport& report,
                                  const RunManifest& manifest);
metrics::MetricReport metric_report_from_json(const nlohmann::json& j);

struct SelectionRow {
    std::string task_id;
    int n_samples = 0;
    int chosen_sample_index = 0;
    double chosen_score = 0.0;
    bool chosen_resolved = false;
    bool tie_broken = false;
    double pass_at_k = 0.0;
    double lowest_overthinking_at_k = 0.0;
};

std::string selection_csv(std::span<const SelectionRow> rows, const RunManifest& manifest);

std::string cost_summary_csv(std::span<const metrics::CostDelta> deltas,
                             const RunManifest& manifest);

}  // namespace otk::report
