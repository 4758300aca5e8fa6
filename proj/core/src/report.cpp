#include "otk/report.hpp"

#include <algorithm>
#include <map>

#include "otk/stats.hpp"
#include "otk/util.hpp"

namespace otk::report {

using nlohmann::json;

std::string format_mean_std(double mean, std::optional<double> stddev) {
    if (!stddev) return format_fixed(mean, 3);
    return format_fixed(mean, 3) + " ± " + format_fixed(*stddev, 3);
}

namespace {

constexpr registry::GroupAxis kMeanAxes[] = {
    registry::GroupAxis::reasoning,         registry::GroupAxis::family,
    registry::GroupAxis::size_bucket,       registry::GroupAxis::function_calling,
    registry::GroupAxis::reasoning_effort,
};

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return std::string(buf);
}

}  // namespace

Analysis analyze(std::span<const ScoreRecord> records, const registry::Registry& registry,
                 const registry::GroupingOptions& options) {
    Analysis out;

    std::vector<std::string> model_ids;
    model_ids.reserve(records.size());
    for (const auto& r : records) model_ids.push_back(r.key.model_id);

    // Group means over trajectories, one table per axis.
    for (const auto axis : kMeanAxes) {
        auto groups = registry::group_indices(model_ids, registry, axis, options);
        for (const auto& [label, indices] : groups) {
            std::vector<double> scores;
            scores.reserve(indices.size());
            for (auto i : indices) scores.push_back(records[i].score);
            const auto ms = stats::mean_std(scores);
            out.group_means.push_back(
                {std::string(registry::to_string(axis)), label, ms.n, ms.mean, ms.stddev});
        }
    }

    // Per-model scatter points.
    std::map<std::string, std::vector<const ScoreRecord*>> by_model;
    for (const auto& r : records) by_model[r.key.model_id].push_back(&r);
    for (const auto& [model_id, recs] : by_model) {
        ScatterRow row;
        row.model_id = model_id;
        row.n = static_cast<int>(recs.size());
        double score_sum = 0.0;
        int resolved = 0;
        for (const auto* r : recs) {
            score_sum += r->score;
            if (r->resolved) ++resolved;
        }
        row.mean_score = score_sum / static_cast<double>(recs.size());
        row.resolution_pct = 100.0 * static_cast<double>(resolved) / static_cast<double>(recs.size());
        row.reasoning = registry.find(model_id)->reasoning;
        out.scatter.push_back(std::move(row));
    }

    // Score-vs-resolution regression per reasoning group, one point per model.
    for (const bool reasoning_group : {true, false}) {
        RegressionRow row;
        row.group = reasoning_group ? "reasoning" : "non-reasoning";
        std::vector<stats::DataPoint> points;
        for (const auto& s : out.scatter) {
            if (s.reasoning == reasoning_group) {
                points.push_back({s.mean_score, s.resolution_pct});
            }
        }
        row.n_models = static_cast<int>(points.size());
        if (points.size() < 2) {
            row.degenerate = true;
        } else {
            try {
                const auto fit = stats::linear_regression(points);
                row.beta0 = fit.beta0;
                row.beta1 = fit.beta1;
                row.r_squared = fit.r_squared;
                row.p_value = fit.p_value;
            } catch (const stats::DegenerateDesignError&) {
                row.degenerate = true;
            }
        }
        out.regressions.push_back(std::move(row));
    }
    return out;
}

json analysis_to_json(const Analysis& analysis, const RunManifest& manifest) {
    json j;
    j["manifest"] = to_json(manifest);
    j["group_means"] = json::array();
    for (const auto& g : analysis.group_means) {
        json row;
        row["axis"] = g.axis;
        row["label"] = g.label;
        row["n"] = g.n;
        row["mean"] = g.mean;
        row["std"] = g.stddev ? json(*g.stddev) : json(nullptr);
        j["group_means"].push_back(std::move(row));
    }
    j["regressions"] = json::array();
    for (const auto& r : analysis.regressions) {
        json row;
        row["group"] = r.group;
        row["n_models"] = r.n_models;
        row["degenerate"] = r.degenerate;
        row["beta0"] = r.beta0;
        row["beta1"] = r.beta1;
        row["r_squared"] = r.r_squared;
        row["p_value"] = r.p_value ? json(*r.p_value) : json(nullptr);
        j["regressions"].push_back(std::move(row));
    }
    j["scatter"] = json::array();
    for (const auto& s : analysis.scatter) {
        json row;
        row["model_id"] = s.model_id;
        row["n"] = s.n;
        row["mean_score"] = s.mean_score;
        row["resolution_pct"] = s.resolution_pct;
        row["reasoning"] = s.reasoning;
        j["scatter"].push_back(std::move(row));
    }
    return j;
}

Analysis analysis_from_json(const json& j) {
    Analysis a;
    for (const auto& row : j.at("group_means")) {
        GroupMeanRow g;
        g.axis = row.at("axis").get<std::string>();
        g.label = row.at("label").get<std::string>();
        g.n = row.at("n").get<int>();
        g.mean = row.at("mean").get<double>();
        if (!row.at("std").is_null()) g.stddev = row.at("std").get<double>();
        a.group_means.push_back(std::move(g));
    }
    for (const auto& row : j.at("regressions")) {
        RegressionRow r;
        r.group = row.at("group").get<std::string>();
        r.n_models = row.at("n_models").get<int>();
        r.degenerate = row.at("degenerate").get<bool>();
        r.beta0 = row.at("beta0").get<double>();
        r.beta1 = row.at("beta1").get<double>();
        r.r_squared = row.at("r_squared").get<double>();
        if (!row.at("p_value").is_null()) r.p_value = row.at("p_value").get<double>();
        a.regressions.push_back(std::move(r));
    }
    for (const auto& row : j.at("scatter")) {
        ScatterRow s;
        s.model_id = row.at("model_id").get<std::string>();
        s.n = row.at("n").get<int>();
        s.mean_score = row.at("mean_score").get<double>();
        s.resolution_pct = row.at("resolution_pct").get<double>();
        s.reasoning = row.at("reasoning").get<bool>();
        a.scatter.push_back(std::move(s));
    }
    return a;
}

std::string group_means_csv(std::span<const GroupMeanRow> rows, const RunManifest& manifest) {
    std::string out = manifest_comment_line(manifest);
    out += "axis,label,n,mean,std,formatted\n";
    for (const auto& g : rows) {
        out += g.axis + "," + g.label + "," + std::to_string(g.n) + "," +
               format_fixed(g.mean, 3) + "," +
               (g.stddev ? format_fixed(*g.stddev, 3) : std::string("n/a")) + "," +
               format_mean_std(g.mean, g.stddev) + "\n";
    }
    return out;
}

std::string regression_csv_row(const RegressionRow& row) {
    std::string out = row.group + "," + std::to_string(row.n_models) + ",";
    if (row.degenerate) {
        const std::string cell = kInsufficientVariation;
        out += cell + "," + cell + "," + cell + "," + cell;
    } else {
        out += format_fixed(row.beta0, 3) + "," + format_fixed(row.beta1, 3) + "," +
               format_fixed(row.r_squared, 3) + "," +
               (row.p_value ? format_fixed(*row.p_value, 3) : std::string("n/a"));
    }
    return out;
}

std::string regression_csv(std::span<const RegressionRow> rows, const RunManifest& manifest) {
    std::string out = manifest_comment_line(manifest);
    out += "group,n_models,beta0,beta1,r_squared,p_value\n";
    for (const auto& r : rows) out += regression_csv_row(r) + "\n";
    return out;
}

std::string scatter_csv(std::span<const ScatterRow> rows, const RunManifest& manifest) {
    std::string out = manifest_comment_line(manifest);
    out += "model_id,n,mean_score,resolution_pct,reasoning\n";
    for (const auto& s : rows) {
        out += s.model_id + "," + std::to_string(s.n) + "," + format_number(s.mean_score) + "," +
               format_number(s.resolution_pct) + "," + (s.reasoning ? "true" : "false") + "\n";
    }
    return out;
}

std::vector<FittedLinePoint> fitted_line_points(std::span<const RegressionRow> rows, double x_min,
                                                double x_max, int points_per_line) {
    std::vector<FittedLinePoint> out;
    for (const auto& r : rows) {
        if (r.degenerate) continue;
        for (int i = 0; i < points_per_line; ++i) {
            const double x =
                x_min + (x_max - x_min) * static_cast<double>(i) /
                            static_cast<double>(points_per_line - 1);
            out.push_back({r.group, r.beta0, r.beta1, x, r.beta0 + r.beta1 * x});
        }
    }
    return out;
}

std::string fig1_lines_csv(std::span<const FittedLinePoint> points, const RunManifest& manifest) {
    std::string out = manifest_comment_line(manifest);
    out += "group,beta0,beta1,x,y\n";
    for (const auto& p : points) {
        out += p.group + "," + format_number(p.beta0) + "," + format_number(p.beta1) + "," +
               format_number(p.x) + "," + format_number(p.y) + "\n";
    }
    return out;
}

json fig1_lines_json(std::span<const FittedLinePoint> points, const RunManifest& manifest) {
    json j;
    j["manifest"] = to_json(manifest);
    j["rows"] = json::array();
    for (const auto& p : points) {
        j["rows"].push_back(json{
            {"group", p.group}, {"beta0", p.beta0}, {"beta1", p.beta1}, {"x", p.x}, {"y", p.y}});
    }
    return j;
}

json fig1_scatter_json(std::span<const ScatterRow> rows, const RunManifest& manifest) {
    json j;
    j["manifest"] = to_json(manifest);
    j["rows"] = json::array();
    for (const auto& s : rows) {
        j["rows"].push_back(json{{"model_id", s.model_id},
                                 {"n", s.n},
                                 {"mean_score", s.mean_score},
                                 {"resolution_pct", s.resolution_pct},
                                 {"reasoning", s.reasoning}});
    }
    return j;
}

std::vector<Fig3Row> fig3_rows(std::span<const metrics::MetricReport> reports) {
    std::vector<const metrics::MetricReport*> ordered;
    for (const auto& r : reports) ordered.push_back(&r);
    std::sort(ordered.begin(), ordered.end(),
              [](const auto* a, const auto* b) { return a->k < b->k; });
    std::vector<Fig3Row> out;
    for (const auto* r : ordered) {
        out.push_back({r->k, "pass", r->pass_at_k, r->wilson_pass.low, r->wilson_pass.high,
                       r->n_tasks});
        out.push_back({r->k, "lowest_overthinking", r->lowest_overthinking_at_k,
                       r->wilson_lo.low, r->wilson_lo.high, r->n_tasks});
    }
    return out;
}

std::string fig3_csv(std::span<const Fig3Row> rows, const RunManifest& manifest) {
    std::string out = manifest_comment_line(manifest);
    out += "k,metric,rate,ci_low,ci_high,n_tasks\n";
    for (const auto& r : rows) {
        out += std::to_string(r.k) + "," + r.metric + "," + format_number(r.rate) + "," +
               format_number(r.ci_low) + "," + format_number(r.ci_high) + "," +
               std::to_string(r.n_tasks) + "\n";
    }
    return out;
}

json fig3_json(std::span<const Fig3Row> rows, const RunManifest& manifest) {
    json j;
    j["manifest"] = to_json(manifest);
    j["rows"] = json::array();
    for (const auto& r : rows) {
        j["rows"].push_back(json{{"k", r.k},
                                 {"metric", r.metric},
                                 {"rate", r.rate},
                                 {"ci_low", r.ci_low},
                                 {"ci_high", r.ci_high},
                                 {"n_tasks", r.n_tasks}});
    }
    return j;
}

namespace {

json wilson_json(const stats::WilsonInterval& w) {
    return json{{"low", w.low},
                {"high", w.high},
                {"point_estimate", w.point_estimate},
                {"z", w.z},
                {"n", w.n}};
}

stats::WilsonInterval wilson_from_json(const json& j) {
    stats::WilsonInterval w;
    w.low = j.at("low").get<double>();
    w.high = j.at("high").get<double>();
    w.point_estimate = j.at("point_estimate").get<double>();
    w.z = j.at("z").get<double>();
    w.n = j.at("n").get<int>();
    return w;
}

}  // namespace

json metric_report_json(const metrics::MetricReport& report, const RunManifest& manifest) {
    json j;
    j["manifest"] = to_json(manifest);
    j["k"] = report.k;
    j["n_tasks"] = report.n_tasks;
    j["pass_at_k"] = report.pass_at_k;
    j["lowest_overthinking_at_k"] = report.lowest_overthinking_at_k;
    j["wilson_pass"] = wilson_json(report.wilson_pass);
    j["wilson_lo"] = wilson_json(report.wilson_lo);
    j["total_cost_usd"] = report.total_cost_usd;
    return j;
}

metrics::MetricReport metric_report_from_json(const json& j) {
    metrics::MetricReport r;
    r.k = j.at("k").get<int>();
    r.n_tasks = j.at("n_tasks").get<int>();
    r.pass_at_k = j.at("pass_at_k").get<double>();
    r.lowest_overthinking_at_k = j.at("lowest_overthinking_at_k").get<double>();
    r.wilson_pass = wilson_from_json(j.at("wilson_pass"));
    r.wilson_lo = wilson_from_json(j.at("wilson_lo"));
    r.total_cost_usd = j.at("total_cost_usd").get<double>();
    return r;
}

std::string selection_csv(std::span<const SelectionRow> rows, const RunManifest& manifest) {
    std::string out = manifest_comment_line(manifest);
    out += "task_id,n_samples,chosen_sample_index,chosen_score,chosen_resolved,tie_broken,"
           "pass_at_k,lowest_overthinking_at_k\n";
    for (const auto& r : rows) {
        out += r.task_id + "," + std::to_string(r.n_samples) + "," +
               std::to_string(r.chosen_sample_index) + "," + format_number(r.chosen_score) + "," +
               (r.chosen_resolved ? "true" : "false") + "," + (r.tie_broken ? "true" : "false") +
               "," + format_number(r.pass_at_k) + "," +
               format_number(r.lowest_overthinking_at_k) + "\n";
    }
    return out;
}

std::string cost_summary_csv(std::span<const metrics::CostDelta> deltas,
                             const RunManifest& manifest) {
    std::string out = manifest_comment_line(manifest);
    out += "alternative,baseline,cost_delta_pct,rate_delta\n";
    for (const auto& d : deltas) {
        out += d.alternative + "," + d.baseline + "," + std::to_string(d.cost_delta_pct) + "%," +
               format_fixed(d.rate_delta, 3) + "\n";
    }
    return out;
}

}  // namespace otk::report
