#include <optional>

#include "common.hpp"
#include "otk/report.hpp"

namespace ot_cli {

namespace {

// "label=rate,cost"
otk::metrics::CostRow parse_cost_row(const std::string& spec) {
    const auto eq = spec.find('=');
    const auto comma = spec.find(',', eq == std::string::npos ? 0 : eq);
    if (eq == std::string::npos || comma == std::string::npos) {
        throw std::runtime_error("bad --cost-row, expected label=rate,cost: " + spec);
    }
    otk::metrics::CostRow row;
    row.label = spec.substr(0, eq);
    row.resolution_rate = std::stod(spec.substr(eq + 1, comma - eq - 1));
    row.total_cost_usd = std::stod(spec.substr(comma + 1));
    return row;
}

}  // namespace

int run_select(const SelectOptions& opts) {
    namespace fs = std::filesystem;
    if (!fs::exists(opts.scores)) return fail_usage("scores file not found: " + opts.scores);
    if (opts.k < 1) return fail_usage("--k must be >= 1");

    const std::string scores_text = must_read(opts.scores);
    auto parsed = otk::parse_scores_text(scores_text);
    if (!parsed.clean()) {
        for (const auto& d : parsed.diagnostics) {
            std::cerr << opts.scores << ":" << d.line << ": " << d.reason << "\n";
        }
        return kExitUsage;
    }
    if (parsed.records.empty()) return fail_usage("scores file has no records");

    std::optional<std::string> model_filter;
    if (!opts.model_filter.empty()) {
        model_filter = opts.model_filter;
    } else {
        auto models = otk::distinct_models(parsed.records);
        if (models.size() > 1) {
            std::string msg = "scores mix several models, pass --model; found:";
            for (const auto& m : models) msg += " " + m;
            return fail_usage(msg);
        }
    }

    auto tasks = otk::to_task_samples(parsed.records, model_filter);
    if (tasks.empty()) return fail_usage("no tasks match the model filter");

    otk::metrics::LowestOverthinkingOptions lo_opts;
    if (opts.estimator == "exact") {
        lo_opts.estimator = otk::metrics::Estimator::exact;
    } else if (opts.estimator == "monte-carlo" || opts.estimator == "mc") {
        lo_opts.estimator = otk::metrics::Estimator::monte_carlo;
        lo_opts.seed = opts.seed;
        lo_opts.mc_samples = opts.mc_samples;
    } else {
        return fail_usage("--estimator must be exact or monte-carlo");
    }

    otk::metrics::MetricReport report;
    std::vector<otk::report::SelectionRow> selection_rows;
    try {
        report = otk::metrics::metric_report(tasks, opts.k, opts.z, lo_opts);
        auto outcomes = otk::metrics::select_first_k(tasks, opts.k);
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            otk::report::SelectionRow row;
            row.task_id = tasks[i].task_id;
            row.n_samples = static_cast<int>(tasks[i].samples.size());
            row.chosen_sample_index = outcomes[i].sample_index;
            row.chosen_score = outcomes[i].score;
            row.chosen_resolved = outcomes[i].resolved;
            row.tie_broken = outcomes[i].tie_broken;
            row.pass_at_k = otk::metrics::task_pass_at_k(tasks[i], opts.k);
            row.lowest_overthinking_at_k =
                otk::metrics::task_lowest_overthinking_at_k(tasks[i], opts.k, lo_opts);
            selection_rows.push_back(std::move(row));
        }
    } catch (const std::invalid_argument& e) {
        return fail_usage(e.what());
    }

    otk::RunManifest manifest = otk::RunManifest::make("select", !opts.no_timestamp);
    manifest.add_input_text(fs::path(opts.scores).filename().string(), scores_text);
    if (lo_opts.estimator == otk::metrics::Estimator::monte_carlo) manifest.seed = lo_opts.seed;

    const fs::path out(opts.output);
    fs::path selection_path = out;
    selection_path.replace_extension();
    selection_path += "_selection.csv";
    try {
        if (!out.parent_path().empty()) fs::create_directories(out.parent_path());
        otk::atomic_write_file(out,
                               otk::report::metric_report_json(report, manifest).dump() + "\n");
        otk::atomic_write_file(selection_path,
                               otk::report::selection_csv(selection_rows, manifest));
        if (!opts.cost_rows.empty()) {
            std::vector<otk::metrics::CostRow> rows;
            for (const auto& spec : opts.cost_rows) rows.push_back(parse_cost_row(spec));
            auto deltas = otk::metrics::cost_summary(rows);
            fs::path cost_path = out.parent_path() / "cost_summary.csv";
            otk::atomic_write_file(cost_path, otk::report::cost_summary_csv(deltas, manifest));
        }
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }
    return kExitOk;
}

}  // namespace ot_cli
