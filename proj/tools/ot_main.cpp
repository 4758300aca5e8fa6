// ot: score agent trajectories for overthinking, analyze the results, and
// emit plot-ready report data.
#include <CLI11.hpp>

#include "common.hpp"
#include "otk/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"overthinking analysis toolkit"};
    app.set_version_flag("--version", otk::kToolVersion);
    app.require_subcommand(1);

    ot_cli::ScoreOptions score;
    auto* score_cmd = app.add_subcommand("score", "score a trajectory corpus");
    score_cmd->add_option("--in", score.input, "trajectory JSONL")->required();
    score_cmd->add_option("--out", score.output, "scores JSONL to write")->required();
    score_cmd->add_option("--judge", score.judge_config, "judge config file");
    score_cmd->add_flag("--mock", score.mock, "use the offline heuristic judge");
    score_cmd->add_option("--parallel", score.parallelism, "in-flight scoring requests")
        ->default_val(1);
    score_cmd->add_flag("--no-timestamp", score.no_timestamp, "omit timestamp from manifests");
    score_cmd->add_option("--mock-fail", score.mock_fail_tasks,
                          "task_id the mock judge should fail on (testing hook)")
        ->group("");

    ot_cli::AnalyzeOptions analyze;
    auto* analyze_cmd = app.add_subcommand("analyze", "group means, regression, scatter data");
    analyze_cmd->add_option("--scores", analyze.scores, "scores JSONL")->required();
    analyze_cmd->add_option("--registry", analyze.registry, "model registry TSV")->required();
    analyze_cmd->add_option("--out", analyze.out_dir, "output directory")->required();
    analyze_cmd->add_option("--size-boundary", analyze.size_boundary_b,
                            "size bucket boundary in billions")
        ->default_val(14.0);
    analyze_cmd->add_flag("--no-timestamp", analyze.no_timestamp,
                          "omit timestamp from manifests");

    ot_cli::SelectOptions select;
    auto* select_cmd = app.add_subcommand("select", "best-of-k selection metrics");
    select_cmd->add_option("--scores", select.scores, "scores JSONL")->required();
    select_cmd->add_option("--k", select.k, "samples per task to select from")->required();
    select_cmd->add_option("--z", select.z, "Wilson interval z value")->default_val(1.96);
    select_cmd->add_option("--out", select.output, "metrics JSON to write")->required();
    select_cmd->add_option("--model", select.model_filter, "model_id filter for mixed corpora");
    select_cmd->add_option("--estimator", select.estimator, "exact or monte-carlo")
        ->default_val("exact");
    select_cmd->add_option("--seed", select.seed, "Monte Carlo seed")->default_val(0);
    select_cmd->add_option("--mc-samples", select.mc_samples, "Monte Carlo draws per task")
        ->default_val(20000);
    select_cmd->add_option("--cost-row", select.cost_rows,
                           "configuration cost row, label=rate,cost (repeatable)");
    select_cmd->add_flag("--no-timestamp", select.no_timestamp, "omit timestamp from manifests");

    ot_cli::SynthOptions synth;
    auto* synth_cmd = app.add_subcommand("synth", "generate a labeled synthetic corpus");
    synth_cmd->add_option("--config", synth.config, "synth config file");
    synth_cmd->add_option("--seed", synth.seed, "seed override");
    synth_cmd->add_option("--out", synth.output, "trajectory JSONL to write")->required();
    synth_cmd->add_option("--labels", synth.labels, "ground-truth labels JSONL to write");
    synth_cmd->add_flag("--no-timestamp", synth.no_timestamp, "omit timestamp from manifests");

    ot_cli::ReportOptions report;
    auto* report_cmd = app.add_subcommand("report", "plot-ready figure data");
    report_cmd->add_option("--analysis", report.analysis_dir, "directory from analyze/select")
        ->required();
    report_cmd->add_option("--format", report.format, "csv or json")->default_val("csv");
    report_cmd->add_option("--out", report.out_dir, "output directory (default: analysis dir)");
    report_cmd->add_flag("--no-timestamp", report.no_timestamp, "omit timestamp from manifests");

    ot_cli::ValidateOptions validate;
    auto* validate_cmd = app.add_subcommand("validate", "check a trajectory corpus");
    validate_cmd->add_option("--in", validate.input, "trajectory JSONL")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? ot_cli::kExitOk : ot_cli::kExitUsage;
    }

    try {
        if (score_cmd->parsed()) return ot_cli::run_score(score);
        if (analyze_cmd->parsed()) return ot_cli::run_analyze(analyze);
        if (select_cmd->parsed()) return ot_cli::run_select(select);
        if (synth_cmd->parsed()) return ot_cli::run_synth(synth);
        if (report_cmd->parsed()) return ot_cli::run_report(report);
        if (validate_cmd->parsed()) return ot_cli::run_validate(validate);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return ot_cli::kExitUsage;
    }
    return ot_cli::kExitUsage;
}
