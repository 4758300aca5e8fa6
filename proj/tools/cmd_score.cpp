#include <algorithm>
#include <optional>
#include <set>

#include "common.hpp"
#include "otk/http_judge_client.hpp"
#include "otk/judge.hpp"
#include "otk/patterns.hpp"
#include "otk/scores.hpp"
#include "otk/trajectory.hpp"

namespace ot_cli {

namespace {

otk::ScoreRecord base_record(const otk::Trajectory& t) {
    otk::ScoreRecord r;
    r.key = t.key();
    r.flags = otk::patterns::detect_all(t);
    r.resolved = t.outcome.resolved;
    r.cost_usd = t.cost_usd;
    r.step_count = static_cast<int>(t.steps.size());
    return r;
}

}  // namespace

int run_score(const ScoreOptions& opts) {
    namespace fs = std::filesystem;
    if (!fs::exists(opts.input)) return fail_usage("input file not found: " + opts.input);
    if (!opts.mock && opts.judge_config.empty()) {
        return fail_usage("either --mock or --judge <config> is required");
    }
    if (opts.parallelism < 1) return fail_usage("--parallel must be >= 1");

    const std::string corpus_text = must_read(opts.input);
    auto parsed = otk::parse_corpus_text(corpus_text);
    for (const auto& d : parsed.line_diagnostics) {
        std::cerr << opts.input << ":" << d.line << ": " << d.reason << "\n";
    }
    if (!parsed.corpus_errors.empty()) {
        for (const auto& e : parsed.corpus_errors) std::cerr << "error: " << e << "\n";
        return kExitUsage;
    }
    const auto& trajectories = parsed.trajectories;

    otk::RunManifest manifest = otk::RunManifest::make("score", !opts.no_timestamp);
    manifest.add_input_text(fs::path(opts.input).filename().string(), corpus_text);

    std::vector<std::optional<otk::ScoreRecord>> records(trajectories.size());
    std::size_t failures = parsed.line_diagnostics.size();

    if (opts.mock) {
        manifest.prompt_version = "-";
        const std::set<std::string> fail_tasks(opts.mock_fail_tasks.begin(),
                                               opts.mock_fail_tasks.end());
        std::vector<std::string> failure_lines(trajectories.size());
        parallel_for_indexed(trajectories.size(), opts.parallelism, [&](std::size_t i) {
            const auto& t = trajectories[i];
            if (fail_tasks.count(t.task_id) > 0) {
                failure_lines[i] = t.key().to_string() + ": scripted mock failure";
                return;
            }
            otk::ScoreRecord r = base_record(t);
            r.score = otk::patterns::heuristic_score(r.flags);
            r.reasoning = otk::patterns::describe_flags(r.flags);
            r.judge_model_id = "mock-heuristic";
            r.prompt_version = "-";
            records[i] = std::move(r);
        });
        for (const auto& line : failure_lines) {
            if (!line.empty()) {
                std::cerr << "failed: " << line << "\n";
                ++failures;
            }
        }
    } else {
        otk::judge::JudgeConfig judge_cfg;
        std::string judge_cfg_text;
        try {
            judge_cfg_text = must_read(opts.judge_config);
            judge_cfg = otk::judge::JudgeConfig::from_config(
                otk::KeyValueConfig::parse(judge_cfg_text));
        } catch (const std::exception& e) {
            return fail_usage(std::string("judge config: ") + e.what());
        }
        manifest.config_digest = otk::digest_text(judge_cfg_text);
        manifest.prompt_version = judge_cfg.prompt_version;

        otk::RenderOptions render_opts;
        const auto kv = otk::KeyValueConfig::parse(judge_cfg_text);
        if (kv.has("view_budget_chars")) {
            render_opts.max_chars = static_cast<std::size_t>(kv.get_int("view_budget_chars", 0));
        }

        std::vector<otk::judge::KeyedView> views;
        views.reserve(trajectories.size());
        for (const auto& t : trajectories) {
            views.push_back({t.key(), otk::render_judge_view(t, render_opts)});
        }

        otk::judge::HttpJudgeClient client(judge_cfg);
        auto scores = otk::judge::score_corpus(views, judge_cfg, client, opts.parallelism);
        std::size_t scored_i = 0;
        for (std::size_t i = 0; i < trajectories.size(); ++i) {
            if (scored_i < scores.scored.size() &&
                scores.scored[scored_i].key == trajectories[i].key()) {
                otk::ScoreRecord r = base_record(trajectories[i]);
                const auto& a = scores.scored[scored_i].assessment;
                r.score = a.score;
                r.reasoning = a.reasoning;
                r.judge_model_id = a.judge_model_id;
                r.prompt_version = a.prompt_version;
                r.cached = a.cached;
                r.retries = a.retries;
                records[i] = std::move(r);
                ++scored_i;
            }
        }
        for (const auto& f : scores.failures) {
            std::cerr << "failed: " << f.key.to_string() << ": "
                      << otk::judge::to_string(f.failure.kind) << ": " << f.failure.detail << "\n";
            ++failures;
        }
    }

    std::string out_text;
    for (const auto& r : records) {
        if (r) out_text += otk::serialize(*r) + "\n";
    }
    try {
        otk::atomic_write_file(opts.output, out_text);
        otk::atomic_write_file(opts.output + ".manifest.json", otk::to_json(manifest).dump() + "\n");
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }
    return failures > 0 ? kExitPartial : kExitOk;
}

}  // namespace ot_cli
