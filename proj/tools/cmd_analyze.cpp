#include "common.hpp"
#include "otk/report.hpp"

namespace ot_cli {

int run_analyze(const AnalyzeOptions& opts) {
    namespace fs = std::filesystem;
    if (!fs::exists(opts.scores)) return fail_usage("scores file not found: " + opts.scores);
    if (!fs::exists(opts.registry)) return fail_usage("registry file not found: " + opts.registry);

    const std::string scores_text = must_read(opts.scores);
    auto parsed = otk::parse_scores_text(scores_text);
    if (!parsed.clean()) {
        for (const auto& d : parsed.diagnostics) {
            std::cerr << opts.scores << ":" << d.line << ": " << d.reason << "\n";
        }
        return kExitUsage;
    }
    if (parsed.records.empty()) return fail_usage("scores file has no records");

    otk::registry::Registry registry;
    try {
        registry = otk::registry::Registry::load(opts.registry);
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }

    otk::registry::GroupingOptions grouping;
    grouping.size_boundary_b = opts.size_boundary_b;

    otk::report::Analysis analysis;
    try {
        analysis = otk::report::analyze(parsed.records, registry, grouping);
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }

    otk::RunManifest manifest = otk::RunManifest::make("analyze", !opts.no_timestamp);
    manifest.add_input_text(fs::path(opts.scores).filename().string(), scores_text);
    manifest.add_input(fs::path(opts.registry).filename().string(), opts.registry);

    const fs::path out(opts.out_dir);
    try {
        fs::create_directories(out);
        otk::atomic_write_file(out / "group_means.csv",
                               otk::report::group_means_csv(analysis.group_means, manifest));
        otk::atomic_write_file(out / "regression.csv",
                               otk::report::regression_csv(analysis.regressions, manifest));
        otk::atomic_write_file(out / "scatter.csv",
                               otk::report::scatter_csv(analysis.scatter, manifest));
        otk::atomic_write_file(out / "analysis.json",
                               otk::report::analysis_to_json(analysis, manifest).dump() + "\n");
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }
    return kExitOk;
}

}  // namespace ot_cli
