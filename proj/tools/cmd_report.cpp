#include <algorithm>

#include "common.hpp"
#include "otk/report.hpp"

namespace ot_cli {

int run_report(const ReportOptions& opts) {
    namespace fs = std::filesystem;
    if (opts.format != "csv" && opts.format != "json") {
        return fail_usage("--format must be csv or json");
    }
    const fs::path analysis_dir(opts.analysis_dir);
    const fs::path analysis_path = analysis_dir / "analysis.json";
    if (!fs::exists(analysis_path)) {
        return fail_usage("analysis input not found: " + analysis_path.string());
    }

    otk::report::Analysis analysis;
    try {
        analysis = otk::report::analysis_from_json(
            nlohmann::json::parse(must_read(analysis_path)));
    } catch (const std::exception& e) {
        return fail_usage(std::string("cannot read analysis.json: ") + e.what());
    }

    // Metric reports written by `ot select` (metrics*.json), sorted by name
    // for deterministic output.
    std::vector<fs::path> metric_files;
    for (const auto& entry : fs::directory_iterator(analysis_dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("metrics", 0) == 0 && entry.path().extension() == ".json" &&
            name.find(".manifest.") == std::string::npos) {
            metric_files.push_back(entry.path());
        }
    }
    std::sort(metric_files.begin(), metric_files.end());

    std::vector<otk::metrics::MetricReport> reports;
    otk::RunManifest manifest = otk::RunManifest::make("report", !opts.no_timestamp);
    manifest.add_input("analysis.json", analysis_path);
    for (const auto& path : metric_files) {
        try {
            reports.push_back(otk::report::metric_report_from_json(
                nlohmann::json::parse(must_read(path))));
            manifest.add_input(path.filename().string(), path);
        } catch (const std::exception& e) {
            return fail_usage("cannot read " + path.string() + ": " + e.what());
        }
    }

    const auto lines = otk::report::fitted_line_points(analysis.regressions);
    const auto fig3 = otk::report::fig3_rows(reports);

    const fs::path out_dir = opts.out_dir.empty() ? analysis_dir : fs::path(opts.out_dir);
    try {
        fs::create_directories(out_dir);
        if (opts.format == "csv") {
            otk::atomic_write_file(out_dir / "fig1_scatter.csv",
                                   otk::report::scatter_csv(analysis.scatter, manifest));
            otk::atomic_write_file(out_dir / "fig1_lines.csv",
                                   otk::report::fig1_lines_csv(lines, manifest));
            otk::atomic_write_file(out_dir / "fig3_curves.csv",
                                   otk::report::fig3_csv(fig3, manifest));
        } else {
            otk::atomic_write_file(
                out_dir / "fig1_scatter.json",
                otk::report::fig1_scatter_json(analysis.scatter, manifest).dump() + "\n");
            otk::atomic_write_file(out_dir / "fig1_lines.json",
                                   otk::report::fig1_lines_json(lines, manifest).dump() + "\n");
            otk::atomic_write_file(out_dir / "fig3_curves.json",
                                   otk::report::fig3_json(fig3, manifest).dump() + "\n");
        }
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }
    return kExitOk;
}

}  // namespace ot_cli
