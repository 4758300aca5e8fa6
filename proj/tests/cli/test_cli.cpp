// Subcommand contract tests driven through the real binary: exit codes,
// diagnostics on stderr, data in files. argv[1] is the path to ot.
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "otk/judge.hpp"
#include "otk/patterns.hpp"
#include "otk/scores.hpp"
#include "otk/synth.hpp"
#include "otk/trajectory.hpp"
#include "otk/util.hpp"

namespace fs = std::filesystem;
using namespace otk;

#define CHECK_C(cond, msg)                                                                  \
    do {                                                                                    \
        if (!(cond)) {                                                                      \
            throw std::runtime_error(std::string(__FILE__ ":") + std::to_string(__LINE__) + \
                                     ": " + (msg));                                         \
        }                                                                                   \
    } while (0)

namespace {

std::string g_ot;
fs::path g_dir;

int run(const std::string& args) {
    const std::string cmd = g_ot + " " + args + " 2>" + (g_dir / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return status < 0 ? -1 : WEXITSTATUS(status);
}

std::string last_stderr() { return read_file(g_dir / "stderr.txt").value_or(""); }

void write_corpus(const fs::path& path, int n_tasks, int samples, std::uint64_t seed,
                  double p_rogue = 0.0) {
    synth::SynthConfig cfg;
    cfg.n_tasks = n_tasks;
    cfg.samples_per_task = samples;
    cfg.p_rogue = p_rogue;
    cfg.seed = seed;
    auto corpus = synth::generate_corpus(cfg);
    std::string text;
    for (const auto& t : corpus.trajectories) text += serialize(t) + "\n";
    atomic_write_file(path, text);
}

void test_validate() {
    CHECK_C(run("validate --in " + (g_dir / "absent.jsonl").string()) == 2,
            "missing file must exit 2");
    CHECK_C(last_stderr().find("absent.jsonl") != std::string::npos,
            "diagnostic must name the path");

    const fs::path corpus = g_dir / "mixed.jsonl";
    write_corpus(corpus, 2, 1, 5);
    auto text = *read_file(corpus);
    text += "{broken\n";
    atomic_write_file(corpus, text);
    CHECK_C(run("validate --in " + corpus.string()) == 1, "invalid line must exit 1");

    write_corpus(corpus, 2, 1, 5);
    CHECK_C(run("validate --in " + corpus.string()) == 0, "clean corpus must exit 0");
}

void test_score_mock() {
    const fs::path corpus = g_dir / "corpus.jsonl";
    const fs::path scores = g_dir / "scores.jsonl";
    write_corpus(corpus, 5, 1, 11, /*p_rogue=*/1.0);

    CHECK_C(run("score --in " + (g_dir / "absent.jsonl").string() + " --out " + scores.string() +
                " --mock") == 2,
            "missing input must exit 2");
    CHECK_C(run("score --in " + corpus.string() + " --out " + scores.string()) == 2,
            "neither --mock nor --judge must exit 2");

    CHECK_C(run("score --in " + corpus.string() + " --out " + scores.string() +
                " --mock --no-timestamp") == 0,
            "mock scoring must exit 0");
    auto parsed = parse_scores_text(*read_file(scores));
    CHECK_C(parsed.clean() && parsed.records.size() == 5, "five scored records expected");

    // Scores equal the heuristic composite recomputed from the corpus.
    auto traj = parse_corpus_text(*read_file(corpus));
    for (std::size_t i = 0; i < parsed.records.size(); ++i) {
        CHECK_C(parsed.records[i].score == patterns::heuristic_score(traj.trajectories[i]),
                "mock score must equal the heuristic composite");
        CHECK_C(parsed.records[i].judge_model_id == "mock-heuristic",
                "mock records must carry the mock judge id");
    }

    // Scripted failure on one task: exit 1, remaining four still written.
    CHECK_C(run("score --in " + corpus.string() + " --out " + scores.string() +
                " --mock --no-timestamp --mock-fail task-0002") == 1,
            "scripted failure must exit 1");
    auto partial = parse_scores_text(*read_file(scores));
    CHECK_C(partial.records.size() == 4, "four records after one scripted failure");
    CHECK_C(last_stderr().find("task-0002") != std::string::npos,
            "failure diagnostics must name the task");
}

struct ServerGuard {
    httplib::Server& server;
    std::thread thread;
    ServerGuard(httplib::Server& s) : server(s), thread([&s] { s.listen_after_bind(); }) {
        s.wait_until_ready();
    }
    ~ServerGuard() {
        server.stop();
        thread.join();
    }
};

void test_score_http_judge() {
    // A live judge endpoint served in-process.
    httplib::Server server;
    server.Post("/v1/chat/completions", [](const httplib::Request& req, httplib::Response& res) {
        auto body = nlohmann::json::parse(req.body);
        const std::string prompt = body["messages"][0]["content"].get<std::string>();
        // Deterministic per-prompt score in 0..10.
        const double score = static_cast<double>(fnv1a64(prompt) % 11);
        nlohmann::json reply;
        reply["choices"] = nlohmann::json::array(
            {{{"message",
               {{"role", "assistant"},
                {"content",
                 judge::ScriptedJudgeClient::answer_block(score, "served by the test judge")}}}}});
        res.set_content(reply.dump(), "application/json");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    CHECK_C(port > 0, "test server must bind");
    ServerGuard guard(server);

    const fs::path corpus = g_dir / "judge_corpus.jsonl";
    const fs::path scores = g_dir / "judge_scores.jsonl";
    const fs::path cfg_path = g_dir / "judge.cfg";
    const fs::path cache_dir = g_dir / "judge_cache";
    write_corpus(corpus, 3, 1, 77);
    atomic_write_file(cfg_path, "endpoint_url = http://127.0.0.1:" + std::to_string(port) +
                                    "\n"
                                    "judge_model_id = test-judge\n"
                                    "temperature = 0\n"
                                    "max_retries = 1\n"
                                    "cache_dir = " +
                                    cache_dir.string() + "\n");

    CHECK_C(run("score --in " + corpus.string() + " --out " + scores.string() + " --judge " +
                cfg_path.string() + " --parallel 2 --no-timestamp") == 0,
            "http judge scoring must exit 0");
    auto parsed = parse_scores_text(*read_file(scores));
    CHECK_C(parsed.clean() && parsed.records.size() == 3, "three judge-scored records");
    for (const auto& r : parsed.records) {
        CHECK_C(r.judge_model_id == "test-judge", "judge id must flow into the records");
        CHECK_C(!r.cached, "first pass is uncached");
    }

    // Second run: everything served from the cache.
    CHECK_C(run("score --in " + corpus.string() + " --out " + scores.string() + " --judge " +
                cfg_path.string() + " --no-timestamp") == 0,
            "cached scoring must exit 0");
    auto cached = parse_scores_text(*read_file(scores));
    for (std::size_t i = 0; i < cached.records.size(); ++i) {
        CHECK_C(cached.records[i].cached, "second pass must be cache hits");
        CHECK_C(cached.records[i].score == parsed.records[i].score,
                "cached scores must match the originals");
    }
}

void test_analyze_and_select() {
    const fs::path corpus = g_dir / "pipeline_corpus.jsonl";
    const fs::path scores = g_dir / "pipeline_scores.jsonl";
    const fs::path registry_file = g_dir / "registry.tsv";
    const fs::path analysis_dir = g_dir / "analysis";
    write_corpus(corpus, 6, 3, 21, /*p_rogue=*/0.5);
    CHECK_C(run("score --in " + corpus.string() + " --out " + scores.string() +
                " --mock --no-timestamp") == 0,
            "scoring must succeed");

    // Unknown model: exit 2 listing the offender.
    atomic_write_file(
        registry_file,
        "model_id\tfamily\treasoning\tparams_b\tcontext_k\tfunction_calling\treasoning_effort\n"
        "someone-else\tX\tfalse\t-\t-\tfalse\t-\n");
    CHECK_C(run("analyze --scores " + scores.string() + " --registry " + registry_file.string() +
                " --out " + analysis_dir.string() + " --no-timestamp") == 2,
            "unknown model must exit 2");
    CHECK_C(last_stderr().find("synth-model-a") != std::string::npos,
            "unknown-model diagnostic must list the offender");

    atomic_write_file(
        registry_file,
        "model_id\tfamily\treasoning\tparams_b\tcontext_k\tfunction_calling\treasoning_effort\n"
        "synth-model-a\tSynth\ttrue\t13\t32\tfalse\t-\n");
    CHECK_C(run("analyze --scores " + scores.string() + " --registry " + registry_file.string() +
                " --out " + analysis_dir.string() + " --no-timestamp") == 0,
            "analyze must succeed");
    for (const char* name : {"group_means.csv", "regression.csv", "scatter.csv", "analysis.json"}) {
        CHECK_C(fs::exists(analysis_dir / name), std::string("analyze must write ") + name);
    }
    auto means = *read_file(analysis_dir / "group_means.csv");
    CHECK_C(means.rfind("# manifest {", 0) == 0, "CSV must open with the manifest comment");

    // select: k over the sample count names the offending tasks.
    CHECK_C(run("select --scores " + scores.string() + " --k 9 --out " +
                (analysis_dir / "metrics_k9.json").string() + " --no-timestamp") == 2,
            "k over sample count must exit 2");
    CHECK_C(last_stderr().find("task-0000") != std::string::npos,
            "k-too-large diagnostic must name a task");

    for (int k = 1; k <= 3; ++k) {
        CHECK_C(run("select --scores " + scores.string() + " --k " + std::to_string(k) +
                    " --out " + (analysis_dir / ("metrics_k" + std::to_string(k) + ".json")).string() +
                    " --no-timestamp --cost-row high=29.1,1400 --cost-row low-x2=27.3,800") == 0,
                "select must succeed");
    }
    auto metrics_json = nlohmann::json::parse(*read_file(analysis_dir / "metrics_k1.json"));
    CHECK_C(metrics_json["pass_at_k"] == metrics_json["lowest_overthinking_at_k"],
            "k=1 collapses both metrics");
    CHECK_C(fs::exists(analysis_dir / "metrics_k2_selection.csv"), "selection CSV expected");
    auto cost_csv = *read_file(analysis_dir / "cost_summary.csv");
    CHECK_C(cost_csv.find("low-x2,high,43%") != std::string::npos,
            "cost summary must render the 43% cell");

    // report: fig3 rows for k in {1,2,3}, three rows per metric.
    CHECK_C(run("report --analysis " + analysis_dir.string() + " --no-timestamp") == 0,
            "report must succeed");
    auto fig3 = *read_file(analysis_dir / "fig3_curves.csv");
    std::istringstream in(fig3);
    std::string line;
    int pass_rows = 0, lo_rows = 0;
    while (std::getline(in, line)) {
        if (line.find(",pass,") != std::string::npos) ++pass_rows;
        if (line.find(",lowest_overthinking,") != std::string::npos) ++lo_rows;
    }
    CHECK_C(pass_rows == 3 && lo_rows == 3, "three rows per metric expected");

    // JSON format variant.
    CHECK_C(run("report --analysis " + analysis_dir.string() + " --format json --out " +
                (g_dir / "report_json").string() + " --no-timestamp") == 0,
            "json report must succeed");
    auto fig3_json = nlohmann::json::parse(*read_file(g_dir / "report_json" / "fig3_curves.json"));
    CHECK_C(fig3_json["rows"].size() == 6, "json fig3 must carry six rows");
    CHECK_C(fig3_json.contains("manifest"), "json artifacts embed the manifest");

    CHECK_C(run("report --analysis " + (g_dir / "nowhere").string()) == 2,
            "missing analysis dir must exit 2");
}

void test_synth_cli() {
    const fs::path cfg_path = g_dir / "synth.cfg";
    atomic_write_file(cfg_path,
                      "n_tasks = 40\nsamples_per_task = 1\np_rogue = 0\np_paralysis = 0\n"
                      "p_premature = 0\nseed = 5\n");
    const fs::path out1 = g_dir / "synth1.jsonl";
    const fs::path out2 = g_dir / "synth2.jsonl";
    const fs::path labels = g_dir / "synth_labels.jsonl";

    CHECK_C(run("synth --config " + cfg_path.string() + " --out " + out1.string() + " --labels " +
                labels.string() + " --no-timestamp") == 0,
            "synth must succeed");
    CHECK_C(run("synth --config " + cfg_path.string() + " --out " + out2.string() +
                " --no-timestamp") == 0,
            "second synth must succeed");
    CHECK_C(*read_file(out1) == *read_file(out2), "same flags, same bytes");

    // All-zero probabilities: labels all false.
    std::istringstream in(*read_file(labels));
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        auto flags = flags_from_json(nlohmann::json::parse(line));
        CHECK_C(flags.flag_count() == 0, "zero-probability labels must be all false");
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: ot_cli_tests <path-to-ot>\n";
        return 2;
    }
    g_ot = argv[1];
    g_dir = fs::temp_directory_path() / ("otk-cli-" + hex64(fnv1a64(g_ot)));
    fs::remove_all(g_dir);
    fs::create_directories(g_dir);

    const std::vector<std::pair<const char*, std::function<void()>>> tests{
        {"validate contract", test_validate},
        {"score --mock contract", test_score_mock},
        {"score against a live http judge", test_score_http_judge},
        {"analyze/select/report pipeline", test_analyze_and_select},
        {"synth determinism and labels", test_synth_cli},
    };
    int failures = 0;
    for (const auto& [name, body] : tests) {
        try {
            body();
            std::printf("[PASS] %s\n", name);
        } catch (const std::exception& e) {
            std::printf("[FAIL] %s: %s\n", name, e.what());
            ++failures;
        }
        std::fflush(stdout);
    }
    fs::remove_all(g_dir);
    return failures == 0 ? 0 : 1;
}
