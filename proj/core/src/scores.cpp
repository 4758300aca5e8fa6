#include "otk/scores.hpp"

#include <map>
#include <sstream>

#include "otk/util.hpp"

namespace otk {

using nlohmann::json;

json flags_to_json(const patterns::PatternFlags& flags) {
    json j;
    j["analysis_paralysis"] = flags.analysis_paralysis;
    j["paralysis_run_length"] = flags.paralysis_run_length;
    j["rogue_actions"] = flags.rogue_actions;
    j["rogue_step_indices"] = flags.rogue_step_indices;
    j["premature_disengagement"] = flags.premature_disengagement;
    j["disengagement_kind"] = std::string(patterns::to_string(flags.disengagement_kind));
    return j;
}

patterns::PatternFlags flags_from_json(const json& j) {
    patterns::PatternFlags flags;
    flags.analysis_paralysis = j.at("analysis_paralysis").get<bool>();
    flags.paralysis_run_length = j.at("paralysis_run_length").get<int>();
    flags.rogue_actions = j.at("rogue_actions").get<bool>();
    flags.rogue_step_indices = j.at("rogue_step_indices").get<std::vector<int>>();
    flags.premature_disengagement = j.at("premature_disengagement").get<bool>();
    const std::string kind = j.at("disengagement_kind").get<std::string>();
    if (kind == "overconfident_finish") {
        flags.disengagement_kind = patterns::DisengagementKind::overconfident_finish;
    } else if (kind == "giveup_finish") {
        flags.disengagement_kind = patterns::DisengagementKind::giveup_finish;
    } else if (kind == "none") {
        flags.disengagement_kind = patterns::DisengagementKind::none;
    } else {
        throw std::runtime_error("unknown disengagement_kind: " + kind);
    }
    return flags;
}

json to_json(const ScoreRecord& r) {
    json j;
    j["task_id"] = r.key.task_id;
    j["model_id"] = r.key.model_id;
    j["sample_index"] = r.key.sample_index;
    j["overthinking_score"] = r.score;
    j["reasoning"] = r.reasoning;
    j["judge_model_id"] = r.judge_model_id;
    j["prompt_version"] = r.prompt_version;
    j["cached"] = r.cached;
    j["retries"] = r.retries;
    j["flags"] = flags_to_json(r.flags);
    j["resolved"] = r.resolved;
    j["cost_usd"] = r.cost_usd;
    j["step_count"] = r.step_count;
    return j;
}

ScoreRecord score_record_from_json(const json& j) {
    ScoreRecord r;
    r.key.task_id = j.at("task_id").get<std::string>();
    r.key.model_id = j.at("model_id").get<std::string>();
    r.key.sample_index = j.at("sample_index").get<int>();
    r.score = j.at("overthinking_score").get<double>();
    if (r.score < 0.0 || r.score > 10.0) {
        throw std::runtime_error("overthinking_score outside [0,10]");
    }
    r.reasoning = j.value("reasoning", "");
    r.judge_model_id = j.value("judge_model_id", "");
    r.prompt_version = j.value("prompt_version", "");
    r.cached = j.value("cached", false);
    r.retries = j.value("retries", 0);
    r.flags = flags_from_json(j.at("flags"));
    r.resolved = j.at("resolved").get<bool>();
    r.cost_usd = j.at("cost_usd").get<double>();
    r.step_count = j.at("step_count").get<int>();
    return r;
}

std::string serialize(const ScoreRecord& r) { return to_json(r).dump(); }

ScoresParseResult parse_scores_text(std::string_view text) {
    ScoresParseResult result;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
        if (j.is_discarded()) {
            result.diagnostics.push_back({lineno, "invalid JSON"});
            continue;
        }
        try {
            result.records.push_back(score_record_from_json(j));
        } catch (const std::exception& e) {
            result.diagnostics.push_back({lineno, e.what()});
        }
    }
    return result;
}

std::vector<metrics::TaskSamples> to_task_samples(
    std::span<const ScoreRecord> records, const std::optional<std::string>& model_filter) {
    std::map<std::string, metrics::TaskSamples> by_task;
    for (const auto& r : records) {
        if (model_filter && r.key.model_id != *model_filter) continue;
        auto& task = by_task[r.key.task_id];
        task.task_id = r.key.task_id;
        task.samples.push_back(metrics::Sample{r.key.sample_index, r.score, r.resolved,
                                               r.cost_usd, r.step_count});
    }
    std::vector<metrics::TaskSamples> out;
    out.reserve(by_task.size());
    for (auto& [id, task] : by_task) {
        std::sort(task.samples.begin(), task.samples.end(),
                  [](const metrics::Sample& a, const metrics::Sample& b) {
                      return a.sample_index < b.sample_index;
                  });
        out.push_back(std::move(task));
    }
    return out;
}

std::set<std::string> distinct_models(std::span<const ScoreRecord> records) {
    std::set<std::string> out;
    for (const auto& r : records) out.insert(r.key.model_id);
    return out;
}

}  // namespace otk
