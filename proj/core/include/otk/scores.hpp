#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "otk/metrics.hpp"
#include "otk/patterns.hpp"
#include "otk/trajectory.hpp"

namespace otk {

/// One scored trajectory: judge (or mock) assessment, detector flags, and
/// the fields the selection metrics need.
struct ScoreRecord {
    TrajectoryKey key;
    double score = 0.0;
    std::string reasoning;
    std::string judge_model_id;
    std::string prompt_version;
    bool cached = false;
    int retries = 0;
    patterns::PatternFlags flags;
    bool resolved = false;
    double cost_usd = 0.0;
    int step_count = 0;

    bool operator==(const ScoreRecord&) const = default;
};

nlohmann::json flags_to_json(const patterns::PatternFlags& flags);
patterns::PatternFlags flags_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ScoreRecord& r);
ScoreRecord score_record_from_json(const nlohmann::json& j);
std::string serialize(const ScoreRecord& r);

struct ScoresParseResult {
    std::vector<ScoreRecord> records;
    std::vector<Diagnostic> diagnostics;

    bool clean() const { return diagnostics.empty(); }
};

ScoresParseResult parse_scores_text(std::string_view text);

/// Group records into per-task sample sets for the selection metrics.
/// Records must all belong to one model; pass model_filter when the corpus
/// mixes models. Tasks come out sorted by task_id, samples by sample_index.
std::vector<metrics::TaskSamples> to_task_samples(
    std::span<const ScoreRecord> records,
    const std::optional<std::string>& model_filter = std::nullopt);

std::set<std::string> distinct_models(std::span<const ScoreRecord> records);

}  // namespace otk
