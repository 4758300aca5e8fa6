#pragma once

#include <compare>
#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace otk {

enum class ActionKind { tool_call, finish, message };

std::string_view to_string(ActionKind kind);
std::optional<ActionKind> action_kind_from_string(std::string_view s);

struct Action {
    ActionKind kind = ActionKind::message;
    std::optional<std::string> name;  // tool name, required for tool_call
    std::string payload;
    nlohmann::json extra = nlohmann::json::object();  // unknown fields, kept on round-trip

    bool operator==(const Action&) const = default;
};

struct Step {
    int index = 0;
    std::optional<std::string> reasoning;
    std::vector<Action> actions;  // may be empty: a pure planning turn
    std::optional<std::string> observation;
    nlohmann::json extra = nlohmann::json::object();

    bool operator==(const Step&) const = default;
};

struct Outcome {
    bool resolved = false;
    std::optional<std::string> notes;
    nlohmann::json extra = nlohmann::json::object();

    bool operator==(const Outcome&) const = default;
};

struct TrajectoryKey {
    std::string task_id;
    std::string model_id;
    int sample_index = 0;

    auto operator<=>(const TrajectoryKey&) const = default;
    std::string to_string() const;
};

struct Trajectory {
    std::string task_id;
    std::string model_id;
    int sample_index = 0;
    std::vector<Step> steps;
    double cost_usd = 0.0;
    std::optional<std::int64_t> token_count;
    Outcome outcome;
    nlohmann::json extra = nlohmann::json::object();

    TrajectoryKey key() const { return {task_id, model_id, sample_index}; }
    bool operator==(const Trajectory&) const = default;
};

// ---- validation ----

/// Every invariant violation found in the trajectory; empty means valid.
std::vector<std::string> validate(const Trajectory& t);

// ---- corpus ingestion (line-delimited JSON) ----

struct Diagnostic {
    int line = 0;  // 1-based line number in the input
    std::string reason;
};

struct ParseResult {
    std::vector<Trajectory> trajectories;       // valid records, input order
    std::vector<Diagnostic> line_diagnostics;   // malformed or invalid lines
    std::vector<std::string> corpus_errors;     // cross-record problems (duplicate keys)

    bool clean() const { return line_diagnostics.empty() && corpus_errors.empty(); }
};

/// Parse one record-per-line input. Bad lines become diagnostics, never
/// aborts; duplicate (task_id, model_id, sample_index) is a corpus error
/// (first occurrence is kept).
ParseResult parse_corpus(std::istream& in);
ParseResult parse_corpus_text(std::string_view text);

/// Single-record conversion; throws std::runtime_error naming the problem.
Trajectory trajectory_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Trajectory& t);

/// One JSON line (no trailing newline), keys sorted, unknown fields merged
/// back in.
std::string serialize(const Trajectory& t);

// ---- outcome-blind rendering for the judge ----

struct JudgeView {
    std::string rendered_text;
    std::string source_key;  // content hash of the rendered transcript
};

struct RenderOptions {
    /// Maximum rendered size in characters; unlimited when absent.
    std::optional<std::size_t> max_chars;
    /// When over budget, keep this many leading/trailing steps and elide the
    /// middle with a marker line.
    int head_steps = 3;
    int tail_steps = 3;
};

class BudgetTooSmallError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Plain-text, turn-numbered transcript of the steps. Reasoning and actions
/// render as "Model:" lines, observations as "EXECUTION RESULT:" blocks.
/// Outcome fields never appear. Deterministic in (steps, options).
JudgeView render_judge_view(const Trajectory& t, const RenderOptions& options = {});

}  // namespace otk
