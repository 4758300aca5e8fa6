#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "otk/config.hpp"
#include "otk/trajectory.hpp"

namespace otk::judge {

/// Version tag of the bundled evaluation prompt. Any change to the template
/// text must bump this, which invalidates every cache entry.
inline constexpr std::string_view kPromptVersion = "a1";

/// Placeholder line inside the template's INTERACTION block.
inline constexpr std::string_view kInteractionPlaceholder = "trajectory goes here";

/// The full evaluation prompt template (immutable resource).
const std::string& prompt_template();

/// The template with the view's transcript substituted for the placeholder.
std::string build_prompt(const JudgeView& view);

struct JudgeConfig {
    std::string endpoint_url;
    std::string judge_model_id;
    double temperature = 0.0;
    /// Escape hatch: scoring is defined at temperature 0; overriding must be
    /// explicit.
    bool allow_nonzero_temperature = false;
    int max_output_units = 2048;  // response token budget
    int max_retries = 2;          // re-asks after the first attempt
    std::chrono::milliseconds request_timeout{30000};
    std::filesystem::path cache_dir;  // empty disables caching
    std::string prompt_version = std::string(kPromptVersion);

    /// Throws std::runtime_error on contract violations.
    void check() const;

    static JudgeConfig from_config(const KeyValueConfig& cfg);
};

// ---- response parsing ----

enum class ParseErrorCode { no_answer_block, bad_json, bad_score };

std::string_view to_string(ParseErrorCode code);

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorCode code, const std::string& detail);
    ParseErrorCode code() const { return code_; }

private:
    ParseErrorCode code_;
};

struct JudgeAnswer {
    double score = 0.0;      // in [0, 10]
    std::string reasoning;   // verbatim from the response
};

/// Extract the last well-formed <answer>...</answer> block and parse its
/// JSON body. Score accepted as a number or a numeric string. Throws
/// ParseError; every parse error is retryable.
JudgeAnswer parse_judge_response(const std::string& raw);

// ---- transport ----

struct TransportResult {
    bool ok = false;
    std::string text;   // raw model output when ok
    std::string error;  // transport diagnostic when not ok

    static TransportResult success(std::string body) { return {true, std::move(body), {}}; }
    static TransportResult failure(std::string why) { return {false, {}, std::move(why)}; }
};

class JudgeClient {
public:
    virtual ~JudgeClient() = default;
    /// May be called from several threads at once; each call independent.
    virtual TransportResult send(const std::string& prompt) = 0;
};

/// Scripted client for tests and offline runs. The responder is a pure
/// function of (prompt, per-prompt attempt number), so batch results do not
/// depend on scheduling.
class ScriptedJudgeClient : public JudgeClient {
public:
    using Responder = std::function<TransportResult(const std::string& prompt, int attempt)>;

    explicit ScriptedJudgeClient(Responder responder);
    TransportResult send(const std::string& prompt) override;

    int total_calls() const { return calls_.load(); }

    /// Convenience responder body: a valid answer block with a fixed score.
    static std::string answer_block(double score, const std::string& reasoning);

private:
    Responder responder_;
    std::mutex mu_;
    std::map<std::uint64_t, int> attempts_;
    std::atomic<int> calls_{0};
};

// ---- scoring ----

struct Assessment {
    double score = 0.0;
    std::string reasoning;
    std::string judge_model_id;
    std::string prompt_version;
    bool cached = false;
    int retries = 0;  // re-asks consumed before this answer
};

enum class FailureKind { transport, unparseable };

std::string_view to_string(FailureKind kind);

struct JudgeFailure {
    FailureKind kind = FailureKind::transport;
    std::string detail;
    int retries = 0;
};

struct ScoreOutcome {
    std::optional<Assessment> assessment;
    std::optional<JudgeFailure> failure;

    bool ok() const { return assessment.has_value(); }
};

/// Cache key for an assessment: (view content, prompt version, judge model).
std::string cache_key(std::string_view source_key, std::string_view prompt_version,
                      std::string_view judge_model_id);

/// Score one view. Cache hit returns the stored assessment with cached=true
/// and no transport call; otherwise asks the judge, retrying the identical
/// prompt on transport or parse failures up to max_retries.
ScoreOutcome score_trajectory(const JudgeView& view, const JudgeConfig& cfg, JudgeClient& client);

struct KeyedView {
    TrajectoryKey key;
    JudgeView view;
};

struct ScoredTrajectory {
    TrajectoryKey key;
    Assessment assessment;
};

struct IndexedFailure {
    std::size_t input_index = 0;
    TrajectoryKey key;
    JudgeFailure failure;
};

struct CorpusScores {
    std::vector<ScoredTrajectory> scored;   // input order, failures skipped
    std::vector<IndexedFailure> failures;   // input order with positions
};

/// Score every view exactly once with up to `parallelism` in-flight requests.
/// Output order matches input order regardless of completion order.
CorpusScores score_corpus(const std::vector<KeyedView>& views, const JudgeConfig& cfg,
                          JudgeClient& client, int parallelism);

}  // namespace otk::judge
