#pragma once

#include <string>
#include <vector>

#include "otk/trajectory.hpp"

namespace otk::patterns {

enum class DisengagementKind { none, overconfident_finish, giveup_finish };

std::string_view to_string(DisengagementKind kind);

struct PatternFlags {
    bool analysis_paralysis = false;
    int paralysis_run_length = 0;
    bool rogue_actions = false;
    std::vector<int> rogue_step_indices;  // ascending
    bool premature_disengagement = false;
    DisengagementKind disengagement_kind = DisengagementKind::none;

    bool operator==(const PatternFlags&) const = default;
    int flag_count() const {
        return (analysis_paralysis ? 1 : 0) + (rogue_actions ? 1 : 0) +
               (premature_disengagement ? 1 : 0);
    }
};

struct PatternConfig {
    /// Case-insensitive substrings that mark an observation as error-bearing.
    std::vector<std::string> error_markers = {"error", "traceback", "invalid", "failed"};
    /// Minimum run of planning-without-progress steps to flag paralysis.
    int paralysis_threshold = 3;
    /// Per-flag contribution to the heuristic score, capped at 10.
    double flag_weight = 4.0;
};

/// True when the observation text matches any configured error marker.
bool is_error_observation(const std::string& observation, const PatternConfig& cfg = {});

/// Steps that emit two or more environment actions (tool_call/finish) before
/// any feedback arrives.
struct RogueResult {
    bool flagged = false;
    std::vector<int> step_indices;
};
RogueResult detect_rogue_actions(const Trajectory& t, const PatternConfig& cfg = {});

/// Final finish without environmental validation: either the finish shares
/// its step with tool calls whose feedback never arrived, or nothing after
/// the last error observation was validated by a non-error observation.
/// The finish payload decides the kind: success keywords mean overconfident,
/// everything else is a give-up.
struct DisengagementResult {
    bool flagged = false;
    DisengagementKind kind = DisengagementKind::none;
};
DisengagementResult detect_premature_disengagement(const Trajectory& t,
                                                   const PatternConfig& cfg = {});

/// Longest run of consecutive steps after the first error observation that
/// either plan without acting (reasoning only, no actions) or repeat the
/// previous step's action payloads verbatim while the reasoning grows.
struct ParalysisResult {
    bool flagged = false;
    int run_length = 0;
};
ParalysisResult detect_analysis_paralysis(const Trajectory& t, const PatternConfig& cfg = {});

/// All three detectors in one pass.
PatternFlags detect_all(const Trajectory& t, const PatternConfig& cfg = {});

/// Deterministic composite used as the offline mock judge: flag_weight per
/// flagged manifestation, capped at 10. Lands in the 0-3 band when clean and
/// reaches 8+ only with two or more flags.
double heuristic_score(const Trajectory& t, const PatternConfig& cfg = {});
double heuristic_score(const PatternFlags& flags, const PatternConfig& cfg = {});

/// One-line deterministic explanation for mock assessments.
std::string describe_flags(const PatternFlags& flags);

}  // namespace otk::patterns
