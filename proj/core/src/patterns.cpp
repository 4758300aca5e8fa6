#include "otk/patterns.hpp"

#include <algorithm>

#include "otk/util.hpp"

namespace otk::patterns {

namespace {

// Keyword rules for classifying a finish payload. Checked in order: an
// explicit inability phrase wins over incidental success words ("I can't
// solve this" is a give-up, not a success claim).
const std::vector<std::string>& giveup_markers() {
    static const std::vector<std::string> kMarkers = {
        "can't", "cannot", "unable", "give up", "giving up", "impossible", "not possible",
    };
    return kMarkers;
}

const std::vector<std::string>& success_markers() {
    static const std::vector<std::string> kMarkers = {
        "fix", "solv", "resolv", "success", "complet", "done", "works",
        "working", "correct", "ready", "final answer",
    };
    return kMarkers;
}

bool is_env_action(const Action& a) {
    return a.kind == ActionKind::tool_call || a.kind == ActionKind::finish;
}

bool step_has_error_observation(const Step& s, const PatternConfig& cfg) {
    return s.observation && is_error_observation(*s.observation, cfg);
}

std::vector<std::string> payloads_of(const Step& s) {
    std::vector<std::string> out;
    out.reserve(s.actions.size());
    for (const Action& a : s.actions) out.push_back(a.payload);
    return out;
}

std::size_t reasoning_length(const Step& s) { return s.reasoning ? s.reasoning->size() : 0; }

}  // namespace

std::string_view to_string(DisengagementKind kind) {
    switch (kind) {
        case DisengagementKind::none: return "none";
        case DisengagementKind::overconfident_finish: return "overconfident_finish";
        case DisengagementKind::giveup_finish: return "giveup_finish";
    }
    return "none";
}

bool is_error_observation(const std::string& observation, const PatternConfig& cfg) {
    for (const auto& marker : cfg.error_markers) {
        if (contains_ci(observation, marker)) return true;
    }
    return false;
}

RogueResult detect_rogue_actions(const Trajectory& t, const PatternConfig&) {
    RogueResult out;
    for (const Step& s : t.steps) {
        int env_actions = 0;
        for (const Action& a : s.actions) {
            if (is_env_action(a)) ++env_actions;
        }
        if (env_actions >= 2) out.step_indices.push_back(s.index);
    }
    std::sort(out.step_indices.begin(), out.step_indices.end());
    out.flagged = !out.step_indices.empty();
    return out;
}

DisengagementResult detect_premature_disengagement(const Trajectory& t,
                                                   const PatternConfig& cfg) {
    DisengagementResult out;
    if (t.steps.empty()) return out;
    const Step& last = t.steps.back();

    const Action* finish_action = nullptr;
    bool has_tool_call = false;
    for (const Action& a : last.actions) {
        if (a.kind == ActionKind::finish) finish_action = &a;
        if (a.kind == ActionKind::tool_call) has_tool_call = true;
    }
    if (finish_action == nullptr) return out;

    // (a) finish bundled with tool calls whose feedback never arrived.
    const bool unobserved_siblings = has_tool_call && !last.observation;

    // (b) nothing after the most recent error observation was validated by a
    // non-error observation. Without any error observation the whole
    // trajectory must contain at least one validated tool call.
    std::ptrdiff_t last_error = -1;
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        if (step_has_error_observation(t.steps[i], cfg)) {
            last_error = static_cast<std::ptrdiff_t>(i);
        }
    }
    bool validated_after_error = false;
    for (std::size_t i = static_cast<std::size_t>(last_error + 1); i < t.steps.size(); ++i) {
        const Step& s = t.steps[i];
        bool tool = false;
        for (const Action& a : s.actions) tool = tool || a.kind == ActionKind::tool_call;
        if (tool && s.observation && !is_error_observation(*s.observation, cfg)) {
            validated_after_error = true;
            break;
        }
    }

    out.flagged = unobserved_siblings || !validated_after_error;
    if (!out.flagged) return out;

    const std::string& payload = finish_action->payload;
    bool giveup = payload.empty();
    for (const auto& m : giveup_markers()) {
        if (contains_ci(payload, m)) giveup = true;
    }
    if (!giveup) {
        bool success = false;
        for (const auto& m : success_markers()) {
            if (contains_ci(payload, m)) success = true;
        }
        out.kind =
            success ? DisengagementKind::overconfident_finish : DisengagementKind::giveup_finish;
    } else {
        out.kind = DisengagementKind::giveup_finish;
    }
    return out;
}

ParalysisResult detect_analysis_paralysis(const Trajectory& t, const PatternConfig& cfg) {
    ParalysisResult out;
    std::ptrdiff_t first_error = -1;
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        if (step_has_error_observation(t.steps[i], cfg)) {
            first_error = static_cast<std::ptrdiff_t>(i);
            break;
        }
    }
    if (first_error < 0) return out;

    int run = 0;
    for (std::size_t i = static_cast<std::size_t>(first_error + 1); i < t.steps.size(); ++i) {
        const Step& s = t.steps[i];
        bool qualifies = false;
        if (s.actions.empty() && s.reasoning) {
            qualifies = true;  // pure planning turn
        } else if (i > 0 && !s.actions.empty()) {
            // Same action payloads as the previous step while the plan grows.
            const Step& prev = t.steps[i - 1];
            qualifies = payloads_of(s) == payloads_of(prev) &&
                        reasoning_length(s) > reasoning_length(prev) && s.reasoning;
        }
        if (qualifies) {
            ++run;
            out.run_length = std::max(out.run_length, run);
        } else {
            run = 0;
        }
    }
    out.flagged = out.run_length >= cfg.paralysis_threshold;
    return out;
}

PatternFlags detect_all(const Trajectory& t, const PatternConfig& cfg) {
    PatternFlags flags;
    auto rogue = detect_rogue_actions(t, cfg);
    flags.rogue_actions = rogue.flagged;
    flags.rogue_step_indices = std::move(rogue.step_indices);
    auto paralysis = detect_analysis_paralysis(t, cfg);
    flags.analysis_paralysis = paralysis.flagged;
    flags.paralysis_run_length = paralysis.run_length;
    auto disengagement = detect_premature_disengagement(t, cfg);
    flags.premature_disengagement = disengagement.flagged;
    flags.disengagement_kind = disengagement.kind;
    return flags;
}

double heuristic_score(const PatternFlags& flags, const PatternConfig& cfg) {
    return std::min(10.0, cfg.flag_weight * flags.flag_count());
}

double heuristic_score(const Trajectory& t, const PatternConfig& cfg) {
    return heuristic_score(detect_all(t, cfg), cfg);
}

std::string describe_flags(const PatternFlags& flags) {
    if (flags.flag_count() == 0) {
        return "no overthinking patterns detected; consistent environment interaction";
    }
    std::string out = "detected:";
    if (flags.analysis_paralysis) {
        out += " analysis_paralysis(run=" + std::to_string(flags.paralysis_run_length) + ")";
    }
    if (flags.rogue_actions) {
        out += " rogue_actions(steps=" + std::to_string(flags.rogue_step_indices.size()) + ")";
    }
    if (flags.premature_disengagement) {
        out += " premature_disengagement(" + std::string(to_string(flags.disengagement_kind)) + ")";
    }
    return out;
}

}  // namespace otk::patterns
