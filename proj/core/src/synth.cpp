#include "otk/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "otk/util.hpp"

namespace otk::synth {

namespace {

Action tool_action(const std::string& name, std::string payload) {
    Action a;
    a.kind = ActionKind::tool_call;
    a.name = name;
    a.payload = std::move(payload);
    return a;
}

Action finish_action(std::string payload) {
    Action a;
    a.kind = ActionKind::finish;
    a.payload = std::move(payload);
    return a;
}

Step make_step(std::vector<Action> actions, std::string reasoning, std::string observation) {
    Step s;
    s.actions = std::move(actions);
    if (!reasoning.empty()) s.reasoning = std::move(reasoning);
    if (!observation.empty()) s.observation = std::move(observation);
    return s;
}

std::string task_name(int i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "task-%04d", i);
    return std::string(buf);
}

struct Templates {
    // Unique payload counter keeps repeated-payload heuristics quiet in the
    // benign sections.
    int payload_id = 0;

    std::string next_payload(const std::string& stem) {
        return stem + " #" + std::to_string(payload_id++);
    }

    std::vector<Step> benign(std::mt19937_64& rng, int mean_steps) {
        std::vector<Step> steps;
        const int jitter = static_cast<int>(uniform_below(rng, 3));  // 0..2
        const int count = std::max(2, mean_steps - 1 + jitter);
        steps.push_back(make_step({tool_action("bash", next_payload("cat issue.md"))},
                                  "Reading the issue and exploring the repository.",
                                  "ok: issue text shown"));
        for (int i = 1; i < count; ++i) {
            const bool edit = i % 2 == 0;
            steps.push_back(make_step(
                {tool_action(edit ? "str_replace_editor" : "bash",
                             next_payload(edit ? "edit source file" : "run check"))},
                "", "ok: step completed"));
        }
        return steps;
    }

    // Example-6 shape: a setback, then two calls in one turn.
    std::vector<Step> rogue_block() {
        std::vector<Step> steps;
        steps.push_back(make_step({tool_action("str_replace_editor", next_payload("apply patch"))},
                                  "", "Error: old string not found"));
        steps.push_back(make_step(
            {tool_action("str_replace_editor", next_payload("retry patch")),
             tool_action("str_replace_editor", next_payload("and the follow-up edit"))},
            "I forgot the old string, let me call the function again and then do the other thing",
            "Error: only one action is processed per turn"));
        return steps;
    }

    // Example-4 shape: an error followed by actionless planning turns.
    std::vector<Step> paralysis_block(int run_length) {
        std::vector<Step> steps;
        steps.push_back(make_step({tool_action("str_replace_editor", next_payload("rewrite class"))},
                                  "", "Error: invalid indentation line 10"));
        std::string plan = "Maybe I should restructure the class.";
        for (int i = 0; i < run_length; ++i) {
            steps.push_back(make_step({}, plan, "Error: still invalid line 10"));
            plan += " And we also need to fix this other thing before trying again.";
        }
        return steps;
    }

    Step recovery() {
        return make_step({tool_action("bash", next_payload("run test suite"))}, "",
                         "ok: checks pass");
    }

    // Example-5 shape: an error, then a finish with no validation.
    std::vector<Step> premature_ending(bool overconfident) {
        std::vector<Step> steps;
        steps.push_back(make_step({tool_action("str_replace_editor", next_payload("final patch"))},
                                  "", "Error: patch failed to apply"));
        if (overconfident) {
            steps.push_back(make_step({finish_action("This fixes it! Concluding the task now.")},
                                      "This fixes it! Concluding the task now.", ""));
        } else {
            steps.push_back(make_step({finish_action("I am stuck here and giving up on this task.")},
                                      "I am stuck here and giving up on this task.", ""));
        }
        return steps;
    }

    Step clean_ending() {
        return make_step({finish_action("All changes are in place and the checks pass.")},
                         "Wrapping up.", "");
    }
};

void append(std::vector<Step>& dst, std::vector<Step> src) {
    for (auto& s : src) dst.push_back(std::move(s));
}

}  // namespace

void SynthConfig::check() const {
    auto in01 = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (n_tasks < 1) throw std::invalid_argument("n_tasks must be >= 1");
    if (samples_per_task < 1) throw std::invalid_argument("samples_per_task must be >= 1");
    if (mean_steps < 2) throw std::invalid_argument("mean_steps must be >= 2");
    if (!in01(p_paralysis) || !in01(p_rogue) || !in01(p_premature)) {
        throw std::invalid_argument("pattern probabilities must be in [0,1]");
    }
    if (!in01(base_success_rate)) throw std::invalid_argument("base_success_rate must be in [0,1]");
    if (success_penalty_per_pattern < 0.0) {
        throw std::invalid_argument("success_penalty_per_pattern must be >= 0");
    }
    if (model_id.empty()) throw std::invalid_argument("model_id must be set");
}

SynthConfig SynthConfig::from_config(const KeyValueConfig& cfg) {
    SynthConfig out;
    out.n_tasks = static_cast<int>(cfg.get_int("n_tasks", out.n_tasks));
    out.samples_per_task = static_cast<int>(cfg.get_int("samples_per_task", out.samples_per_task));
    out.p_paralysis = cfg.get_double("p_paralysis", out.p_paralysis);
    out.p_rogue = cfg.get_double("p_rogue", out.p_rogue);
    out.p_premature = cfg.get_double("p_premature", out.p_premature);
    out.base_success_rate = cfg.get_double("base_success_rate", out.base_success_rate);
    out.success_penalty_per_pattern =
        cfg.get_double("success_penalty_per_pattern", out.success_penalty_per_pattern);
    out.mean_steps = static_cast<int>(cfg.get_int("mean_steps", out.mean_steps));
    out.seed = static_cast<std::uint64_t>(cfg.get_int("seed", 0));
    out.model_id = cfg.get("model_id", out.model_id);
    out.check();
    return out;
}

SynthCorpus generate_corpus(const SynthConfig& cfg) {
    cfg.check();
    const patterns::PatternConfig pattern_cfg;
    SynthCorpus corpus;
    corpus.trajectories.reserve(static_cast<std::size_t>(cfg.n_tasks) *
                                static_cast<std::size_t>(cfg.samples_per_task));

    for (int task = 0; task < cfg.n_tasks; ++task) {
        for (int sample = 0; sample < cfg.samples_per_task; ++sample) {
            std::mt19937_64 rng(derive_seed(
                cfg.seed, task_name(task) + ":" + std::to_string(sample)));

            const bool inject_paralysis = bernoulli(rng, cfg.p_paralysis);
            const bool inject_rogue = bernoulli(rng, cfg.p_rogue);
            const bool inject_premature = bernoulli(rng, cfg.p_premature);
            const bool overconfident = bernoulli(rng, 0.5);

            Templates tpl;
            std::vector<Step> steps = tpl.benign(rng, cfg.mean_steps);
            if (inject_rogue) append(steps, tpl.rogue_block());
            if (inject_paralysis) append(steps, tpl.paralysis_block(pattern_cfg.paralysis_threshold));
            if (inject_rogue || inject_paralysis) steps.push_back(tpl.recovery());
            if (inject_premature) {
                append(steps, tpl.premature_ending(overconfident));
            } else {
                steps.push_back(tpl.clean_ending());
            }
            for (std::size_t i = 0; i < steps.size(); ++i) {
                steps[i].index = static_cast<int>(i);
            }

            const int injected = (inject_paralysis ? 1 : 0) + (inject_rogue ? 1 : 0) +
                                 (inject_premature ? 1 : 0);
            const double p_success = std::clamp(
                cfg.base_success_rate - cfg.success_penalty_per_pattern * injected, 0.0, 1.0);

            Trajectory t;
            t.task_id = task_name(task);
            t.model_id = cfg.model_id;
            t.sample_index = sample;
            t.steps = std::move(steps);
            t.cost_usd =
                std::round((0.5 + uniform01(rng) * 2.0 +
                            0.05 * static_cast<double>(t.steps.size())) * 100.0) / 100.0;
            t.token_count = static_cast<std::int64_t>(t.steps.size()) *
                            static_cast<std::int64_t>(200 + uniform_below(rng, 200));
            t.outcome.resolved = bernoulli(rng, p_success);

            patterns::PatternFlags label;
            label.analysis_paralysis = inject_paralysis;
            label.paralysis_run_length = inject_paralysis ? pattern_cfg.paralysis_threshold : 0;
            label.rogue_actions = inject_rogue;
            if (inject_rogue) {
                // The two-call step sits right after the benign block's last
                // step plus the setback step.
                for (const Step& s : t.steps) {
                    int env_actions = 0;
                    for (const Action& a : s.actions) {
                        if (a.kind != ActionKind::message) ++env_actions;
                    }
                    if (env_actions >= 2) label.rogue_step_indices.push_back(s.index);
                }
            }
            label.premature_disengagement = inject_premature;
            label.disengagement_kind =
                inject_premature ? (overconfident ? patterns::DisengagementKind::overconfident_finish
                                                  : patterns::DisengagementKind::giveup_finish)
                                 : patterns::DisengagementKind::none;

            corpus.trajectories.push_back(std::move(t));
            corpus.labels.push_back(std::move(label));
        }
    }
    return corpus;
}

}  // namespace otk::synth
