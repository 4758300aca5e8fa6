// Small fixture builders shared by the unit suites.
#pragma once

#include <string>
#include <vector>

#include "otk/trajectory.hpp"

namespace testutil {

inline otk::Action tool(const std::string& name, const std::string& payload) {
    otk::Action a;
    a.kind = otk::ActionKind::tool_call;
    a.name = name;
    a.payload = payload;
    return a;
}

inline otk::Action finish(const std::string& payload) {
    otk::Action a;
    a.kind = otk::ActionKind::finish;
    a.payload = payload;
    return a;
}

inline otk::Action message(const std::string& payload) {
    otk::Action a;
    a.kind = otk::ActionKind::message;
    a.payload = payload;
    return a;
}

struct StepSpec {
    std::vector<otk::Action> actions;
    std::string reasoning;    // empty means absent
    std::string observation;  // empty means absent
};

inline otk::Trajectory make_trajectory(std::vector<StepSpec> specs,
                                       const std::string& task_id = "task-1",
                                       const std::string& model_id = "model-a",
                                       int sample_index = 0) {
    otk::Trajectory t;
    t.task_id = task_id;
    t.model_id = model_id;
    t.sample_index = sample_index;
    t.cost_usd = 1.0;
    int i = 0;
    for (auto& spec : specs) {
        otk::Step s;
        s.index = i++;
        s.actions = std::move(spec.actions);
        if (!spec.reasoning.empty()) s.reasoning = spec.reasoning;
        if (!spec.observation.empty()) s.observation = spec.observation;
        t.steps.push_back(std::move(s));
    }
    return t;
}

}  // namespace testutil
