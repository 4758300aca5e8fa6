#include "otk/trajectory.hpp"

#include <map>
#include <sstream>

#include "otk/util.hpp"

namespace otk {

using nlohmann::json;

std::string_view to_string(ActionKind kind) {
    switch (kind) {
        case ActionKind::tool_call: return "tool_call";
        case ActionKind::finish: return "finish";
        case ActionKind::message: return "message";
    }
    return "message";
}

std::optional<ActionKind> action_kind_from_string(std::string_view s) {
    if (s == "tool_call") return ActionKind::tool_call;
    if (s == "finish") return ActionKind::finish;
    if (s == "message") return ActionKind::message;
    return std::nullopt;
}

std::string TrajectoryKey::to_string() const {
    return task_id + "/" + model_id + "/" + std::to_string(sample_index);
}

std::vector<std::string> validate(const Trajectory& t) {
    std::vector<std::string> violations;
    if (t.task_id.empty()) violations.push_back("task_id is empty");
    if (t.model_id.empty()) violations.push_back("model_id is empty");
    if (t.sample_index < 0) violations.push_back("sample_index is negative");
    if (!(t.cost_usd >= 0.0)) violations.push_back("cost_usd is negative");
    if (t.token_count && *t.token_count < 0) violations.push_back("token_count is negative");

    if (t.steps.empty()) {
        violations.push_back("empty steps");
        return violations;
    }
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const Step& s = t.steps[i];
        if (s.index != static_cast<int>(i)) {
            violations.push_back("step indices not contiguous: expected " + std::to_string(i) +
                                 ", found " + std::to_string(s.index));
        }
        if (s.actions.empty() && !s.reasoning) {
            violations.push_back("step " + std::to_string(s.index) +
                                 " has no actions and no reasoning");
        }
        for (std::size_t a = 0; a < s.actions.size(); ++a) {
            const Action& act = s.actions[a];
            if (act.kind == ActionKind::tool_call && (!act.name || act.name->empty())) {
                violations.push_back("step " + std::to_string(s.index) + " action " +
                                     std::to_string(a) + ": tool_call without a name");
            }
        }
    }
    return violations;
}

namespace {

std::string json_type_name(const json& j) { return j.type_name(); }

std::string require_string(const json& j, const char* field) {
    if (!j.is_string()) {
        throw std::runtime_error(std::string(field) + ": expected string, got " +
                                 json_type_name(j));
    }
    return j.get<std::string>();
}

json take_extra(json obj, std::initializer_list<const char*> known) {
    for (const char* k : known) obj.erase(k);
    return obj;
}

Action action_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) throw std::runtime_error(where + ": action must be an object");
    Action a;
    if (!j.contains("kind")) throw std::runtime_error(where + ": action missing 'kind'");
    const std::string kind_str = require_string(j.at("kind"), "kind");
    auto kind = action_kind_from_string(kind_str);
    if (!kind) throw std::runtime_error(where + ": unknown action kind '" + kind_str + "'");
    a.kind = *kind;
    if (j.contains("name") && !j.at("name").is_null()) {
        a.name = require_string(j.at("name"), "name");
    }
    if (j.contains("payload")) a.payload = require_string(j.at("payload"), "payload");
    a.extra = take_extra(j, {"kind", "name", "payload"});
    return a;
}

Step step_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) throw std::runtime_error(where + ": step must be an object");
    Step s;
    if (!j.contains("index") || !j.at("index").is_number_integer()) {
        throw std::runtime_error(where + ": step missing integer 'index'");
    }
    s.index = j.at("index").get<int>();
    if (j.contains("reasoning") && !j.at("reasoning").is_null()) {
        s.reasoning = require_string(j.at("reasoning"), "reasoning");
    }
    if (j.contains("observation") && !j.at("observation").is_null()) {
        s.observation = require_string(j.at("observation"), "observation");
    }
    if (j.contains("actions")) {
        const json& arr = j.at("actions");
        if (!arr.is_array()) throw std::runtime_error(where + ": 'actions' must be an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            s.actions.push_back(
                action_from_json(arr[i], where + " action " + std::to_string(i)));
        }
    }
    s.extra = take_extra(j, {"index", "reasoning", "observation", "actions"});
    return s;
}

}  // namespace

Trajectory trajectory_from_json(const json& j) {
    if (!j.is_object()) throw std::runtime_error("record must be a JSON object");
    Trajectory t;
    if (!j.contains("task_id")) throw std::runtime_error("missing 'task_id'");
    t.task_id = require_string(j.at("task_id"), "task_id");
    if (!j.contains("model_id")) throw std::runtime_error("missing 'model_id'");
    t.model_id = require_string(j.at("model_id"), "model_id");
    if (j.contains("sample_index")) {
        if (!j.at("sample_index").is_number_integer()) {
            throw std::runtime_error("'sample_index' must be an integer");
        }
        t.sample_index = j.at("sample_index").get<int>();
    }
    if (j.contains("cost_usd")) {
        if (!j.at("cost_usd").is_number()) throw std::runtime_error("'cost_usd' must be a number");
        t.cost_usd = j.at("cost_usd").get<double>();
    }
    if (j.contains("token_count") && !j.at("token_count").is_null()) {
        if (!j.at("token_count").is_number_integer()) {
            throw std::runtime_error("'token_count' must be an integer");
        }
        t.token_count = j.at("token_count").get<std::int64_t>();
    }
    if (!j.contains("steps") || !j.at("steps").is_array()) {
        throw std::runtime_error("missing 'steps' array");
    }
    const json& steps = j.at("steps");
    for (std::size_t i = 0; i < steps.size(); ++i) {
        t.steps.push_back(step_from_json(steps[i], "step " + std::to_string(i)));
    }
    if (!j.contains("outcome") || !j.at("outcome").is_object()) {
        throw std::runtime_error("missing 'outcome' object");
    }
    const json& oc = j.at("outcome");
    if (!oc.contains("resolved") || !oc.at("resolved").is_boolean()) {
        throw std::runtime_error("outcome missing boolean 'resolved'");
    }
    t.outcome.resolved = oc.at("resolved").get<bool>();
    if (oc.contains("notes") && !oc.at("notes").is_null()) {
        t.outcome.notes = require_string(oc.at("notes"), "outcome.notes");
    }
    t.outcome.extra = take_extra(oc, {"resolved", "notes"});
    t.extra = take_extra(
        j, {"task_id", "model_id", "sample_index", "cost_usd", "token_count", "steps", "outcome"});
    return t;
}

json to_json(const Trajectory& t) {
    json j = t.extra.is_object() ? t.extra : json::object();
    j["task_id"] = t.task_id;
    j["model_id"] = t.model_id;
    j["sample_index"] = t.sample_index;
    j["cost_usd"] = t.cost_usd;
    if (t.token_count) j["token_count"] = *t.token_count;
    json steps = json::array();
    for (const Step& s : t.steps) {
        json js = s.extra.is_object() ? s.extra : json::object();
        js["index"] = s.index;
        if (s.reasoning) js["reasoning"] = *s.reasoning;
        if (s.observation) js["observation"] = *s.observation;
        json actions = json::array();
        for (const Action& a : s.actions) {
            json ja = a.extra.is_object() ? a.extra : json::object();
            ja["kind"] = std::string(to_string(a.kind));
            if (a.name) ja["name"] = *a.name;
            ja["payload"] = a.payload;
            actions.push_back(std::move(ja));
        }
        js["actions"] = std::move(actions);
        steps.push_back(std::move(js));
    }
    j["steps"] = std::move(steps);
    json oc = t.outcome.extra.is_object() ? t.outcome.extra : json::object();
    oc["resolved"] = t.outcome.resolved;
    if (t.outcome.notes) oc["notes"] = *t.outcome.notes;
    j["outcome"] = std::move(oc);
    return j;
}

std::string serialize(const Trajectory& t) { return to_json(t).dump(); }

ParseResult parse_corpus(std::istream& in) {
    ParseResult result;
    std::map<TrajectoryKey, int> seen;  // key -> first line number
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
        if (j.is_discarded()) {
            result.line_diagnostics.push_back({lineno, "invalid JSON"});
            continue;
        }
        Trajectory t;
        try {
            t = trajectory_from_json(j);
        } catch (const std::exception& e) {
            result.line_diagnostics.push_back({lineno, e.what()});
            continue;
        }
        auto violations = validate(t);
        if (!violations.empty()) {
            std::string reason;
            for (std::size_t i = 0; i < violations.size(); ++i) {
                if (i > 0) reason += "; ";
                reason += violations[i];
            }
            result.line_diagnostics.push_back({lineno, reason});
            continue;
        }
        auto [it, inserted] = seen.emplace(t.key(), lineno);
        if (!inserted) {
            result.corpus_errors.push_back("duplicate key " + t.key().to_string() + " at line " +
                                           std::to_string(lineno) + " (first seen at line " +
                                           std::to_string(it->second) + ")");
            continue;
        }
        result.trajectories.push_back(std::move(t));
    }
    return result;
}

ParseResult parse_corpus_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_corpus(in);
}

namespace {

std::string render_step(const Step& s) {
    std::string out;
    out += "--- Turn " + std::to_string(s.index) + " ---\n";
    if (s.reasoning) {
        out += "Model: " + *s.reasoning + "\n";
    }
    for (const Action& a : s.actions) {
        switch (a.kind) {
            case ActionKind::tool_call:
                out += "Model: <function=" + a.name.value_or("") + ">" + a.payload +
                       "</function>\n";
                break;
            case ActionKind::finish:
                out += "Model: <function=finish>" + a.payload + "</function>\n";
                break;
            case ActionKind::message:
                out += "Model: " + a.payload + "\n";
                break;
        }
    }
    if (s.observation) {
        out += "EXECUTION RESULT: " + *s.observation + "\n";
    }
    return out;
}

std::string join_blocks(const std::vector<std::string>& blocks, std::size_t head,
                        std::size_t tail, std::size_t elided) {
    std::string out;
    for (std::size_t i = 0; i < head; ++i) {
        if (!out.empty()) out += "\n";
        out += blocks[i];
    }
    if (elided > 0) {
        if (!out.empty()) out += "\n";
        out += "… " + std::to_string(elided) + " steps elided …\n";
    }
    for (std::size_t i = blocks.size() - tail; i < blocks.size(); ++i) {
        if (!out.empty()) out += "\n";
        out += blocks[i];
    }
    return out;
}

}  // namespace

JudgeView render_judge_view(const Trajectory& t, const RenderOptions& options) {
    std::vector<std::string> blocks;
    blocks.reserve(t.steps.size());
    for (const Step& s : t.steps) blocks.push_back(render_step(s));

    std::string text = join_blocks(blocks, blocks.size(), 0, 0);
    if (options.max_chars && text.size() > *options.max_chars) {
        const std::size_t head = static_cast<std::size_t>(std::max(options.head_steps, 0));
        const std::size_t tail = static_cast<std::size_t>(std::max(options.tail_steps, 0));
        if (blocks.size() <= head + tail) {
            throw BudgetTooSmallError("budget too small: " + std::to_string(*options.max_chars) +
                                      " chars cannot fit " + std::to_string(blocks.size()) +
                                      " steps");
        }
        text = join_blocks(blocks, head, tail, blocks.size() - head - tail);
        if (text.size() > *options.max_chars) {
            throw BudgetTooSmallError(
                "budget too small: head+tail rendering needs " + std::to_string(text.size()) +
                " chars, budget is " + std::to_string(*options.max_chars));
        }
    }

    JudgeView view;
    view.rendered_text = std::move(text);
    view.source_key = hex64(fnv1a64(view.rendered_text));
    return view;
}

}  // namespace otk
