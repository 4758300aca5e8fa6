#include "otk/registry.hpp"

#include <sstream>
#include <stdexcept>

#include "otk/util.hpp"

namespace otk::registry {

namespace {

constexpr const char* kHeader =
    "model_id\tfamily\treasoning\tparams_b\tcontext_k\tfunction_calling\treasoning_effort";

bool parse_bool_cell(const std::string& cell, int lineno) {
    if (cell == "true") return true;
    if (cell == "false") return false;
    throw std::runtime_error("registry line " + std::to_string(lineno) +
                             ": expected true/false, got '" + cell + "'");
}

}  // namespace

Registry Registry::parse(const std::string& text) {
    std::vector<ModelInfo> models;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (trim(line) != kHeader) {
                throw std::runtime_error("registry line " + std::to_string(lineno) +
                                         ": unexpected header (see docs/formats.md)");
            }
            header_seen = true;
            continue;
        }
        auto cells = split(line, '\t');
        if (cells.size() != 7) {
            throw std::runtime_error("registry line " + std::to_string(lineno) + ": expected 7 " +
                                     "tab-separated cells, got " + std::to_string(cells.size()));
        }
        ModelInfo m;
        m.model_id = trim(cells[0]);
        m.family = trim(cells[1]);
        if (m.model_id.empty()) {
            throw std::runtime_error("registry line " + std::to_string(lineno) + ": empty model_id");
        }
        m.reasoning = parse_bool_cell(trim(cells[2]), lineno);
        const std::string params = trim(cells[3]);
        if (params != "-") {
            try {
                m.params_b = std::stod(params);
            } catch (const std::exception&) {
                throw std::runtime_error("registry line " + std::to_string(lineno) +
                                         ": bad params_b '" + params + "'");
            }
            if (*m.params_b <= 0.0) {
                throw std::runtime_error("registry line " + std::to_string(lineno) +
                                         ": params_b must be > 0");
            }
        }
        const std::string context = trim(cells[4]);
        if (context != "-") {
            try {
                m.context_k = std::stoi(context);
            } catch (const std::exception&) {
                throw std::runtime_error("registry line " + std::to_string(lineno) +
                                         ": bad context_k '" + context + "'");
            }
        }
        m.function_calling = parse_bool_cell(trim(cells[5]), lineno);
        const std::string effort = trim(cells[6]);
        if (effort != "-") {
            if (effort != "low" && effort != "high") {
                throw std::runtime_error("registry line " + std::to_string(lineno) +
                                         ": reasoning_effort must be low, high, or '-'");
            }
            m.reasoning_effort = effort;
        }
        models.push_back(std::move(m));
    }
    return from_models(std::move(models));
}

Registry Registry::load(const std::filesystem::path& path) {
    auto text = read_file(path);
    if (!text) throw std::runtime_error("cannot read registry file: " + path.string());
    return parse(*text);
}

Registry Registry::from_models(std::vector<ModelInfo> models) {
    Registry r;
    r.models_ = std::move(models);
    for (std::size_t i = 0; i < r.models_.size(); ++i) {
        auto [it, inserted] = r.index_.emplace(r.models_[i].model_id, i);
        if (!inserted) {
            throw std::runtime_error("duplicate model_id in registry: " + r.models_[i].model_id);
        }
    }
    return r;
}

const ModelInfo* Registry::find(const std::string& model_id) const {
    auto it = index_.find(model_id);
    return it == index_.end() ? nullptr : &models_[it->second];
}

std::optional<GroupAxis> axis_from_string(std::string_view s) {
    if (s == "reasoning") return GroupAxis::reasoning;
    if (s == "family") return GroupAxis::family;
    if (s == "size_bucket") return GroupAxis::size_bucket;
    if (s == "fc" || s == "function_calling") return GroupAxis::function_calling;
    if (s == "reasoning_effort") return GroupAxis::reasoning_effort;
    return std::nullopt;
}

std::string_view to_string(GroupAxis axis) {
    switch (axis) {
        case GroupAxis::reasoning: return "reasoning";
        case GroupAxis::family: return "family";
        case GroupAxis::size_bucket: return "size_bucket";
        case GroupAxis::function_calling: return "function_calling";
        case GroupAxis::reasoning_effort: return "reasoning_effort";
    }
    return "reasoning";
}

std::map<std::string, std::vector<std::size_t>> group_indices(
    std::span<const std::string> model_ids, const Registry& registry, GroupAxis axis,
    const GroupingOptions& options) {
    std::vector<std::string> unknown;
    for (const auto& id : model_ids) {
        if (registry.find(id) == nullptr) unknown.push_back(id);
    }
    if (!unknown.empty()) {
        std::sort(unknown.begin(), unknown.end());
        unknown.erase(std::unique(unknown.begin(), unknown.end()), unknown.end());
        std::string msg = "model ids missing from registry:";
        for (const auto& id : unknown) msg += " " + id;
        throw std::runtime_error(msg);
    }

    auto label_of = [&](const ModelInfo& m) -> std::string {
        switch (axis) {
            case GroupAxis::reasoning:
                return m.reasoning ? "reasoning" : "non-reasoning";
            case GroupAxis::family:
                return m.family.empty() ? "unknown-family" : m.family;
            case GroupAxis::size_bucket: {
                if (!m.params_b) return "unknown-size";
                return *m.params_b <= options.size_boundary_b
                           ? "<=" + format_fixed(options.size_boundary_b, 0) + "B"
                           : ">" + format_fixed(options.size_boundary_b, 0) + "B";
            }
            case GroupAxis::function_calling:
                return m.function_calling ? "function-calling" : "no-function-calling";
            case GroupAxis::reasoning_effort:
                return m.reasoning_effort ? *m.reasoning_effort : "unspecified";
        }
        return "unknown";
    };

    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < model_ids.size(); ++i) {
        groups[label_of(*registry.find(model_ids[i]))].push_back(i);
    }
    return groups;
}

}  // namespace otk::registry
