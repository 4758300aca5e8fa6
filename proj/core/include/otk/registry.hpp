#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace otk::registry {

struct ModelInfo {
    std::string model_id;
    bool reasoning = false;
    std::string family;
    std::optional<double> params_b;        // billions; absent for closed models
    std::optional<int> context_k;          // thousands of tokens
    bool function_calling = false;
    std::optional<std::string> reasoning_effort;  // "low" or "high"

    bool operator==(const ModelInfo&) const = default;
};

class Registry {
public:
    static Registry load(const std::filesystem::path& path);
    static Registry parse(const std::string& text);
    static Registry from_models(std::vector<ModelInfo> models);

    const ModelInfo* find(const std::string& model_id) const;
    const std::vector<ModelInfo>& models() const { return models_; }
    bool empty() const { return models_.empty(); }

private:
    std::vector<ModelInfo> models_;
    std::map<std::string, std::size_t> index_;
};

enum class GroupAxis { reasoning, family, size_bucket, function_calling, reasoning_effort };

std::optional<GroupAxis> axis_from_string(std::string_view s);
std::string_view to_string(GroupAxis axis);

struct GroupingOptions {
    /// Boundary between the small and large size buckets, in billions.
    double size_boundary_b = 14.0;
};

/// Partition record indices by the chosen axis. Every model_id must be in
/// the registry; unknown ids raise std::runtime_error listing all offenders.
/// The result is a partition: labels are disjoint and cover every index
/// (models without the grouped attribute land in an explicit leftover label
/// such as "unknown-size" or "unspecified").
std::map<std::string, std::vector<std::size_t>> group_indices(
    std::span<const std::string> model_ids, const Registry& registry, GroupAxis axis,
    const GroupingOptions& options = {});

}  // namespace otk::registry
