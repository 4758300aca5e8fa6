#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace otk {

/// Provenance block embedded in every emitted artifact: a leading comment
/// line in CSVs, a top-level "manifest" field in JSON. Identical manifests
/// (timestamp aside) imply identical outputs. Volatile execution knobs
/// (parallelism) are deliberately not recorded.
struct RunManifest {
    std::string command;
    std::string config_digest;                         // "" without a config file
    std::map<std::string, std::string> input_digests;  // input name -> content digest
    std::string prompt_version;                        // "" when not applicable
    std::optional<std::uint64_t> seed;
    std::string tool_version;
    std::string timestamp;  // ISO-8601 UTC; "" when normalized away

    static RunManifest make(const std::string& command, bool with_timestamp);

    void add_input(const std::string& name, const std::filesystem::path& path);
    void add_input_text(const std::string& name, std::string_view content);
};

nlohmann::json to_json(const RunManifest& m);

/// "# manifest {...}\n" — the first line of every emitted CSV.
std::string manifest_comment_line(const RunManifest& m);

/// Content digest of a file; throws when unreadable.
std::string digest_file(const std::filesystem::path& path);
std::string digest_text(std::string_view content);

}  // namespace otk
