#include "otk/manifest.hpp"

#include <stdexcept>

#include "otk/util.hpp"
#include "otk/version.hpp"

namespace otk {

using nlohmann::json;

RunManifest RunManifest::make(const std::string& command, bool with_timestamp) {
    RunManifest m;
    m.command = command;
    m.tool_version = kToolVersion;
    if (with_timestamp) m.timestamp = utc_timestamp();
    return m;
}

void RunManifest::add_input(const std::string& name, const std::filesystem::path& path) {
    input_digests[name] = digest_file(path);
}

void RunManifest::add_input_text(const std::string& name, std::string_view content) {
    input_digests[name] = digest_text(content);
}

json to_json(const RunManifest& m) {
    json j;
    j["command"] = m.command;
    j["config_digest"] = m.config_digest;
    j["input_digests"] = m.input_digests;
    j["prompt_version"] = m.prompt_version;
    if (m.seed) {
        j["seed"] = *m.seed;
    } else {
        j["seed"] = nullptr;
    }
    j["tool_version"] = m.tool_version;
    j["timestamp"] = m.timestamp;
    return j;
}

std::string manifest_comment_line(const RunManifest& m) {
    return "# manifest " + to_json(m).dump() + "\n";
}

std::string digest_file(const std::filesystem::path& path) {
    auto content = read_file(path);
    if (!content) throw std::runtime_error("cannot digest missing file: " + path.string());
    return digest_text(*content);
}

std::string digest_text(std::string_view content) { return hex64(fnv1a64(content)); }

}  // namespace otk
