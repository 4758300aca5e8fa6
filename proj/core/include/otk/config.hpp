#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace otk {

/// Flat key=value configuration file. One pair per line, '#' starts a
/// comment, blank lines ignored, whitespace around key and value trimmed.
class KeyValueConfig {
public:
    static KeyValueConfig parse(const std::string& text);
    static KeyValueConfig load(const std::filesystem::path& path);

    bool has(const std::string& key) const;

    std::string get(const std::string& key, const std::string& fallback) const;
    std::optional<std::string> get(const std::string& key) const;

    /// Typed accessors throw std::runtime_error naming the key on bad values.
    double get_double(const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

}  // namespace otk
