#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace otk {

/// FNV-1a 64-bit over raw bytes. Used for content keys and manifest digests;
/// not a cryptographic hash.
std::uint64_t fnv1a64(std::string_view bytes);

/// 16-char lowercase hex rendering of a 64-bit value.
std::string hex64(std::uint64_t v);

/// fnv1a64 of the concatenation of parts with '\x1f' separators, so that
/// ("ab","c") and ("a","bc") hash differently.
std::uint64_t combined_hash(const std::vector<std::string_view>& parts);

/// Derive a child seed from a parent seed and a label string.
std::uint64_t derive_seed(std::uint64_t parent, std::string_view label);

// ---- deterministic random helpers ----
//
// std::mt19937_64 output is pinned by the standard, but the standard
// distributions are not. These helpers define the mapping from engine output
// to values, so corpora and Monte Carlo runs are reproducible byte-for-byte.

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
double uniform01(std::mt19937_64& rng);

/// Uniform integer in [0, bound). bound must be > 0.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Bernoulli draw with success probability p (clamped to [0,1]).
bool bernoulli(std::mt19937_64& rng, double p);

/// Standard normal via Box-Muller (consumes two uniform draws).
double normal01(std::mt19937_64& rng);

// ---- string helpers ----

std::string to_lower(std::string_view s);

/// Case-insensitive substring search.
bool contains_ci(std::string_view haystack, std::string_view needle);

std::vector<std::string> split(std::string_view s, char delim);

std::string trim(std::string_view s);

/// Fixed-decimal formatting with the C locale ("%.*f").
std::string format_fixed(double v, int decimals);

// ---- file helpers ----

/// Read a whole file; std::nullopt when the file cannot be opened.
std::optional<std::string> read_file(const std::filesystem::path& path);

/// Write via temp file + rename in the target directory, so readers never
/// observe a partial file.
void atomic_write_file(const std::filesystem::path& path, std::string_view content);

/// ISO-8601 UTC timestamp of now, e.g. "2025-06-01T12:00:00Z".
std::string utc_timestamp();

}  // namespace otk
