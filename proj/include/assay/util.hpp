#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace assay {

// Pipeline clock, seconds granularity. Tests and deterministic runs pin it.
using Timestamp = std::chrono::sys_seconds;

using ClockFn = std::function<Timestamp()>;

Timestamp now_utc();

// "YYYY-MM-DDTHH:MM:SSZ"
std::string format_rfc3339(Timestamp t);
Timestamp parse_rfc3339(const std::string& text);

// FNV-1a 64-bit over the given bytes, rendered as 16 lowercase hex chars.
// Stable across platforms and processes; used for evidence ids and cache keys.
std::string fnv1a_hex(std::string_view data);

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);
std::string collapse_ws(std::string_view s);
bool contains_ci(std::string_view haystack, std::string_view needle);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Half-up rounding to one decimal (positive inputs).
double round1(double value);

// Exact half-up one-decimal percentage of an integer fraction: 100 * num / den.
double percent1(std::int64_t num, std::int64_t den);

// One-decimal fixed rendering ("77.1", "13.0"); what round1/percent1 produce.
std::string format1(double value);

bool is_valid_absolute_url(const std::string& url);

std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, std::string_view content);

// Lowercase, non-alphanumerics collapsed to single '-'; for file names and
// factor dedup keys.
std::string slugify(std::string_view s);

} // namespace assay
