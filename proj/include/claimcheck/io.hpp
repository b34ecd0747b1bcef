#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace claimcheck {

std::string read_file(const std::string& path);

/// Writes to "<path>.tmp.<pid>" and renames over `path`, so readers see either
/// the old or the new content. Throws WriteFailure.
void atomic_write_file(const std::string& path, std::string_view content);

/// ISO-8601 UTC with millisecond precision, e.g. 2024-05-01T12:00:00.123Z.
std::string format_utc(std::chrono::system_clock::time_point t);
inline std::string utc_now() { return format_utc(std::chrono::system_clock::now()); }

}  // namespace claimcheck
