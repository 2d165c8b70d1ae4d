#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ahpeval {

// FNV-1a, 64-bit. Stable across platforms and runs; used for cache keys
// and content digests, not for security.
std::uint64_t fnv1a64(std::string_view data);

// 16 lowercase hex characters of fnv1a64(data).
std::string hex_digest(std::string_view data);

// Length-prefixed field concatenation so that distinct tuples always
// produce distinct digest inputs regardless of field contents.
std::string join_fields(const std::vector<std::string_view>& fields);

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);

// Case-folded, whitespace-trimmed canonical form used for distinctness
// checks on criteria labels and reasons.
std::string case_fold(std::string_view s);

std::vector<std::string> split_lines(std::string_view text);

// Words separated by whitespace.
std::size_t word_count(std::string_view s);

// "2026-08-10T12:34:56Z"
std::string iso8601_utc_now();

// Deterministic uniform double in [0,1) derived from a 64-bit hash.
double hash_unit_interval(std::uint64_t h);

}  // namespace ahpeval
