#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hiercast {

// Shortest decimal string that parses back to exactly the same double.
// All numeric output goes through this so identical runs write identical bytes.
std::string fmt_double(double v);

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, char sep);
std::string lower(std::string_view s);

// Strict parsers; nullopt on any trailing garbage.
std::optional<long long> parse_int(std::string_view s);
std::optional<double> parse_real(std::string_view s);

// FNV-1a over bytes, used for config fingerprints and seed derivation.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ull);
std::string hex64(std::uint64_t v);

// Proleptic Gregorian helpers for calendar validation and generation.
// days_from_civil(1970,1,1) == 0.
long long days_from_civil(int y, int m, int d);
void civil_from_days(long long z, int& y, int& m, int& d);
std::string format_date(int y, int m, int d);
// Parses "YYYY-MM-DD" or "M/D/YYYY"; nullopt otherwise.
std::optional<long long> parse_date(std::string_view s);
void split_date(long long serial, int& y, int& m, int& d);

}  // namespace hiercast
