#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cluedesk::text {

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char delim);
std::string join(const std::vector<std::string>& parts, std::string_view delim);
bool starts_with(std::string_view s, std::string_view prefix);
bool icontains(std::string_view haystack, std::string_view needle);

// Lowercased alphanumeric runs; '_', '.', '-' are kept inside a token so that
// file names like "fortnite_cheats.exe" survive as one token.
std::vector<std::string> word_tokens(std::string_view s);

std::size_t whitespace_token_count(std::string_view s);

std::uint64_t fnv1a(std::string_view s);

// Splits into sentences at '.', '!' or '?' followed by whitespace or end.
std::vector<std::string> sentences(std::string_view s);

} // namespace cluedesk::text
