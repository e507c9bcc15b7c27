#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

namespace cluedesk {

std::string read_text_file(const std::filesystem::path& path);

// Atomic replace: writes to a sibling temp file, then renames over the target.
void write_text_file(const std::filesystem::path& path, std::string_view content);

// 1-based line containing byte offset `byte` of `content`.
std::size_t line_of_offset(std::string_view content, std::size_t byte);

// Parses JSON, reporting syntax errors as ParseError with the offending line.
nlohmann::json parse_json(std::string_view content, const std::string& source_name);
nlohmann::json load_json_file(const std::filesystem::path& path);

} // namespace cluedesk
