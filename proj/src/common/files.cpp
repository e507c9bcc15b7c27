#include "cluedesk/common/files.hpp"

#include "cluedesk/common/error.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace cluedesk {

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw ConfigError("cannot write " + tmp.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
    }
    std::filesystem::rename(tmp, path);
}

std::size_t line_of_offset(std::string_view content, std::size_t byte) {
    byte = std::min(byte, content.size());
    return 1 + static_cast<std::size_t>(
                   std::count(content.begin(), content.begin() + static_cast<long>(byte), '\n'));
}

nlohmann::json parse_json(std::string_view content, const std::string& source_name) {
    try {
        return nlohmann::json::parse(content);
    } catch (const nlohmann::json::parse_error& e) {
        // nlohmann reports 1-based byte positions of the offending character.
        const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        throw ParseError(source_name, line_of_offset(content, byte), e.what());
    }
}

nlohmann::json load_json_file(const std::filesystem::path& path) {
    return parse_json(read_text_file(path), path.string());
}

} // namespace cluedesk
