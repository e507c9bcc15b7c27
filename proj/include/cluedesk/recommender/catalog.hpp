#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace cluedesk::recommender {

struct SpcEntry {
    std::string spc_id;
    std::string name;
    std::string description;
    std::vector<std::string> keywords;
};

class SpcCatalog {
public:
    // Throws ConfigError on an empty catalog, duplicate ids or empty descriptions.
    explicit SpcCatalog(std::vector<SpcEntry> entries);

    // {"spcs": [{"spc_id", "name", "description", "keywords": [...]}, ...]}
    static SpcCatalog from_json(const nlohmann::json& j);
    static SpcCatalog load(const std::filesystem::path& path);

    const std::vector<SpcEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    const SpcEntry* find(std::string_view spc_id) const;

private:
    std::vector<SpcEntry> entries_;
};

} // namespace cluedesk::recommender
