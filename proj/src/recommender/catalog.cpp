#include "cluedesk/recommender/catalog.hpp"

#include "cluedesk/common/error.hpp"
#include "cluedesk/common/files.hpp"

#include <set>

namespace cluedesk::recommender {

SpcCatalog::SpcCatalog(std::vector<SpcEntry> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) {
        throw ConfigError("SPC catalog is empty");
    }
    std::set<std::string> ids;
    for (const auto& e : entries_) {
        if (e.spc_id.empty() || !ids.insert(e.spc_id).second) {
            throw ConfigError("SPC catalog has a missing or duplicate id '" + e.spc_id + "'");
        }
        if (e.description.empty()) {
            throw ConfigError("SPC '" + e.spc_id + "' has an empty description");
        }
    }
}

SpcCatalog SpcCatalog::from_json(const nlohmann::json& j) {
    std::vector<SpcEntry> entries;
    try {
        for (const auto& s : j.at("spcs")) {
            entries.push_back({s.at("spc_id").get<std::string>(), s.at("name").get<std::string>(),
                               s.at("description").get<std::string>(),
                               s.value("keywords", std::vector<std::string>{})});
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed SPC catalog: ") + e.what());
    }
    return SpcCatalog(std::move(entries));
}

SpcCatalog SpcCatalog::load(const std::filesystem::path& path) {
    return from_json(load_json_file(path));
}

const SpcEntry* SpcCatalog::find(std::string_view spc_id) const {
    for (const auto& e : entries_) {
        if (e.spc_id == spc_id) {
            return &e;
        }
    }
    return nullptr;
}

} // namespace cluedesk::recommender
