#include "cluedesk/model/taxonomy.hpp"

#include "cluedesk/common/error.hpp"
#include "cluedesk/common/files.hpp"

#include <limits>

namespace cluedesk {

SubdomainTaxonomy::SubdomainTaxonomy(std::vector<std::string> subdomains,
                                     std::vector<Domain> domains)
    : subdomains_(std::move(subdomains)), domains_(std::move(domains)) {
    constexpr auto kUnowned = std::numeric_limits<std::size_t>::max();
    owner_.assign(subdomains_.size(), kUnowned);
    for (std::size_t d = 0; d < domains_.size(); ++d) {
        if (domains_[d].subdomains.empty()) {
            throw ConfigError("taxonomy domain '" + domains_[d].name + "' is empty");
        }
        for (std::size_t s : domains_[d].subdomains) {
            if (s >= subdomains_.size()) {
                throw ConfigError("taxonomy domain '" + domains_[d].name +
                                  "' references unknown subdomain index");
            }
            if (owner_[s] != kUnowned) {
                throw ConfigError("taxonomy subdomain '" + subdomains_[s] +
                                  "' belongs to two domains");
            }
            owner_[s] = d;
        }
    }
    for (std::size_t s = 0; s < owner_.size(); ++s) {
        if (owner_[s] == kUnowned) {
            throw ConfigError("taxonomy subdomain '" + subdomains_[s] + "' has no domain");
        }
    }
}

SubdomainTaxonomy SubdomainTaxonomy::from_json(const nlohmann::json& j) {
    std::vector<std::string> names;
    std::vector<Domain> domains;
    try {
        for (const auto& d : j.at("domains")) {
            Domain domain{d.at("name").get<std::string>(), {}};
            for (const auto& s : d.at("subdomains")) {
                domain.subdomains.push_back(names.size());
                names.push_back(s.get<std::string>());
            }
            domains.push_back(std::move(domain));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed taxonomy: ") + e.what());
    }
    return SubdomainTaxonomy(std::move(names), std::move(domains));
}

SubdomainTaxonomy SubdomainTaxonomy::load(const std::filesystem::path& path) {
    return from_json(load_json_file(path));
}

std::optional<std::size_t> SubdomainTaxonomy::index_of(std::string_view subdomain) const {
    for (std::size_t i = 0; i < subdomains_.size(); ++i) {
        if (subdomains_[i] == subdomain) {
            return i;
        }
    }
    return std::nullopt;
}

std::optional<std::size_t> SubdomainTaxonomy::domain_index_of(std::string_view domain) const {
    for (std::size_t i = 0; i < domains_.size(); ++i) {
        if (domains_[i].name == domain) {
            return i;
        }
    }
    return std::nullopt;
}

std::size_t SubdomainTaxonomy::domain_of(std::size_t subdomain) const {
    return owner_.at(subdomain);
}

} // namespace cluedesk
