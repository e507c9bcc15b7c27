#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace cluedesk {

// Named subdomains grouped into disjoint domains. The shipped layout has 23
// subdomains in 5 domains; the engine itself does not depend on those counts
// except where the profile schema requires them.
class SubdomainTaxonomy {
public:
    struct Domain {
        std::string name;
        std::vector<std::size_t> subdomains;  // indices into subdomain_names()
    };

    static constexpr std::size_t kExpectedSubdomains = 23;
    static constexpr std::size_t kExpectedDomains = 5;

    // Throws ConfigError when domains overlap, leave a subdomain uncovered or
    // are empty.
    SubdomainTaxonomy(std::vector<std::string> subdomains, std::vector<Domain> domains);

    static SubdomainTaxonomy from_json(const nlohmann::json& j);
    static SubdomainTaxonomy load(const std::filesystem::path& path);

    std::size_t size() const { return subdomains_.size(); }
    const std::vector<std::string>& subdomain_names() const { return subdomains_; }
    const std::vector<Domain>& domains() const { return domains_; }

    std::optional<std::size_t> index_of(std::string_view subdomain) const;
    std::optional<std::size_t> domain_index_of(std::string_view domain) const;
    std::size_t domain_of(std::size_t subdomain) const;

private:
    std::vector<std::string> subdomains_;
    std::vector<Domain> domains_;
    std::vector<std::size_t> owner_;
};

} // namespace cluedesk
