#pragma once

#include "cluedesk/llm/gateway.hpp"
#include "cluedesk/model/taxonomy.hpp"
#include "cluedesk/model/types.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cluedesk::profiler {

inline constexpr double kInitialValue = 3.0;

struct Observation {
    std::size_t subdomain = 0;
    double score = 3.0;   // [1,5]
    double weight = 1.0;  // (0,1]
    bool operator==(const Observation&) const = default;
};

enum class GroundTruthSource { Questionnaire, InjectedAll1, InjectedAll5 };

std::string_view to_string(GroundTruthSource s);

struct GroundTruthProfile {
    std::string participant;
    GroundTruthSource source = GroundTruthSource::Questionnaire;
    std::vector<double> values;
};

UserProfile initial_profile(std::size_t dims);
GroundTruthProfile injected_ground_truth(std::size_t dims, GroundTruthSource source);

// Running weighted mean per observation, applied in list order. Throws
// ContractError for an observation outside the profile or its ranges.
UserProfile update_profile(UserProfile profile, std::span<const Observation> obs);

// Model output -> observations. Accepts a JSON array or {"observations": [...]}
// of {"subdomain": name, "score": s, "weight"?: w}. Entries naming unknown
// subdomains or carrying out-of-range values are dropped; weight defaults to 1.
std::vector<Observation> parse_observations(std::string_view model_text,
                                            const SubdomainTaxonomy& taxonomy);

struct Extraction {
    std::vector<Observation> observations;
    std::optional<TokenLedgerEntry> usage;
    std::string warning;  // set when the provider failed
};

// Billed to `node` with task "profile".
Extraction extract_observations(std::string_view prompt, llm::Gateway& gateway,
                                const SubdomainTaxonomy& taxonomy, NodeName node);

// Mean absolute error over `scope` (subdomain indices). Throws ContractError
// on an empty scope or mismatched dimensions.
double profile_mae(const UserProfile& inferred, const GroundTruthProfile& gt,
                   std::span<const std::size_t> scope);
double profile_mae(const UserProfile& inferred, const GroundTruthProfile& gt);
std::vector<std::size_t> domain_scope(const SubdomainTaxonomy& taxonomy, std::size_t domain);

// One value per turn, on the profile as it stood after that turn.
std::vector<double> mae_trajectory(const ConversationState& session, const GroundTruthProfile& gt);

// Weighted mean of each domain's subdomain values, in taxonomy domain order.
std::vector<double> domain_summary(const UserProfile& profile, const SubdomainTaxonomy& taxonomy);

// "basic" below 2.5, "advanced" above 3.5, "standard" otherwise.
std::string band_of(double proficiency);

// Questionnaire export: {"participant", "source", "responses": {name: value}}
// with every subdomain answered. Throws ConfigError.
GroundTruthProfile ground_truth_from_json(const nlohmann::json& j,
                                          const SubdomainTaxonomy& taxonomy);
GroundTruthProfile load_ground_truth(const std::filesystem::path& path,
                                     const SubdomainTaxonomy& taxonomy);

} // namespace cluedesk::profiler
