#include "cluedesk/profiler/profiler.hpp"

#include "cluedesk/common/error.hpp"
#include "cluedesk/common/files.hpp"
#include "cluedesk/common/text.hpp"
#include "cluedesk/model/validate.hpp"

#include <cmath>

namespace cluedesk::profiler {

using nlohmann::json;

std::string_view to_string(GroundTruthSource s) {
    switch (s) {
    case GroundTruthSource::Questionnaire:
        return "questionnaire";
    case GroundTruthSource::InjectedAll1:
        return "injected_all1";
    case GroundTruthSource::InjectedAll5:
        return "injected_all5";
    }
    return "questionnaire";
}

UserProfile initial_profile(std::size_t dims) {
    return UserProfile::uniform(dims, kInitialValue, kPriorWeight);
}

GroundTruthProfile injected_ground_truth(std::size_t dims, GroundTruthSource source) {
    const double v = source == GroundTruthSource::InjectedAll1 ? 1.0
                     : source == GroundTruthSource::InjectedAll5 ? 5.0
                                                                  : kInitialValue;
    return {std::string(to_string(source)), source, std::vector<double>(dims, v)};
}

UserProfile update_profile(UserProfile p, std::span<const Observation> obs) {
    for (const auto& o : obs) {
        if (o.subdomain >= p.values.size()) {
            throw ContractError("observation subdomain " + std::to_string(o.subdomain) +
                                " outside profile");
        }
        if (!(o.score >= kProfileMin && o.score <= kProfileMax)) {
            throw ContractError("observation score outside [1,5]");
        }
        if (!(o.weight > 0.0 && o.weight <= 1.0)) {
            throw ContractError("observation weight outside (0,1]");
        }
        double& v = p.values[o.subdomain];
        double& w = p.weights[o.subdomain];
        v = (w * v + o.weight * o.score) / (w + o.weight);
        w += o.weight;
    }
    return p;
}

std::vector<Observation> parse_observations(std::string_view model_text,
                                            const SubdomainTaxonomy& taxonomy) {
    std::vector<Observation> out;
    json j = json::parse(model_text, nullptr, false);
    if (j.is_discarded()) {
        return out;
    }
    if (j.is_object() && j.contains("observations")) {
        j = j["observations"];
    }
    if (!j.is_array()) {
        return out;
    }
    for (const auto& item : j) {
        if (!item.is_object() || !item.contains("subdomain") || !item.contains("score") ||
            !item["subdomain"].is_string() || !item["score"].is_number()) {
            continue;
        }
        auto idx = taxonomy.index_of(item["subdomain"].get<std::string>());
        const double s = item["score"].get<double>();
        double w = 1.0;
        if (item.contains("weight")) {
            if (!item["weight"].is_number()) {
                continue;
            }
            w = item["weight"].get<double>();
        }
        if (!idx || !(s >= kProfileMin && s <= kProfileMax) || !(w > 0.0 && w <= 1.0)) {
            continue;
        }
        out.push_back({*idx, s, w});
    }
    return out;
}

Extraction extract_observations(std::string_view prompt, llm::Gateway& gateway,
                                const SubdomainTaxonomy& taxonomy, NodeName node) {
    Extraction ex;
    llm::ModelRequest req;
    req.node = node;
    req.task = "profile";
    req.system_prompt =
        "Estimate the user's proficiency from their message. Reply with a JSON array of "
        "{\"subdomain\", \"score\" (1-5), \"weight\" (0-1)} for subdomains the message "
        "reveals, or [] if none. Subdomains: " +
        text::join(taxonomy.subdomain_names(), ", ");
    req.messages.push_back({llm::Role::User, std::string(prompt)});
    req.max_output = 256;
    try {
        auto c = gateway.complete(req);
        ex.usage = c.usage;
        ex.observations = parse_observations(c.text, taxonomy);
    } catch (const PrivacyViolation&) {
        throw;
    } catch (const std::exception& e) {
        ex.warning = std::string("profile extraction failed: ") + e.what();
    }
    return ex;
}

double profile_mae(const UserProfile& inferred, const GroundTruthProfile& gt,
                   std::span<const std::size_t> scope) {
    if (scope.empty()) {
        throw ContractError("MAE scope is empty");
    }
    if (inferred.values.size() != gt.values.size()) {
        throw ContractError("profile and ground truth differ in dimension");
    }
    double sum = 0.0;
    for (std::size_t i : scope) {
        if (i >= gt.values.size()) {
            throw ContractError("MAE scope index outside profile");
        }
        sum += std::abs(inferred.values[i] - gt.values[i]);
    }
    return sum / static_cast<double>(scope.size());
}

double profile_mae(const UserProfile& inferred, const GroundTruthProfile& gt) {
    std::vector<std::size_t> all(gt.values.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
        all[i] = i;
    }
    return profile_mae(inferred, gt, all);
}

std::vector<std::size_t> domain_scope(const SubdomainTaxonomy& taxonomy, std::size_t domain) {
    if (domain >= taxonomy.domains().size()) {
        throw ContractError("unknown domain index");
    }
    return taxonomy.domains()[domain].subdomains;
}

std::vector<double> mae_trajectory(const ConversationState& session,
                                   const GroundTruthProfile& gt) {
    std::vector<double> out;
    const UserProfile* current = &session.initial_profile;
    for (const auto& t : session.turns) {
        if (t.profile_after) {
            current = &*t.profile_after;
        }
        out.push_back(profile_mae(*current, gt));
    }
    return out;
}

std::vector<double> domain_summary(const UserProfile& p, const SubdomainTaxonomy& taxonomy) {
    std::vector<double> out;
    for (const auto& d : taxonomy.domains()) {
        double num = 0.0;
        double den = 0.0;
        for (std::size_t s : d.subdomains) {
            num += p.weights[s] * p.values[s];
            den += p.weights[s];
        }
        out.push_back(den > 0.0 ? num / den : kInitialValue);
    }
    return out;
}

std::string band_of(double v) {
    if (v < 2.5) {
        return "basic";
    }
    if (v > 3.5) {
        return "advanced";
    }
    return "standard";
}

GroundTruthProfile ground_truth_from_json(const json& j, const SubdomainTaxonomy& taxonomy) {
    GroundTruthProfile gt;
    try {
        gt.participant = j.at("participant").get<std::string>();
        const auto source = j.value("source", std::string("questionnaire"));
        if (source == "questionnaire") {
            gt.source = GroundTruthSource::Questionnaire;
        } else if (source == "injected_all1") {
            gt.source = GroundTruthSource::InjectedAll1;
        } else if (source == "injected_all5") {
            gt.source = GroundTruthSource::InjectedAll5;
        } else {
            throw ConfigError("unknown ground-truth source '" + source + "'");
        }
        gt.values.assign(taxonomy.size(), 0.0);
        std::vector<bool> seen(taxonomy.size(), false);
        for (const auto& [name, value] : j.at("responses").items()) {
            auto idx = taxonomy.index_of(name);
            if (!idx) {
                throw ConfigError("ground truth names unknown subdomain '" + name + "'");
            }
            const double v = value.get<double>();
            if (!(v >= kProfileMin && v <= kProfileMax)) {
                throw ConfigError("ground truth value for '" + name + "' outside [1,5]");
            }
            gt.values[*idx] = v;
            seen[*idx] = true;
        }
        for (std::size_t i = 0; i < seen.size(); ++i) {
            if (!seen[i]) {
                throw ConfigError("ground truth missing subdomain '" +
                                  taxonomy.subdomain_names()[i] + "'");
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed ground-truth file: ") + e.what());
    }
    const auto all_equal = [&](double v) {
        for (double x : gt.values) {
            if (x != v) {
                return false;
            }
        }
        return true;
    };
    if ((gt.source == GroundTruthSource::InjectedAll1 && !all_equal(1.0)) ||
        (gt.source == GroundTruthSource::InjectedAll5 && !all_equal(5.0))) {
        throw ConfigError("injected ground truth must be constant");
    }
    return gt;
}

GroundTruthProfile load_ground_truth(const std::filesystem::path& path,
                                     const SubdomainTaxonomy& taxonomy) {
    return ground_truth_from_json(load_json_file(path), taxonomy);
}

} // namespace cluedesk::profiler
