#include "cluedesk/recommender/recommender.hpp"

#include "cluedesk/common/error.hpp"
#include "cluedesk/common/text.hpp"

#include <algorithm>
#include <cctype>
#include <random>

namespace cluedesk::recommender {

bool should_trigger(const ConversationState& state, double d_conf, double tau_rec,
                    NodeName current) {
    return d_conf >= tau_rec && state.recommendation() == nullptr &&
           current == NodeName::GenSolution;
}

std::string truncate_sentences(std::string_view s, std::size_t n) {
    auto parts = text::sentences(s);
    if (parts.size() > n) {
        parts.resize(n);
    }
    return text::join(parts, " ");
}

std::string fallback_rationale(std::string_view diagnosis_summary) {
    std::string summary = text::trim(diagnosis_summary);
    while (!summary.empty() && (summary.back() == '.' || summary.back() == '!')) {
        summary.pop_back();
    }
    if (!summary.empty()) {
        summary[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(summary[0])));
    }
    return "Recommended because it addresses " + summary + ".";
}

Rationale generate_rationale(const SpcEntry& chosen, std::string_view diagnosis_summary,
                             llm::Gateway& gateway) {
    Rationale r;
    llm::ModelRequest req;
    req.node = NodeName::GenSolution;
    req.task = "rationale";
    req.system_prompt =
        "In at most two sentences, explain why this product category would help with the "
        "user's problem. Do not name brands.";
    req.messages.push_back({llm::Role::User, "Problem: " + std::string(diagnosis_summary) +
                                                 "\nProduct category: " + chosen.name});
    req.max_output = 120;
    try {
        auto c = gateway.complete(req);
        r.usage = c.usage;
        r.text = truncate_sentences(c.text, 2);
    } catch (const PrivacyViolation&) {
        throw;
    } catch (const std::exception&) {
        r.text.clear();
    }
    if (text::trim(r.text).empty()) {
        r.text = fallback_rationale(diagnosis_summary);
        r.fallback = true;
    }
    return r;
}

std::string pick_incorrect(const std::vector<ScoredSpc>& ranked, std::uint64_t seed) {
    if (ranked.size() < 2) {
        throw ContractError("incorrect-SPC injection needs at least two SPCs");
    }
    std::vector<std::string> pool;
    for (std::size_t i = 1; i < ranked.size(); ++i) {
        if (ranked[i].score <= 0.0) {
            pool.push_back(ranked[i].spc_id);
        }
    }
    if (pool.empty()) {
        for (std::size_t i = std::max<std::size_t>(1, ranked.size() / 2); i < ranked.size(); ++i) {
            pool.push_back(ranked[i].spc_id);
        }
    }
    std::mt19937_64 rng(seed);
    return pool[static_cast<std::size_t>(rng() % pool.size())];
}

Built build_recommendation(std::string_view context, std::string_view diagnosis_summary,
                           std::size_t trigger_turn, const SpcCatalog& catalog, Scorer& scorer,
                           llm::Gateway& gateway, const RecommendOptions& options) {
    Built b;
    auto& rec = b.recommendation;
    rec.ranked = rank_spcs(context, catalog, scorer);
    rec.presentation = options.presentation;
    rec.trigger_turn = trigger_turn;
    rec.injected_incorrect = options.inject_incorrect;
    rec.chosen = options.inject_incorrect ? pick_incorrect(rec.ranked, options.seed)
                                          : rec.ranked.front().spc_id;
    const SpcEntry* entry = catalog.find(rec.chosen);
    rec.chosen_name = entry->name;
    auto rationale = generate_rationale(*entry, diagnosis_summary, gateway);
    rec.rationale = std::move(rationale.text);
    b.usage = rationale.usage;
    return b;
}

} // namespace cluedesk::recommender
