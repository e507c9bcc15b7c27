#pragma once

#include "cluedesk/llm/gateway.hpp"
#include "cluedesk/recommender/ranking.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace cluedesk::recommender {

// d_conf >= tau_rec, nothing recommended yet, and we are at gen_solution.
bool should_trigger(const ConversationState& state, double d_conf, double tau_rec,
                    NodeName current);

// Keeps at most `n` leading sentences.
std::string truncate_sentences(std::string_view text, std::size_t n);

std::string fallback_rationale(std::string_view diagnosis_summary);

struct Rationale {
    std::string text;
    std::optional<TokenLedgerEntry> usage;
    bool fallback = false;
};

// One gen_solution call with task "rationale"; falls back to the template on
// provider failure or an empty answer.
Rationale generate_rationale(const SpcEntry& chosen, std::string_view diagnosis_summary,
                             llm::Gateway& gateway);

// Deterministic in `seed`: one of the zero-scored SPCs, or of the lower half
// of the ranking when every SPC scored above zero. Never ranked[0].
std::string pick_incorrect(const std::vector<ScoredSpc>& ranked, std::uint64_t seed);

struct RecommendOptions {
    Presentation presentation = Presentation::MinimizablePopup;
    bool inject_incorrect = false;
    std::uint64_t seed = 0;
};

// Ranks, chooses and justifies. The caller attaches it to the payload and
// accounts for `usage`.
struct Built {
    Recommendation recommendation;
    std::optional<TokenLedgerEntry> usage;
};

Built build_recommendation(std::string_view context, std::string_view diagnosis_summary,
                           std::size_t trigger_turn, const SpcCatalog& catalog, Scorer& scorer,
                           llm::Gateway& gateway, const RecommendOptions& options);

} // namespace cluedesk::recommender
