#pragma once

#include "cluedesk/model/types.hpp"

#include <span>
#include <vector>

namespace cluedesk::llm {

struct CostModel {
    double input_price_per_million = 2.50;
    double output_price_per_million = 10.50;
    double assumed_input_share = 0.30;  // used when only totals are known
};

// USD. Entries with a known split are priced exactly; total-only entries
// use assumed_input_share.
double conversation_cost(std::span<const TokenLedgerEntry> entries, const CostModel& model = {});
double cost_of_total_tokens(double total_tokens, const CostModel& model = {});

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;  // sample SD (n-1); 0 for a single sample
};

MeanSd mean_sd(std::span<const double> xs);

struct NodeOverheadRow {
    NodeName node;
    std::size_t samples = 0;
    MeanSd tokens;
    MeanSd api_seconds;
};

// One row per node with at least one ledger entry, in NodeName order. Each
// ledger entry is one sample; step-event ledgers are included.
std::vector<NodeOverheadRow> node_overhead_report(std::span<const ConversationState> sessions);

// Every ledger entry in a session, turns then their step events.
std::vector<TokenLedgerEntry> session_ledger(const ConversationState& s);

} // namespace cluedesk::llm
