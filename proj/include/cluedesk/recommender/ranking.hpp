#pragma once

#include "cluedesk/llm/gateway.hpp"
#include "cluedesk/model/types.hpp"
#include "cluedesk/recommender/catalog.hpp"

#include <map>
#include <mutex>
#include <set>
#include <span>
#include <string_view>
#include <vector>

namespace cluedesk::recommender {

class Scorer {
public:
    virtual ~Scorer() = default;
    // One score per catalog entry, in catalog order.
    virtual std::vector<double> score(std::string_view context, const SpcCatalog& catalog) = 0;
};

// TF-IDF cosine between the context and each entry's description plus
// keywords. idf = ln((1 + N) / (1 + df)) + 1; common English function words
// are ignored.
class LexicalScorer final : public Scorer {
public:
    std::vector<double> score(std::string_view context, const SpcCatalog& catalog) override;
};

// Cosine similarity of provider embeddings. Entry embeddings are cached per
// spc_id.
class EmbeddingScorer final : public Scorer {
public:
    explicit EmbeddingScorer(llm::Gateway& gateway) : gateway_(gateway) {}
    std::vector<double> score(std::string_view context, const SpcCatalog& catalog) override;

private:
    llm::Gateway& gateway_;
    std::mutex mutex_;
    std::map<std::string, std::vector<double>> cache_;
};

std::vector<std::string> content_terms(std::string_view text);
double cosine(std::span<const double> a, std::span<const double> b);

// Descending score, ties broken by ascending spc_id.
std::vector<ScoredSpc> rank_spcs(std::string_view context, const SpcCatalog& catalog,
                                 Scorer& scorer);

struct MrrCase {
    std::vector<std::string> ranked;
    std::set<std::string> correct;
};

// Throws ContractError for k == 0, no cases, or a case without correct items.
double mrr_at_k(std::span<const MrrCase> cases, std::size_t k);

} // namespace cluedesk::recommender
