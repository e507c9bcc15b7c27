#include "cluedesk/recommender/ranking.hpp"

#include "cluedesk/common/error.hpp"
#include "cluedesk/common/text.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace cluedesk::recommender {

namespace {

const std::unordered_set<std::string>& stopwords() {
    static const std::unordered_set<std::string> words{
        "a",    "an",   "and",  "are",   "as",   "at",   "be",   "by",    "can",  "for",
        "from", "has",  "have", "in",    "is",   "it",   "its",  "may",   "of",   "on",
        "or",   "that", "the",  "their", "this", "to",   "was",  "were",  "with", "which",
        "who",  "will", "i",    "my",    "me",   "you",  "your", "we",    "our",  "so",
        "if",   "into", "over", "been",  "being", "because", "while", "not", "no", "any",
    };
    return words;
}

using TermCounts = std::unordered_map<std::string, double>;

TermCounts counts(std::string_view text) {
    TermCounts tc;
    for (auto& t : content_terms(text)) {
        tc[t] += 1.0;
    }
    return tc;
}

std::string entry_text(const SpcEntry& e) {
    return e.name + " " + e.description + " " + text::join(e.keywords, " ");
}

} // namespace

std::vector<std::string> content_terms(std::string_view s) {
    std::vector<std::string> out;
    for (auto& t : text::word_tokens(s)) {
        if (t.size() > 1 && !stopwords().contains(t)) {
            out.push_back(std::move(t));
        }
    }
    return out;
}

double cosine(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = std::min(a.size(), b.size());
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        dot += a[i] * b[i];
    }
    for (double x : a) {
        na += x * x;
    }
    for (double x : b) {
        nb += x * x;
    }
    if (na == 0.0 || nb == 0.0) {
        return 0.0;
    }
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<double> LexicalScorer::score(std::string_view context, const SpcCatalog& catalog) {
    std::vector<TermCounts> docs;
    std::unordered_map<std::string, double> df;
    for (const auto& e : catalog.entries()) {
        docs.push_back(counts(entry_text(e)));
        for (const auto& [term, n] : docs.back()) {
            df[term] += 1.0;
        }
    }
    const double N = static_cast<double>(docs.size());
    auto idf = [&](const std::string& term) {
        auto it = df.find(term);
        const double d = it == df.end() ? 0.0 : it->second;
        return std::log((1.0 + N) / (1.0 + d)) + 1.0;
    };

    const TermCounts query = counts(context);
    double qnorm = 0.0;
    for (const auto& [term, n] : query) {
        if (df.contains(term)) {
            const double w = n * idf(term);
            qnorm += w * w;
        }
    }
    std::vector<double> scores;
    for (const auto& doc : docs) {
        double dot = 0.0;
        double dnorm = 0.0;
        for (const auto& [term, n] : doc) {
            const double w = n * idf(term);
            dnorm += w * w;
            if (auto it = query.find(term); it != query.end()) {
                dot += w * it->second * idf(term);
            }
        }
        scores.push_back(qnorm > 0.0 && dnorm > 0.0 ? dot / (std::sqrt(qnorm) * std::sqrt(dnorm))
                                                    : 0.0);
    }
    return scores;
}

std::vector<double> EmbeddingScorer::score(std::string_view context, const SpcCatalog& catalog) {
    const auto q = gateway_.embed(context);
    std::vector<double> scores;
    for (const auto& e : catalog.entries()) {
        std::vector<double> v;
        {
            std::lock_guard lock(mutex_);
            auto it = cache_.find(e.spc_id);
            if (it != cache_.end()) {
                v = it->second;
            }
        }
        if (v.empty()) {
            v = gateway_.embed(entry_text(e));
            std::lock_guard lock(mutex_);
            cache_[e.spc_id] = v;
        }
        scores.push_back(cosine(q, v));
    }
    return scores;
}

std::vector<ScoredSpc> rank_spcs(std::string_view context, const SpcCatalog& catalog,
                                 Scorer& scorer) {
    const auto scores = scorer.score(context, catalog);
    std::vector<ScoredSpc> out;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        out.push_back({catalog.entries()[i].spc_id, scores.at(i)});
    }
    std::sort(out.begin(), out.end(), [](const ScoredSpc& a, const ScoredSpc& b) {
        return a.score != b.score ? a.score > b.score : a.spc_id < b.spc_id;
    });
    return out;
}

double mrr_at_k(std::span<const MrrCase> cases, std::size_t k) {
    if (k == 0) {
        throw ContractError("MRR needs k >= 1");
    }
    if (cases.empty()) {
        throw ContractError("MRR over an empty case list");
    }
    double sum = 0.0;
    for (const auto& c : cases) {
        if (c.correct.empty()) {
            throw ContractError("MRR case without a correct item");
        }
        for (std::size_t r = 0; r < c.ranked.size() && r < k; ++r) {
            if (c.correct.contains(c.ranked[r])) {
                sum += 1.0 / static_cast<double>(r + 1);
                break;
            }
        }
    }
    return sum / static_cast<double>(cases.size());
}

} // namespace cluedesk::recommender
