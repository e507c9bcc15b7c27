#include "cluedesk/common/error.hpp"
#include "cluedesk/common/files.hpp"
#include "cluedesk/llm/gateway.hpp"
#include "cluedesk/llm/scripted.hpp"
#include "cluedesk/pii/anonymizer.hpp"
#include "cluedesk/recommender/catalog.hpp"
#include "cluedesk/recommender/ranking.hpp"
#include "cluedesk/recommender/recommender.hpp"

#include <doctest.h>

using namespace cluedesk;
using namespace cluedesk::recommender;
using nlohmann::json;

namespace {

const SpcCatalog& catalog() {
    static const auto c = SpcCatalog::load(std::filesystem::path(CLUEDESK_DATA_DIR) / "spc_catalog.json");
    return c;
}

llm::ScriptedProvider rationale_script(const std::string& response) {
    json j;
    j["fixtures"]["gen_solution:rationale"] = json::array({{{"response", response}}});
    return llm::ScriptedProvider::from_json(j);
}

} // namespace

TEST_CASE("catalog validation") {
    CHECK(catalog().size() == 12);
    CHECK(catalog().find("vpn") != nullptr);
    CHECK(catalog().find("toaster") == nullptr);
    CHECK_THROWS_AS(SpcCatalog({}), ConfigError);
    CHECK_THROWS_AS(SpcCatalog({{"a", "A", "x", {}}, {"a", "B", "y", {}}}), ConfigError);
    CHECK_THROWS_AS(SpcCatalog({{"a", "A", "", {}}}), ConfigError);
}

TEST_CASE("MRR@k on hand-computed reciprocal ranks") {
    auto c = [](std::vector<std::string> ranked, std::string correct) {
        return MrrCase{std::move(ranked), {std::move(correct)}};
    };
    // Correct item at ranks 1, 1, 1, 2.
    std::vector<MrrCase> cases{c({"a", "b"}, "a"), c({"a", "b"}, "a"), c({"b", "a"}, "b"),
                               c({"b", "a"}, "a")};
    CHECK(mrr_at_k(cases, 1) == doctest::Approx(0.75));
    CHECK(mrr_at_k(cases, 2) == doctest::Approx((3 + 0.5) / 4));
    std::vector<MrrCase> third{c({"x", "y", "z"}, "z")};
    CHECK(mrr_at_k(third, 2) == 0.0);
    CHECK(mrr_at_k(third, 3) == doctest::Approx(1.0 / 3));
    CHECK_THROWS_AS(mrr_at_k(cases, 0), ContractError);
    std::vector<MrrCase> none;
    CHECK_THROWS_AS(mrr_at_k(none, 1), ContractError);
}

TEST_CASE("cosine and content terms") {
    std::vector<double> a{1, 0};
    std::vector<double> b{0, 1};
    std::vector<double> z{0, 0};
    CHECK(cosine(a, a) == doctest::Approx(1.0));
    CHECK(cosine(a, b) == 0.0);
    CHECK(cosine(a, z) == 0.0);
    auto t = content_terms("The firewall is disabled and the PC");
    CHECK(std::find(t.begin(), t.end(), "firewall") != t.end());
    CHECK(std::find(t.begin(), t.end(), "the") == t.end());
}

TEST_CASE("lexical ranking of each scenario summary puts a relevant SPC first") {
    const auto scenarios = load_json_file(std::filesystem::path(CLUEDESK_DATA_DIR) / "scenarios.json");
    LexicalScorer scorer;
    for (const auto& s : scenarios.at("scenarios")) {
        auto ranked = rank_spcs(s.at("summary").get<std::string>(), catalog(), scorer);
        REQUIRE(ranked.size() == catalog().size());
        const auto rel = s.at("relevant_spcs").get<std::vector<std::string>>();
        CHECK_MESSAGE(std::find(rel.begin(), rel.end(), ranked[0].spc_id) != rel.end(),
                      s.at("id").get<std::string>() << " ranked " << ranked[0].spc_id);
        for (std::size_t i = 1; i < ranked.size(); ++i) {
            CHECK(ranked[i - 1].score >= ranked[i].score);
        }
    }
}

TEST_CASE("ranking ties break by spc id") {
    LexicalScorer scorer;
    auto ranked = rank_spcs("zzzz qqqq", catalog(), scorer);
    for (std::size_t i = 1; i < ranked.size(); ++i) {
        CHECK(ranked[i - 1].spc_id < ranked[i].spc_id);
    }
}

TEST_CASE("embedding scorer uses provider vectors") {
    auto p = rationale_script("x");
    pii::Anonymizer guard;
    llm::Gateway g(p, guard);
    EmbeddingScorer scorer(g);
    const auto& vpn = *catalog().find("vpn");
    auto ranked = rank_spcs(vpn.description, catalog(), scorer);
    CHECK(ranked[0].spc_id == "vpn");
}

TEST_CASE("trigger fires once, at gen_solution, above tau_rec") {
    ConversationState s;
    CHECK(should_trigger(s, 0.7, 0.7, NodeName::GenSolution));
    CHECK_FALSE(should_trigger(s, 0.69, 0.7, NodeName::GenSolution));
    CHECK_FALSE(should_trigger(s, 0.9, 0.7, NodeName::GenQuestion));
    Turn t;
    t.payload.recommendation = Recommendation{};
    s.turns.push_back(t);
    CHECK_FALSE(should_trigger(s, 0.9, 0.7, NodeName::GenSolution));
}

TEST_CASE("incorrect pick avoids the top SPC and prefers zero scores") {
    std::vector<ScoredSpc> ranked{{"a", 0.9}, {"b", 0.5}, {"c", 0.0}, {"d", 0.0}};
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto pick = pick_incorrect(ranked, seed);
        CHECK((pick == "c" || pick == "d"));
        CHECK(pick == pick_incorrect(ranked, seed));
    }
    std::vector<ScoredSpc> all_pos{{"a", 0.9}, {"b", 0.5}, {"c", 0.4}, {"d", 0.1}};
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto pick = pick_incorrect(all_pos, seed);
        CHECK((pick == "c" || pick == "d"));
    }
    std::vector<ScoredSpc> one{{"a", 1.0}};
    CHECK_THROWS_AS(pick_incorrect(one, 0), ContractError);
}

TEST_CASE("rationale truncation and fallback") {
    CHECK(truncate_sentences("One. Two! Three? Four.", 3) == "One. Two! Three?");
    CHECK(truncate_sentences("Only one", 3) == "Only one");
    auto empty = rationale_script("");
    pii::Anonymizer guard;
    llm::Gateway g(empty, guard);
    auto r = generate_rationale(*catalog().find("vpn"), "Open Wi-Fi.", g);
    CHECK(r.fallback);
    CHECK(r.text == fallback_rationale("Open Wi-Fi."));
}

TEST_CASE("built recommendation carries ranking, choice and rationale usage") {
    auto p = rationale_script("A VPN encrypts traffic on open networks.");
    pii::Anonymizer guard;
    llm::Gateway g(p, guard);
    LexicalScorer scorer;
    RecommendOptions opt;
    opt.presentation = Presentation::InChat;
    auto b = build_recommendation("public wifi open network vpn encryption", "Open Wi-Fi.", 2,
                                  catalog(), scorer, g, opt);
    CHECK(b.recommendation.chosen == b.recommendation.ranked[0].spc_id);
    CHECK(b.recommendation.chosen_name == catalog().find(b.recommendation.chosen)->name);
    CHECK(b.recommendation.trigger_turn == 2);
    CHECK(b.recommendation.presentation == Presentation::InChat);
    REQUIRE(b.usage);
    CHECK(b.usage->task == "rationale");
    opt.inject_incorrect = true;
    auto bad = build_recommendation("public wifi open network vpn encryption", "Open Wi-Fi.", 2,
                                    catalog(), scorer, g, opt);
    CHECK(bad.recommendation.injected_incorrect);
    CHECK(bad.recommendation.chosen != bad.recommendation.ranked[0].spc_id);
}
