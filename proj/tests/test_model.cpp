#include "cluedesk/common/error.hpp"
#include "cluedesk/model/codec.hpp"
#include "cluedesk/model/taxonomy.hpp"
#include "cluedesk/model/validate.hpp"

#include <doctest.h>

#include <filesystem>

using namespace cluedesk;

namespace {

Turn solution_turn(std::size_t index) {
    Turn t;
    t.index = index;
    t.at = 1000 * static_cast<Millis>(index);
    t.user_text = "My PC is slow.";
    t.intent = Intent::Troubleshooting;
    t.d_conf = 0.9;
    t.confidence.push_back({0.9, 0.9, 0.9, 0.9, false});
    t.nodes_visited = {NodeName::RouteIntent, NodeName::CalculateDiagnosisConfidence,
                       NodeName::RouteQuery, NodeName::GenSolution};
    t.routing.push_back({NodeName::GenSolution, RoutingReason::HighConf});
    t.plan = SolutionPlan{"Prime95 is using the CPU.", {"Open Task Manager.", "End task."}, 1,
                          PlanStatus::Presenting};
    t.payload.kind = PayloadKind::SolutionStep;
    t.payload.text = "Open Task Manager.";
    t.payload.step = StepPosition{1, 2};
    t.payload.diagnosis_summary = "Prime95 is using the CPU.";
    t.token_usage.push_back({NodeName::GenSolution, "", 100, 40, 1.5, true});
    return t;
}

ConversationState both_session(std::size_t turns) {
    ConversationState s;
    s.session_id = "s-test";
    s.config.configuration = Configuration::both();
    s.cc_consent = true;
    s.initial_profile = UserProfile::uniform(23, 3.0, 1.0);
    for (std::size_t i = 1; i <= turns; ++i) {
        s.turns.push_back(solution_turn(i));
    }
    return s;
}

} // namespace

TEST_CASE("configuration labels cover the five legal values") {
    std::vector<std::string> labels;
    for (const auto& c : kAllConfigurations) {
        labels.push_back(c.label());
        CHECK(c.legal());
        CHECK(Configuration::from_label(c.label()) == c);
    }
    CHECK(labels == std::vector<std::string>{"None", "CC", "Adap", "Both", "Baseline"});
    CHECK(Configuration{true, false, true}.label() == "Invalid");
}

TEST_CASE("enum names round trip") {
    for (NodeName n : kAllNodes) {
        CHECK(node_from_string(to_string(n)) == n);
    }
    for (InfoCategory c : kAllCategories) {
        CHECK(category_from_string(to_string(c)) == c);
    }
    CHECK_FALSE(node_from_string("nope"));
}

TEST_CASE("well-formed Both session has no violations") {
    CHECK(validate_state(both_session(3)).empty());
}

TEST_CASE("None session with a CC access reports the CC invariant once") {
    auto s = both_session(1);
    s.config.configuration = Configuration::none();
    s.turns[0].cc_queries.push_back({InfoCategory::Processes, SliceStatus::Ok, 5, "[processes]\n"});
    auto v = validate_state(s);
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("cc invariant") != std::string::npos);
}

TEST_CASE("validator catches index gaps, bad d_conf and two recommendations") {
    auto s = both_session(2);
    s.turns[1].index = 3;
    s.turns[0].d_conf = 1.5;
    Recommendation r;
    r.ranked = {{"edr", 0.5}};
    r.chosen = "edr";
    r.trigger_turn = 1;
    s.turns[0].payload.recommendation = r;
    s.turns[1].payload.recommendation = r;
    auto v = validate_state(s);
    CHECK(v.size() == 3);
}

TEST_CASE("validator flags profile values outside [1,5]") {
    auto s = both_session(1);
    s.turns[0].profile_after = UserProfile::uniform(23, 5.5, 2.0);
    // One violation per offending dimension.
    CHECK(validate_state(s).size() == 23);
}

TEST_CASE("encode/decode round trip is exact") {
    auto s = both_session(3);
    s.turns[1].failed = true;
    s.turns[2].profile_after = UserProfile::uniform(23, 2.5, 2.0);
    s.turns[2].cc_queries.push_back({InfoCategory::Network, SliceStatus::Stale, 77, "[network]\n"});
    StepEvent ev;
    ev.action = StepActionKind::Clarify;
    ev.text = "what?";
    ev.payload.kind = PayloadKind::SolutionStep;
    ev.payload.text = "Click the icon.";
    ev.payload.step = StepPosition{1, 2};
    ev.status_after = PlanStatus::Clarifying;
    ev.token_usage.push_back({NodeName::GenSolution, "clarify", 10, 20, 0.5, true});
    s.turns[0].steps.push_back(ev);
    s.closed = true;
    const std::string log = codec::encode(s);
    CHECK(codec::decode(log) == s);
    CHECK(codec::encode(codec::decode(log)) == log);
}

TEST_CASE("journal step records patch the plan of their turn") {
    auto s = both_session(1);
    std::string log = codec::header_record(s) + "\n" + codec::turn_record(s.turns[0]) + "\n";
    StepEvent ev;
    ev.action = StepActionKind::Next;
    ev.payload.kind = PayloadKind::SolutionStep;
    ev.payload.text = "End task.";
    ev.cursor_after = 2;
    log += codec::step_record(1, ev) + "\n";
    auto back = codec::decode(log);
    REQUIRE(back.turns.size() == 1);
    CHECK(back.turns[0].plan->cursor == 2);
    CHECK(back.turns[0].steps.size() == 1);
    CHECK_FALSE(back.closed);
}

TEST_CASE("torn tail is dropped only when tolerated") {
    auto s = both_session(2);
    std::string log = codec::header_record(s) + "\n" + codec::turn_record(s.turns[0]) + "\n";
    const std::string second = codec::turn_record(s.turns[1]);
    log += second.substr(0, second.size() / 2);
    CHECK_THROWS_AS(codec::decode(log), ParseError);
    auto back = codec::decode(log, true);
    CHECK(back.turns.size() == 1);
}

TEST_CASE("decode names the offending line") {
    auto s = both_session(1);
    std::string log = codec::header_record(s) + "\n{\"record\":\"bogus\"}\n";
    try {
        codec::decode(log);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("shipped taxonomy has 23 subdomains in 5 domains") {
    auto t = SubdomainTaxonomy::load(std::filesystem::path(CLUEDESK_DATA_DIR) / "taxonomy.json");
    CHECK(t.size() == SubdomainTaxonomy::kExpectedSubdomains);
    CHECK(t.domains().size() == SubdomainTaxonomy::kExpectedDomains);
    CHECK(t.index_of("firewall_configuration").has_value());
    CHECK_FALSE(t.index_of("knitting").has_value());
}

TEST_CASE("taxonomy rejects overlapping domains") {
    CHECK_THROWS_AS(SubdomainTaxonomy({"a", "b"}, {{"x", {0, 1}}, {"y", {1}}}), ConfigError);
    CHECK_THROWS_AS(SubdomainTaxonomy({"a", "b"}, {{"x", {0}}}), ConfigError);
}
