#include "cluedesk/common/error.hpp"
#include "cluedesk/eval/annotate.hpp"
#include "cluedesk/eval/matrix.hpp"
#include "cluedesk/eval/relabel.hpp"
#include "cluedesk/eval/report.hpp"
#include "cluedesk/eval/scenario.hpp"
#include "cluedesk/eval/stats.hpp"
#include "cluedesk/model/codec.hpp"
#include "cluedesk/model/validate.hpp"

#include <doctest.h>

#include <random>

using namespace cluedesk;
using namespace cluedesk::eval;
namespace fs = std::filesystem;

namespace {

const Environment& env() {
    static const auto e = Environment::load(CLUEDESK_DATA_DIR);
    return e;
}

ScenarioSpec toy_scenario() {
    ScenarioSpec s;
    s.id = "toy";
    s.title = "Toy";
    s.expected_diagnosis_tokens = {"prime95"};
    s.minimal_solution_tokens = {"end task|close"};
    return s;
}

Turn reply_turn(std::size_t index, PayloadKind kind, std::string text,
                std::optional<std::string> summary = std::nullopt) {
    Turn t;
    t.index = index;
    t.payload.kind = kind;
    t.payload.text = std::move(text);
    t.payload.diagnosis_summary = std::move(summary);
    return t;
}

ConversationState declared(Configuration c, bool cc_ran, bool profile_read) {
    ConversationState s;
    s.config.configuration = c;
    Turn t;
    if (cc_ran) {
        t.nodes_visited.push_back(NodeName::ExecuteTools);
    }
    t.profile_read = profile_read;
    s.turns.push_back(t);
    return s;
}

} // namespace

TEST_CASE("contains_all: case-insensitive with alternatives") {
    CHECK(contains_all("Open Task Manager and END TASK on Prime95", {"prime95", "end task"}));
    CHECK(contains_all("Use a VPN", {"vpn|hotspot"}));
    CHECK_FALSE(contains_all("Use a proxy", {"vpn|hotspot"}));
    CHECK(contains_all("anything", {}));
}

TEST_CASE("annotate: success needs both the diagnosis and the fix") {
    auto sc = toy_scenario();
    ConversationState s;
    s.turns.push_back(reply_turn(1, PayloadKind::FollowUpQuestion, "When did it start?"));
    s.turns.push_back(reply_turn(2, PayloadKind::SolutionStep, "Open Task Manager.", "Prime95 hogs the CPU."));
    StepEvent ev;
    ev.payload.kind = PayloadKind::SolutionStep;
    ev.payload.text = "Click End task on Prime95.";
    s.turns[1].steps.push_back(ev);
    auto o = annotate(s, sc);
    CHECK(o.effectiveness);
    CHECK(o.efficiency == 2);
    CHECK(o.first_correct_turn == 2u);
    CHECK(o.overwhelmingness == 1);
}

TEST_CASE("annotate: failure is -1 and distinct summaries are counted") {
    auto sc = toy_scenario();
    ConversationState s;
    s.turns.push_back(reply_turn(1, PayloadKind::SolutionStep, "Restart.", "Maybe updates."));
    s.turns.push_back(reply_turn(2, PayloadKind::SolutionStep, "Scan.", "Maybe malware."));
    s.turns.push_back(reply_turn(3, PayloadKind::SolutionStep, "Scan again.", "maybe MALWARE."));
    auto o = annotate(s, sc);
    CHECK_FALSE(o.effectiveness);
    CHECK(o.efficiency == -1);
    CHECK_FALSE(o.first_correct_turn);
    CHECK(o.overwhelmingness == 2);
}

TEST_CASE("annotate: the later of the two firsts is the efficiency") {
    auto sc = toy_scenario();
    ConversationState s;
    s.turns.push_back(reply_turn(1, PayloadKind::SolutionStep, "It is prime95.", "Prime95."));
    s.turns.push_back(reply_turn(2, PayloadKind::FollowUpQuestion, "Anything else?"));
    s.turns.push_back(reply_turn(3, PayloadKind::SolutionStep, "Close it.", "Prime95."));
    auto o = annotate(s, sc);
    CHECK(o.efficiency == 3);
}

TEST_CASE("relabel: the four rule cases and their composition") {
    CHECK(relabel(declared(Configuration::cc(), false, false)) == Configuration::none());
    CHECK(relabel(declared(Configuration::both(), false, true)) == Configuration::adap());
    CHECK(relabel(declared(Configuration::adap(), false, false)) == Configuration::none());
    CHECK(relabel(declared(Configuration::both(), true, false)) == Configuration::cc());
    CHECK(relabel(declared(Configuration::both(), false, false)) == Configuration::none());
    CHECK(relabel(declared(Configuration::both(), true, true)) == Configuration::both());
    CHECK(relabel(declared(Configuration::baseline_vca(), false, false)) == Configuration::baseline_vca());
}

TEST_CASE("relabel: idempotent and never adds a capability") {
    for (auto c : kAllConfigurations) {
        for (bool cc : {false, true}) {
            for (bool pr : {false, true}) {
                const auto once = relabel_configuration(c, cc, pr);
                CHECK(relabel_configuration(once, cc, pr) == once);
                CHECK((!once.cc_enabled || c.cc_enabled));
                CHECK((!once.adaptation_enabled || c.adaptation_enabled));
                CHECK(once.baseline == c.baseline);
                auto log = declared(c, cc, pr);
                CHECK(relabel(apply_relabel(log)) == relabel(log));
            }
        }
    }
}

TEST_CASE("z-score examples and zero variance") {
    std::vector<double> two{2, 4};
    CHECK(zscore(two) == std::vector<double>{-1, 1});
    std::vector<double> flat{3, 3, 3};
    CHECK(zscore(flat) == std::vector<double>{0, 0, 0});
    std::vector<double> one{5};
    CHECK(zscore(one) == std::vector<double>{0});
    std::vector<double> empty;
    CHECK_THROWS_AS(zscore(empty), ContractError);
    CHECK(population_sd(two) == doctest::Approx(1.0));
}

TEST_CASE("z-score on random Likert matrices: mean 0, population SD 1") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> likert(1, 5);
    std::uniform_int_distribution<int> n(2, 30);
    for (int trial = 0; trial < 200; ++trial) {
        Responses r;
        for (int p = 0; p < 10; ++p) {
            auto& v = r["p" + std::to_string(p)];
            const int k = n(rng);
            for (int i = 0; i < k; ++i) {
                v.push_back(likert(rng));
            }
        }
        for (const auto& [who, z] : zscore_normalize(r)) {
            const auto& raw = r.at(who);
            const bool constant = std::all_of(raw.begin(), raw.end(), [&](double x) { return x == raw[0]; });
            CHECK(mean(z) == doctest::Approx(0.0).epsilon(1e-9));
            CHECK(population_sd(z) == doctest::Approx(constant ? 0.0 : 1.0));
        }
    }
    CHECK_THROWS_AS(zscore_normalize({{"p", {6.0}}}), ContractError);
    CHECK_THROWS_AS(zscore_normalize({{"p", {}}}), ContractError);
}

TEST_CASE("Likert CSV parsing") {
    auto r = parse_likert_csv("participant,value,item\np1,2,a\np1,4,b\np2,3,a\n");
    CHECK(r.at("p1") == std::vector<double>{2, 4});
    CHECK(r.at("p2") == std::vector<double>{3});
}

TEST_CASE("scenario file loads and validates") {
    CHECK(env().scenarios.size() == 5);
    CHECK(find_scenario(env().scenarios, "Safe PC").id == "safe_pc");
    CHECK_THROWS_AS(find_scenario(env().scenarios, "nope"), ConfigError);
}

TEST_CASE("scripted user presses next, then reports resolution") {
    const auto& sc = find_scenario(env().scenarios, "pc_performance");
    ScriptedUser u(sc);
    CHECK(std::holds_alternative<SendMessage>(u.first()));
    AssistantPayload step;
    step.kind = PayloadKind::SolutionStep;
    step.text = "Open Task Manager.";
    step.diagnosis_summary = "Prime95 is running.";
    step.step = StepPosition{1, 2};
    auto a = u.next(step);
    REQUIRE(std::holds_alternative<SendStep>(a));
    CHECK(std::get<SendStep>(a).action == StepActionKind::Next);
    step.text = "Select Prime95 and click End task.";
    step.step = StepPosition{2, 2};
    a = u.next(step);
    REQUIRE(std::holds_alternative<SendStep>(a));
    CHECK(std::get<SendStep>(a).action == StepActionKind::Resolved);
}

TEST_CASE("matrix: 25 valid sessions, deterministic, CC separates outcomes") {
    const std::vector<std::uint64_t> seeds{1};
    auto r = run_matrix(env(), env().scenarios, kAllConfigurations, seeds);
    REQUIRE(r.runs.size() == 25);
    CHECK(r.guard_refusals == 0);
    CHECK(r.outbound_hits == 0);
    for (const auto& run : r.runs) {
        CHECK_MESSAGE(validate_state(run.state).empty(), run.state.session_id);
        CHECK(codec::decode(run.log) == run.state);
        const auto& sc = find_scenario(env().scenarios, run.scenario_id);
        const auto label = run.state.configuration().label();
        const auto o = annotate(run.state, sc);
        if (label == "CC" || label == "Both") {
            CHECK_MESSAGE(o.effectiveness, run.state.session_id);
        }
        if (label == "None" && sc.evidence_dependent) {
            CHECK_MESSAGE(!o.effectiveness, run.state.session_id);
        }
        if (!run.state.configuration().cc_enabled) {
            for (const auto& t : run.state.turns) {
                CHECK_FALSE(t.visited(NodeName::ExecuteTools));
            }
        }
    }
    auto again = run_matrix(env(), env().scenarios, kAllConfigurations, seeds);
    for (std::size_t i = 0; i < r.runs.size(); ++i) {
        CHECK(again.runs[i].log == r.runs[i].log);
    }
    bool safe_pc_security = false;
    for (const auto& run : r.runs) {
        if (run.state.session_id == session_id_for(1, "safe_pc", Configuration::both())) {
            safe_pc_security = run.state.cc_accessed_categories().contains(InfoCategory::SecuritySettings);
        }
    }
    CHECK(safe_pc_security);
}

TEST_CASE("matrix under a down collector relabels CC sessions") {
    const std::vector<std::uint64_t> seeds{2};
    const std::vector<Configuration> cfgs{Configuration::cc(), Configuration::both()};
    MatrixOptions opt;
    opt.cc_unreachable = true;
    auto r = run_matrix(env(), env().scenarios, cfgs, seeds, opt);
    for (const auto& run : r.runs) {
        CHECK(run.state.cc_effectively_disabled);
        const auto eff = relabel(run.state);
        CHECK_FALSE(eff.cc_enabled);
    }
}

TEST_CASE("report: five relabel columns, rates and MRR") {
    const std::vector<std::uint64_t> seeds{1};
    auto r = run_matrix(env(), env().scenarios, kAllConfigurations, seeds);
    std::vector<ConversationState> logs;
    for (const auto& run : r.runs) {
        logs.push_back(run.state);
    }
    auto rep = build_report(logs, env().scenarios);
    CHECK(std::vector<std::string>(kConfigLabels.begin(), kConfigLabels.end()) ==
          std::vector<std::string>{"None", "CC", "Adap", "Both", "Baseline"});
    CHECK(rep.sessions.size() == 25);
    CHECK(rep.effectiveness_with_cc == doctest::Approx(1.0));
    CHECK(rep.effectiveness_without_cc < rep.effectiveness_with_cc);
    std::size_t total = 0;
    for (const auto& [label, counts] : rep.relabel_counts) {
        for (auto n : counts) {
            total += n;
        }
    }
    CHECK(total == 25);
    const auto text = render_text(rep);
    const auto csv = render_csv(rep);
    for (const char* l : kConfigLabels) {
        CHECK(text.find(l) != std::string::npos);
    }
    CHECK(csv.find("table,") == 0);
    ConversationState stranger;
    stranger.config.scenario = "unknown";
    std::vector<ConversationState> bad{stranger};
    CHECK_THROWS_AS(build_report(bad, env().scenarios), ConfigError);
}
