#include "cluedesk/cc/collector.hpp"
#include "cluedesk/cc/evidence.hpp"
#include "cluedesk/cc/fixture.hpp"
#include "cluedesk/chat/protocol.hpp"
#include "cluedesk/chat/server.hpp"
#include "cluedesk/chat/service.hpp"
#include "cluedesk/chat/session_store.hpp"
#include "cluedesk/common/error.hpp"
#include "cluedesk/llm/gateway.hpp"
#include "cluedesk/llm/scripted.hpp"
#include "cluedesk/model/codec.hpp"
#include "cluedesk/model/taxonomy.hpp"
#include "cluedesk/model/validate.hpp"
#include "cluedesk/net/ws.hpp"
#include "cluedesk/pii/anonymizer.hpp"
#include "cluedesk/recommender/catalog.hpp"
#include "cluedesk/recommender/ranking.hpp"

#include <doctest.h>
#include <httplib.h>

#include <fstream>
#include <unistd.h>

using namespace cluedesk;
using namespace cluedesk::chat;
namespace fs = std::filesystem;

namespace {

constexpr Millis kEpoch = 1'700'000'000'000;

fs::path data(const std::string& rel) { return fs::path(CLUEDESK_DATA_DIR) / rel; }

fs::path scratch(const std::string& tag) {
    auto p = fs::temp_directory_path() / ("cluedesk-" + tag + "-" + std::to_string(::getpid()));
    fs::remove_all(p);
    return p;
}

// The shipped scenario fixtures, with a live in-process collector behind CC.
struct Stack {
    SubdomainTaxonomy taxonomy = SubdomainTaxonomy::load(data("taxonomy.json"));
    recommender::SpcCatalog catalog = recommender::SpcCatalog::load(data("spc_catalog.json"));
    pii::Anonymizer anonymizer{pii::AnonymizerConfig::load(data("pii_patterns.json"))};
    llm::ScriptedProvider provider = llm::ScriptedProvider::load(data("llm_fixtures.json"));
    llm::Gateway gateway{provider, anonymizer};
    recommender::LexicalScorer scorer;
    ManualClock clock{kEpoch};
    cc::ClueCollector collector{std::make_shared<cc::FixtureSource>(
                                    cc::FixtureSource::from_file(data("fixtures/pc_performance.fixture"))),
                                clock, 5.0};
    std::vector<std::string> outbound;
    bool cc_down = false;
    std::unique_ptr<ChatService> service;

    explicit Stack(SessionStore* store = nullptr) {
        collector.refresh_once();
        gateway.set_observer([this](const llm::ModelRequest& r) {
            std::string all = r.system_prompt;
            for (const auto& m : r.messages) {
                all += "\n" + m.content;
            }
            outbound.push_back(all);
        });
        ServiceOptions opt;
        opt.orchestrator = orchestrator::OrchestratorConfig::load(data("orchestrator.json"));
        opt.store = store;
        opt.connect_cc = [this](const ConversationState& s) -> std::unique_ptr<cc::EvidenceSource> {
            if (cc_down) {
                throw TransportError("connection refused");
            }
            return std::make_unique<cc::LocalEvidence>(collector, s.cc_consent, true);
        };
        service = std::make_unique<ChatService>(
            orchestrator::Services{gateway, anonymizer, taxonomy, catalog, scorer, clock}, opt);
    }
};

SessionConfig config_of(Configuration c) {
    SessionConfig cfg;
    cfg.configuration = c;
    return cfg;
}

} // namespace

TEST_CASE("open_session validates the configuration") {
    Stack st;
    auto& svc = *st.service;
    CHECK_THROWS_AS(svc.open_session(config_of(Configuration{true, false, true}), true), ContractError);
    auto adap_less = config_of(Configuration::cc());
    adap_less.injection = Injection::ProfileAll5;
    CHECK_THROWS_AS(svc.open_session(adap_less, true), ContractError);
    auto zero = config_of(Configuration::cc());
    zero.cc_period_seconds = 0;
    CHECK_THROWS_AS(svc.open_session(zero, true), ContractError);
    svc.open_session(config_of(Configuration::none()), false, "dup");
    CHECK_THROWS_AS(svc.open_session(config_of(Configuration::none()), false, "dup"), ContractError);
    CHECK_THROWS_AS(svc.post_user_message("nope", "hi"), NotFoundError);
}

TEST_CASE("profile injection sets the initial profile") {
    Stack st;
    auto cfg = config_of(Configuration::both());
    cfg.injection = Injection::ProfileAll5;
    auto id = st.service->open_session(cfg, true);
    CHECK(st.service->state(id).initial_profile == UserProfile::uniform(st.taxonomy.size(), 5.0, 1.0));
}

TEST_CASE("unreachable collector marks CC effectively disabled") {
    Stack st;
    st.cc_down = true;
    auto id = st.service->open_session(config_of(Configuration::cc()), true);
    auto s0 = st.service->state(id);
    CHECK(s0.cc_effectively_disabled);
    CHECK_FALSE(s0.cc_available());
    st.service->post_user_message(id, "My computer has become extremely slow lately.");
    auto s = st.service->state(id);
    CHECK(s.cc_accessed_categories().empty());
    CHECK(validate_state(s).empty());
}

TEST_CASE("each message yields exactly one question or one solution step") {
    Stack st;
    for (auto c : {Configuration::none(), Configuration::both()}) {
        auto id = st.service->open_session(config_of(c), true);
        auto out = st.service->post_user_message(id, "My computer has become extremely slow lately.");
        REQUIRE(out.size() == 1);
        CHECK((out[0].kind == PayloadKind::FollowUpQuestion) != (out[0].kind == PayloadKind::SolutionStep));
        if (c == Configuration::both()) {
            CHECK(out[0].kind == PayloadKind::SolutionStep);
            CHECK(out[0].step->k == 1);
        }
    }
}

TEST_CASE("PII in user text is redacted in the log and restored for display") {
    Stack st;
    auto id = st.service->open_session(config_of(Configuration::none()), false);
    st.service->post_user_message(id, "Reach me at pat.doe@example.net please, my PC is slow");
    auto s = st.service->state(id);
    CHECK(s.turns[0].user_text.find("pat.doe@example.net") == std::string::npos);
    CHECK(s.turns[0].user_text.find("<EMAIL_1>") != std::string::npos);
    for (const auto& r : st.outbound) {
        CHECK(r.find("pat.doe@example.net") == std::string::npos);
    }
}

TEST_CASE("configuration fidelity: no adaptation text leaves without adaptation") {
    Stack st;
    auto id = st.service->open_session(config_of(Configuration::cc()), true);
    st.service->post_user_message(id, "My computer has become extremely slow lately.");
    for (const auto& r : st.outbound) {
        CHECK(r.find("proficiency band") == std::string::npos);
    }
    st.outbound.clear();
    auto id2 = st.service->open_session(config_of(Configuration::both()), true);
    st.service->post_user_message(id2, "My computer has become extremely slow lately.");
    bool seen = false;
    for (const auto& r : st.outbound) {
        seen = seen || r.find("proficiency band") != std::string::npos;
    }
    CHECK(seen);
}

TEST_CASE("step actions walk the plan and close produces a terminated export") {
    Stack st;
    auto id = st.service->open_session(config_of(Configuration::both()), true);
    st.service->post_user_message(id, "My computer has become extremely slow lately.");
    auto next = st.service->post_step_action(id, StepActionKind::Next);
    CHECK(next.step->k == 2);
    CHECK(st.service->post_step_action(id, StepActionKind::Resolved).kind == PayloadKind::FinalResolution);
    CHECK_THROWS_AS(st.service->post_step_action(id, StepActionKind::Next), InvalidActionError);
    st.service->close_session(id);
    CHECK_THROWS_AS(st.service->post_user_message(id, "more"), InvalidActionError);
    const auto log = st.service->export_session(id);
    CHECK(log == st.service->export_session(id));
    auto back = codec::decode(log);
    CHECK(back == st.service->state(id));
    CHECK(back.closed);
    CHECK(validate_state(back).empty());
}

TEST_CASE("same inputs give byte-identical exports") {
    auto run = [] {
        Stack st;
        auto id = st.service->open_session(config_of(Configuration::both()), true, "fixed");
        st.service->post_user_message(id, "My computer has become extremely slow lately.");
        st.service->post_step_action(id, StepActionKind::Next);
        st.service->close_session(id);
        return st.service->export_session(id);
    };
    CHECK(run() == run());
}

TEST_CASE("store: journal survives a torn final write and recovery reloads it") {
    const auto dir = scratch("store");
    std::string id;
    ConversationState before;
    {
        SessionStore store(dir);
        Stack st(&store);
        id = st.service->open_session(config_of(Configuration::both()), true);
        st.service->post_user_message(id, "My computer has become extremely slow lately.");
        st.service->post_step_action(id, StepActionKind::Next);
        before = st.service->state(id);
        std::ofstream(store.journal_path(id), std::ios::app) << R"({"record":"turn","index":2,"us)";
    }
    SessionStore store(dir);
    CHECK(store.list() == std::vector<std::string>{id});
    CHECK(store.load(id) == before);
    Stack st(&store);
    CHECK(st.service->recover() == 1);
    CHECK(st.service->state(id) == before);
    CHECK_THROWS_AS(store.journal_path("../evil"), ContractError);
    CHECK_THROWS_AS(store.create(before), ContractError);
    fs::remove_all(dir);
}

TEST_CASE("chat frames round trip") {
    wire::Open open{config_of(Configuration::adap()), true};
    auto back = std::get<wire::Open>(wire::decode_client(wire::encode(wire::ClientFrame{open})));
    CHECK(back.config == open.config);
    CHECK(back.consent);
    auto act = std::get<wire::StepAction>(
        wire::decode_client(wire::encode(wire::ClientFrame{wire::StepAction{StepActionKind::Clarify, "?"}})));
    CHECK(act.action == StepActionKind::Clarify);
    AssistantPayload p;
    p.kind = PayloadKind::SolutionStep;
    p.text = "Open Settings.";
    p.step = StepPosition{1, 3};
    p.diagnosis_summary = "D.";
    auto a = std::get<wire::Assistant>(wire::decode_server(wire::encode(wire::ServerFrame{wire::Assistant{p}})));
    CHECK(a.payload.text == p.text);
    CHECK(a.payload.step == p.step);
    CHECK_THROWS_AS(wire::decode_client(R"({"type":"dance"})"), ParseError);
    CHECK_THROWS_AS(wire::decode_client("[]"), ParseError);
}

TEST_CASE("chat server: bearer token, open-first, one session per connection") {
    Stack st;
    ChatServer server(*st.service, "127.0.0.1", 0, "s3cret");
    server.start();
    CHECK_THROWS_AS(net::ws_connect("127.0.0.1", server.port(), "/chat"), TransportError);
    {
        // The refusal itself, seen as plain HTTP.
        httplib::Client raw("127.0.0.1", server.port());
        httplib::Headers upgrade{{"Connection", "Upgrade"},
                                 {"Upgrade", "websocket"},
                                 {"Sec-WebSocket-Version", "13"},
                                 {"Sec-WebSocket-Key", "dGhlIHNhbXBsZSBub25jZQ=="}};
        auto res = raw.Get("/chat", upgrade);
        REQUIRE(res);
        CHECK(res->status == 401);
    }
    CHECK_THROWS_AS(net::ws_connect("127.0.0.1", server.port(), "/chat", {{"Authorization", "Bearer nope"}}),
                    TransportError);

    auto conn = net::ws_connect("127.0.0.1", server.port(), "/chat", {{"Authorization", "Bearer s3cret"}});
    auto recv = [&] { return wire::decode_server(*conn->read()); };
    conn->write(wire::encode(wire::ClientFrame{wire::UserMsg{"hi"}}));
    CHECK(std::get<wire::ErrorFrame>(recv()).code == wire::kNotOpen);
    conn->write("not json");
    CHECK(std::get<wire::ErrorFrame>(recv()).code == wire::kBadFrame);
    conn->write(wire::encode(wire::ClientFrame{wire::Open{config_of(Configuration::both()), true}}));
    auto opened = std::get<wire::Opened>(recv());
    CHECK_FALSE(opened.session_id.empty());
    CHECK_FALSE(opened.cc_effectively_disabled);
    conn->write(wire::encode(wire::ClientFrame{wire::Open{config_of(Configuration::both()), true}}));
    CHECK(std::get<wire::ErrorFrame>(recv()).code == wire::kAlreadyOpen);
    conn->write(wire::encode(wire::ClientFrame{wire::UserMsg{"My computer has become extremely slow lately."}}));
    auto first = std::get<wire::Assistant>(recv());
    CHECK(first.payload.kind == PayloadKind::SolutionStep);
    conn->write(wire::encode(wire::ClientFrame{wire::StepAction{StepActionKind::Next, ""}}));
    CHECK(std::get<wire::Assistant>(recv()).payload.step->k == 2);
    conn->close();
    server.stop();
    CHECK(st.service->state(opened.session_id).closed);
}
