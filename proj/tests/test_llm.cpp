#include "cluedesk/common/error.hpp"
#include "cluedesk/llm/cost.hpp"
#include "cluedesk/llm/gateway.hpp"
#include "cluedesk/llm/http_provider.hpp"
#include "cluedesk/llm/scripted.hpp"
#include "cluedesk/pii/anonymizer.hpp"

#include <doctest.h>
#include <httplib.h>

#include <atomic>
#include <thread>

using namespace cluedesk;
using namespace cluedesk::llm;
using nlohmann::json;

namespace {

ModelRequest request(NodeName node, std::string text, std::string task = "") {
    ModelRequest r;
    r.node = node;
    r.task = std::move(task);
    r.system_prompt = "system";
    r.messages.push_back({Role::User, std::move(text)});
    return r;
}

ScriptedProvider tiny_script() {
    return ScriptedProvider::from_json(json::parse(R"({"fixtures":{
        "route_intent":[{"match":["hello"],"response":"non_troubleshooting"},{"response":"troubleshooting"}],
        "gen_solution:profile":[{"response":{"observations":[]}}]
    }})"));
}

// Minimal OpenAI-compatible endpoint. Each test installs its own handler.
struct StubEndpoint {
    httplib::Server server;
    int port = 0;
    std::thread thread;

    explicit StubEndpoint(std::function<void(const httplib::Request&, httplib::Response&)> chat) {
        server.Post("/v1/chat/completions", chat);
        server.Post("/v1/embeddings", [](const httplib::Request&, httplib::Response& res) {
            res.set_content(R"({"data":[{"embedding":[0.5,0.25]}]})", "application/json");
        });
        port = server.bind_to_any_port("127.0.0.1");
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }
    ~StubEndpoint() {
        server.stop();
        thread.join();
    }
    HttpProviderConfig config() const {
        HttpProviderConfig c;
        c.base_url = "http://127.0.0.1:" + std::to_string(port) + "/v1";
        c.api_key = "k";
        c.timeout = std::chrono::milliseconds(5000);
        return c;
    }
};

std::string reply(const std::string& usage) {
    return R"({"choices":[{"message":{"role":"assistant","content":"ok"}}],"usage":)" + usage + "}";
}

} // namespace

TEST_CASE("scripted provider matches in file order with a catch-all") {
    auto p = tiny_script();
    CHECK(p.complete(request(NodeName::RouteIntent, "Hello there")).text == "non_troubleshooting");
    CHECK(p.complete(request(NodeName::RouteIntent, "my PC is slow")).text == "troubleshooting");
    CHECK(p.complete(request(NodeName::GenSolution, "x", "profile")).text == R"({"observations":[]})");
}

TEST_CASE("scripted provider fixture miss is a configuration error") {
    auto p = tiny_script();
    CHECK_THROWS_AS(p.complete(request(NodeName::GenQuestion, "x")), ConfigError);
}

TEST_CASE("synthetic token counts are ceil(1.3 x words)") {
    CHECK(ScriptedProvider::synthetic_tokens("") == 0);
    CHECK(ScriptedProvider::synthetic_tokens("one") == 2);            // 1.3 -> 2
    CHECK(ScriptedProvider::synthetic_tokens("a b c d e f g h i j") == 13);
    CHECK(ScriptedProvider::synthetic_tokens("a b c") == 4);          // 3.9 -> 4
}

TEST_CASE("scripted embeddings are unit length and deterministic") {
    auto p = tiny_script();
    auto a = p.embed("firewall disabled");
    auto b = p.embed("firewall disabled");
    CHECK(a == b);
    double n = 0;
    for (double x : a) {
        n += x * x;
    }
    CHECK(n == doctest::Approx(1.0));
}

TEST_CASE("gateway refuses any request carrying PII before the provider sees it") {
    auto p = tiny_script();
    pii::Anonymizer guard;
    Gateway g(p, guard);
    std::size_t observed = 0;
    g.set_observer([&](const ModelRequest&) { ++observed; });
    CHECK_THROWS_AS(g.complete(request(NodeName::RouteIntent, "mail me at a@b.io")), PrivacyViolation);
    auto sys = request(NodeName::RouteIntent, "fine");
    sys.system_prompt = "user ip is 10.2.3.4";
    CHECK_THROWS_AS(g.complete(sys), PrivacyViolation);
    CHECK(g.complete(request(NodeName::RouteIntent, "my PC is slow")).text == "troubleshooting");
    CHECK(g.guard_refusals() == 2);
    CHECK(g.requests_sent() == 1);
    CHECK(observed == 1);
    ModelRequest empty;
    CHECK_THROWS_AS(g.complete(empty), ContractError);
}

TEST_CASE("http provider reads the prompt/completion split") {
    std::string body_seen;
    StubEndpoint ep([&](const httplib::Request& req, httplib::Response& res) {
        body_seen = req.body;
        CHECK(req.get_header_value("Authorization") == "Bearer k");
        res.set_content(reply(R"({"prompt_tokens":12,"completion_tokens":3,"total_tokens":15})"),
                        "application/json");
    });
    HttpProvider p(ep.config());
    auto c = p.complete(request(NodeName::GenQuestion, "why", "t"));
    CHECK(c.text == "ok");
    CHECK(c.usage.input_tokens == 12);
    CHECK(c.usage.output_tokens == 3);
    CHECK(c.usage.split_known);
    CHECK(c.usage.node == NodeName::GenQuestion);
    auto sent = json::parse(body_seen);
    CHECK(sent["messages"][0]["role"] == "system");
    CHECK(sent["messages"][1]["content"] == "why");
}

TEST_CASE("http provider records total-only usage as unsplit") {
    StubEndpoint ep([](const httplib::Request&, httplib::Response& res) {
        res.set_content(reply(R"({"total_tokens":40})"), "application/json");
    });
    HttpProvider p(ep.config());
    auto c = p.complete(request(NodeName::GenQuestion, "why"));
    CHECK(c.usage.input_tokens == 40);
    CHECK(c.usage.output_tokens == 0);
    CHECK_FALSE(c.usage.split_known);
}

TEST_CASE("http provider retries 429 with doubling backoff") {
    std::atomic<int> calls{0};
    StubEndpoint ep([&](const httplib::Request&, httplib::Response& res) {
        if (calls++ < 2) {
            res.status = 429;
            return;
        }
        res.set_content(reply(R"({"prompt_tokens":1,"completion_tokens":1})"), "application/json");
    });
    HttpProvider p(ep.config());
    std::vector<long> sleeps;
    p.set_sleeper([&](std::chrono::milliseconds d) { sleeps.push_back(static_cast<long>(d.count())); });
    CHECK(p.complete(request(NodeName::GenQuestion, "why")).text == "ok");
    CHECK(calls == 3);
    CHECK(sleeps == std::vector<long>{500, 1000});
}

TEST_CASE("http provider gives up after retries and does not retry 4xx") {
    std::atomic<int> calls{0};
    StubEndpoint ep([&](const httplib::Request& req, httplib::Response& res) {
        ++calls;
        res.status = req.body.find("bad") != std::string::npos ? 400 : 503;
    });
    HttpProvider p(ep.config());
    p.set_sleeper([](std::chrono::milliseconds) {});
    CHECK_THROWS_AS(p.complete(request(NodeName::GenQuestion, "why")), TransportError);
    CHECK(calls == 3);
    calls = 0;
    CHECK_THROWS_AS(p.complete(request(NodeName::GenQuestion, "bad")), ProviderError);
    CHECK(calls == 1);
}

TEST_CASE("http provider unreachable endpoint is a transport error") {
    HttpProviderConfig c;
    c.base_url = "http://127.0.0.1:1/v1";
    c.max_retries = 0;
    c.timeout = std::chrono::milliseconds(1000);
    HttpProvider p(c);
    CHECK_THROWS_AS(p.complete(request(NodeName::GenQuestion, "why")), TransportError);
    c.base_url = "no-scheme";
    CHECK_THROWS_AS(HttpProvider{c}, ConfigError);
}

TEST_CASE("http provider embeddings") {
    StubEndpoint ep([](const httplib::Request&, httplib::Response& res) { res.status = 500; });
    HttpProvider p(ep.config());
    CHECK(p.embed("x") == std::vector<double>{0.5, 0.25});
}

TEST_CASE("cost of the reference mean conversation") {
    // Independent arithmetic: 191690 tokens, 30% input at 2.50/M, 70% output at 10.50/M.
    const double oracle = 191690.0 * (0.3 * 2.50 + 0.7 * 10.50) / 1e6;
    CHECK(cost_of_total_tokens(191690) == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(cost_of_total_tokens(191690) == doctest::Approx(1.55).epsilon(0.01 / 1.55));
}

TEST_CASE("conversation cost prices split entries exactly") {
    std::vector<TokenLedgerEntry> e{
        {NodeName::GenSolution, "", 1'000'000, 0, 1.0, true},
        {NodeName::GenSolution, "", 0, 1'000'000, 1.0, true},
        {NodeName::GenQuestion, "", 1'000'000, 0, 1.0, false},
    };
    CHECK(conversation_cost(e) == doctest::Approx(2.50 + 10.50 + (0.3 * 2.50 + 0.7 * 10.50)));
}

TEST_CASE("node overhead report: single sample and sample SD") {
    ConversationState s;
    Turn t;
    t.token_usage.push_back({NodeName::GenSolution, "", 60, 40, 2.0, true});
    t.token_usage.push_back({NodeName::RouteIntent, "", 10, 0, 1.0, true});
    t.token_usage.push_back({NodeName::RouteIntent, "", 30, 0, 3.0, true});
    s.turns.push_back(t);
    std::vector<ConversationState> sessions{s};
    auto rows = node_overhead_report(sessions);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].node == NodeName::RouteIntent);
    CHECK(rows[0].tokens.mean == doctest::Approx(20.0));
    CHECK(rows[0].tokens.sd == doctest::Approx(std::sqrt(200.0)));  // (10,30): n-1 SD
    CHECK(rows[1].node == NodeName::GenSolution);
    CHECK(rows[1].tokens.mean == doctest::Approx(100.0));
    CHECK(rows[1].tokens.sd == 0.0);
    CHECK(rows[1].api_seconds.mean == doctest::Approx(2.0));
    CHECK(rows[1].api_seconds.sd == 0.0);
}
