#include "cluedesk/eval/matrix.hpp"

#include "cluedesk/cc/collector.hpp"
#include "cluedesk/cc/evidence.hpp"
#include "cluedesk/cc/fixture.hpp"
#include "cluedesk/chat/service.hpp"
#include "cluedesk/common/error.hpp"
#include "cluedesk/model/codec.hpp"
#include "cluedesk/recommender/ranking.hpp"

#include <optional>

namespace cluedesk::eval {

namespace {

// A fixed epoch keeps timestamps in the logs identical across runs.
constexpr Millis kEpoch = 1'700'000'000'000;
constexpr Millis kUserThinkMs = 12'000;

// Collector plus evidence handle, owned by the session.
class FixtureEvidence final : public cc::EvidenceSource {
public:
    FixtureEvidence(const std::filesystem::path& fixture, Clock& clock, double period)
        : collector_(std::make_shared<cc::FixtureSource>(cc::FixtureSource::from_file(fixture)),
                     clock, period),
          evidence_(collector_, true, true) {
        collector_.refresh_once();
    }
    cc::CategorySlice query(InfoCategory c) override { return evidence_.query(c); }

private:
    cc::ClueCollector collector_;
    cc::LocalEvidence evidence_;
};

} // namespace

Environment Environment::load(const std::filesystem::path& dir,
                              const std::filesystem::path& scenario_file) {
    auto catalog = recommender::SpcCatalog::load(dir / "spc_catalog.json");
    auto scenarios = load_scenarios(scenario_file.empty() ? dir / "scenarios.json" : scenario_file,
                                    catalog);
    return Environment{
        SubdomainTaxonomy::load(dir / "taxonomy.json"),
        pii::Anonymizer(pii::AnonymizerConfig::load(dir / "pii_patterns.json")),
        std::move(catalog),
        orchestrator::OrchestratorConfig::load(dir / "orchestrator.json"),
        std::make_unique<llm::ScriptedProvider>(llm::ScriptedProvider::load(dir / "llm_fixtures.json")),
        std::move(scenarios),
    };
}

std::string session_id_for(std::uint64_t seed, const std::string& scenario,
                           const Configuration& config) {
    return "s-" + std::to_string(seed) + "-" + scenario + "-" + config.label();
}

SessionRun run_session(const Environment& env, const ScenarioSpec& scenario,
                       const SessionConfig& config, const MatrixOptions& options,
                       llm::Gateway& gateway) {
    ManualClock clock(kEpoch);
    recommender::LexicalScorer scorer;
    orchestrator::Services services{gateway, env.anonymizer, env.taxonomy, env.catalog, scorer,
                                    clock};
    std::optional<chat::SessionStore> store;
    if (!options.store_dir.empty()) {
        store.emplace(options.store_dir);
    }
    chat::ServiceOptions so;
    so.orchestrator = env.config;
    so.store = store ? &*store : nullptr;
    so.connect_cc = [&](const ConversationState& s) -> std::unique_ptr<cc::EvidenceSource> {
        if (options.cc_unreachable) {
            throw TransportError("connection refused");
        }
        return std::make_unique<FixtureEvidence>(scenario.fixture, clock,
                                                 s.config.cc_period_seconds);
    };
    chat::ChatService service(services, so);
    const std::string id =
        service.open_session(config, true, session_id_for(config.seed, scenario.id,
                                                          config.configuration));

    ScriptedUser user(scenario);
    UserAction action = user.first();
    while (!std::holds_alternative<Stop>(action)) {
        clock.advance(kUserThinkMs);
        AssistantPayload reply;
        if (auto* m = std::get_if<SendMessage>(&action)) {
            reply = service.post_user_message(id, m->text).back();
        } else {
            const auto& s = std::get<SendStep>(action);
            reply = service.post_step_action(id, s.action, s.text);
        }
        action = user.next(reply);
    }
    service.close_session(id);
    return SessionRun{scenario.id, service.state(id), service.export_session(id),
                      service.warnings(id)};
}

MatrixResult run_matrix(const Environment& env, std::span<const ScenarioSpec> scenarios,
                        std::span<const Configuration> configs,
                        std::span<const std::uint64_t> seeds, const MatrixOptions& options) {
    MatrixResult result;
    llm::Gateway gateway(*env.provider, env.anonymizer);
    gateway.set_observer([&](const llm::ModelRequest& r) {
        result.outbound_hits += env.anonymizer.detect(r.system_prompt).size();
        for (const auto& m : r.messages) {
            result.outbound_hits += env.anonymizer.detect(m.content).size();
        }
    });
    for (std::uint64_t seed : seeds) {
        for (const auto& scenario : scenarios) {
            for (const auto& configuration : configs) {
                SessionConfig config;
                config.configuration = configuration;
                config.presentation = options.presentation;
                config.seed = seed;
                config.scenario = scenario.id;
                config.faults.profile_unavailable = options.profile_unavailable;
                const bool profile_injection = options.injection == Injection::ProfileAll1 ||
                                               options.injection == Injection::ProfileAll5;
                if (!profile_injection || configuration.adaptation_enabled) {
                    config.injection = options.injection;
                }
                result.runs.push_back(run_session(env, scenario, config, options, gateway));
            }
        }
    }
    result.requests_sent = gateway.requests_sent();
    result.guard_refusals = gateway.guard_refusals();
    return result;
}

} // namespace cluedesk::eval
