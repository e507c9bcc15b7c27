#pragma once

#include "cluedesk/eval/scenario.hpp"
#include "cluedesk/llm/gateway.hpp"
#include "cluedesk/llm/scripted.hpp"
#include "cluedesk/model/taxonomy.hpp"
#include "cluedesk/orchestrator/routing.hpp"
#include "cluedesk/pii/anonymizer.hpp"

#include <filesystem>
#include <memory>
#include <span>

namespace cluedesk::eval {

// Everything a simulated session needs, loaded once from a data directory:
// taxonomy.json, pii_patterns.json, spc_catalog.json, orchestrator.json,
// llm_fixtures.json and scenarios.json (or an explicit scenario file).
struct Environment {
    SubdomainTaxonomy taxonomy;
    pii::Anonymizer anonymizer;
    recommender::SpcCatalog catalog;
    orchestrator::OrchestratorConfig config;
    std::unique_ptr<llm::ScriptedProvider> provider;
    std::vector<ScenarioSpec> scenarios;

    static Environment load(const std::filesystem::path& data_dir,
                            const std::filesystem::path& scenario_file = {});
};

struct MatrixOptions {
    Injection injection = Injection::None;  // applied where legal
    bool profile_unavailable = false;
    bool cc_unreachable = false;            // simulate a down daemon
    Presentation presentation = Presentation::MinimizablePopup;
    std::filesystem::path store_dir;        // empty: no journals written
};

struct SessionRun {
    std::string scenario_id;
    ConversationState state;
    std::string log;  // canonical export
    std::vector<std::string> warnings;
};

struct MatrixResult {
    std::vector<SessionRun> runs;
    std::size_t requests_sent = 0;
    std::size_t guard_refusals = 0;
    // Detector hits found by re-checking every request the gateway let through.
    std::size_t outbound_hits = 0;
};

// "s-<seed>-<scenario>-<config label>"
std::string session_id_for(std::uint64_t seed, const std::string& scenario,
                           const Configuration& config);

// One session per (seed, scenario, config), run in that order on manual
// clocks, so equal inputs give byte-identical logs.
MatrixResult run_matrix(const Environment& env, std::span<const ScenarioSpec> scenarios,
                        std::span<const Configuration> configs,
                        std::span<const std::uint64_t> seeds, const MatrixOptions& options = {});

SessionRun run_session(const Environment& env, const ScenarioSpec& scenario,
                       const SessionConfig& config, const MatrixOptions& options,
                       llm::Gateway& gateway);

} // namespace cluedesk::eval
