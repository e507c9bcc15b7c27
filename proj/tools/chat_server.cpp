// Chat service over WebSocket. Uses the OpenAI-compatible endpoint from
// VCA_LLM_ENDPOINT unless --scripted is given.

#include "cluedesk/cc/evidence.hpp"
#include "cluedesk/chat/server.hpp"
#include "cluedesk/common/clock.hpp"
#include "cluedesk/common/error.hpp"
#include "cluedesk/llm/http_provider.hpp"
#include "cluedesk/llm/scripted.hpp"
#include "cluedesk/recommender/ranking.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <cstdlib>
#include <iostream>
#include <thread>

namespace {

volatile std::sig_atomic_t g_stop = 0;

void on_signal(int) { g_stop = 1; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Troubleshooting chat service"};
    std::string listen = "127.0.0.1:7050";
    std::string data_dir = CLUEDESK_DATA_DIR;
    std::string store_dir = "sessions";
    std::string cc_addr;
    std::string token;
    bool scripted = false;
    bool embeddings = false;
    app.add_option("--listen", listen, "host:port to listen on");
    app.add_option("--data-dir", data_dir, "Directory with taxonomy, catalog and config files");
    app.add_option("--store", store_dir, "Directory for session journals");
    app.add_option("--cc", cc_addr, "host:port of the clue-collector daemon");
    app.add_option("--token", token, "Bearer token clients must present (default $VCA_CHAT_TOKEN)");
    app.add_flag("--scripted", scripted, "Answer from data-dir/llm_fixtures.json");
    app.add_flag("--embeddings", embeddings, "Rank products with provider embeddings");
    CLI11_PARSE(app, argc, argv);

    if (token.empty()) {
        if (const char* t = std::getenv("VCA_CHAT_TOKEN")) {
            token = t;
        }
    }
    if (token.empty()) {
        std::cerr << "chat_server: set --token or VCA_CHAT_TOKEN\n";
        return 2;
    }

    try {
        using namespace cluedesk;
        const std::filesystem::path dir = data_dir;
        std::unique_ptr<llm::Provider> provider;
        if (scripted) {
            provider = std::make_unique<llm::ScriptedProvider>(
                llm::ScriptedProvider::load(dir / "llm_fixtures.json"));
        } else {
            provider = std::make_unique<llm::HttpProvider>(llm::HttpProviderConfig::from_env());
        }
        const auto taxonomy = SubdomainTaxonomy::load(dir / "taxonomy.json");
        const pii::Anonymizer anonymizer(pii::AnonymizerConfig::load(dir / "pii_patterns.json"));
        const auto catalog = recommender::SpcCatalog::load(dir / "spc_catalog.json");
        llm::Gateway gateway(*provider, anonymizer);
        std::unique_ptr<recommender::Scorer> scorer;
        if (embeddings) {
            scorer = std::make_unique<recommender::EmbeddingScorer>(gateway);
        } else {
            scorer = std::make_unique<recommender::LexicalScorer>();
        }
        SystemClock clock;
        chat::SessionStore store(store_dir);

        chat::ServiceOptions options;
        options.orchestrator = orchestrator::OrchestratorConfig::load(dir / "orchestrator.json");
        options.store = &store;
        if (!cc_addr.empty()) {
            const auto [cc_host, cc_port] = net::parse_host_port(cc_addr);
            options.connect_cc = [cc_host, cc_port](const ConversationState& s) {
                return std::unique_ptr<cc::EvidenceSource>(std::make_unique<cc::RemoteEvidence>(
                    cc::CcClient::connect(cc_host, cc_port, s.session_id, s.cc_consent)));
            };
        }
        chat::ChatService service({gateway, anonymizer, taxonomy, catalog, *scorer, clock},
                                  options);
        const std::size_t recovered = service.recover();

        const auto [host, port] = net::parse_host_port(listen);
        chat::ChatServer server(service, host, port, token);
        server.start();
        std::cout << "chat_server listening on " << host << ":" << server.port() << " ("
                  << recovered << " sessions recovered)" << std::endl;

        std::signal(SIGINT, on_signal);
        std::signal(SIGTERM, on_signal);
        while (!g_stop) {
            std::this_thread::sleep_for(std::chrono::milliseconds(200));
        }
        server.stop();
    } catch (const std::exception& e) {
        std::cerr << "chat_server: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
