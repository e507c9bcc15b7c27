#pragma once

#include "cluedesk/chat/session_store.hpp"
#include "cluedesk/orchestrator/orchestrator.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace cluedesk::chat {

// Opens the CC link for a session. Returns the evidence handle; throws
// TransportError when the daemon cannot be reached.
using CcConnector = std::function<std::unique_ptr<cc::EvidenceSource>(
    const ConversationState& state)>;

struct ServiceOptions {
    orchestrator::OrchestratorConfig orchestrator;
    SessionStore* store = nullptr;  // null keeps sessions in memory only
    CcConnector connect_cc;         // null means no CC anywhere
};

// Owns sessions. Calls for one session are serialized on that session's
// mutex; different sessions proceed in parallel.
class ChatService {
public:
    ChatService(orchestrator::Services services, ServiceOptions options);
    ~ChatService();

    // Throws ContractError for an invalid config. An empty id picks a random one.
    std::string open_session(const SessionConfig& config, bool cc_consent,
                             std::string session_id = {});

    // Payloads in emission order, re-identified for display.
    std::vector<AssistantPayload> post_user_message(const std::string& session_id,
                                                    const std::string& text);
    AssistantPayload post_step_action(const std::string& session_id, StepActionKind action,
                                      const std::string& text = {});

    void close_session(const std::string& session_id);
    std::string export_session(const std::string& session_id) const;
    ConversationState state(const std::string& session_id) const;
    // Degraded-path notices gathered while serving the session.
    std::vector<std::string> warnings(const std::string& session_id) const;

    // Reloads every journal in the store. Returns the number of sessions.
    std::size_t recover();

private:
    struct Session;
    std::shared_ptr<Session> find(const std::string& session_id) const;
    AssistantPayload display(const Session& s, AssistantPayload p) const;

    orchestrator::Services services_;
    ServiceOptions options_;
    orchestrator::Orchestrator engine_;
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
};

} // namespace cluedesk::chat
