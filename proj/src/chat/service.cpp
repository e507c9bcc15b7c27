#include "cluedesk/chat/service.hpp"

#include "cluedesk/common/error.hpp"
#include "cluedesk/model/codec.hpp"
#include "cluedesk/model/validate.hpp"
#include "cluedesk/profiler/profiler.hpp"

#include <random>

namespace cluedesk::chat {

namespace {

constexpr const char* kApology =
    "Sorry, something went wrong on our side. Please try again in a moment.";

std::string random_id() {
    std::random_device rd;
    static constexpr char kHex[] = "0123456789abcdef";
    std::string id = "s-";
    for (int i = 0; i < 16; ++i) {
        id += kHex[rd() % 16];
    }
    return id;
}

} // namespace

struct ChatService::Session {
    std::mutex mutex;
    ConversationState state;
    pii::PlaceholderMap placeholders;
    std::unique_ptr<cc::EvidenceSource> evidence;
    std::vector<std::string> warnings;
};

ChatService::ChatService(orchestrator::Services services, ServiceOptions options)
    : services_(services), options_(std::move(options)), engine_(services, options_.orchestrator) {}

ChatService::~ChatService() = default;

std::shared_ptr<ChatService::Session> ChatService::find(const std::string& session_id) const {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(session_id);
    if (it == sessions_.end()) {
        throw NotFoundError("no session " + session_id);
    }
    return it->second;
}

std::string ChatService::open_session(const SessionConfig& config, bool cc_consent,
                                      std::string session_id) {
    if (!config.configuration.legal()) {
        throw ContractError("baseline cannot be combined with CC or adaptation");
    }
    if ((config.injection == Injection::ProfileAll1 || config.injection == Injection::ProfileAll5) &&
        !config.configuration.adaptation_enabled) {
        throw ContractError("profile injection requires adaptation");
    }
    if (!(config.cc_period_seconds > 0)) {
        throw ContractError("cc_period_seconds must be positive");
    }
    if (session_id.empty()) {
        session_id = random_id();
    }

    auto s = std::make_shared<Session>();
    s->state.session_id = session_id;
    s->state.config = config;
    s->state.cc_consent = cc_consent;
    s->state.opened_at = services_.clock.now();
    const std::size_t dims = services_.taxonomy.size();
    switch (config.injection) {
    case Injection::ProfileAll1:
        s->state.initial_profile = UserProfile::uniform(dims, 1.0, 1.0);
        break;
    case Injection::ProfileAll5:
        s->state.initial_profile = UserProfile::uniform(dims, 5.0, 1.0);
        break;
    default:
        s->state.initial_profile = profiler::initial_profile(dims);
    }

    if (config.configuration.cc_enabled && cc_consent) {
        if (!options_.connect_cc) {
            s->state.cc_effectively_disabled = true;
            s->warnings.push_back("no clue collector configured");
        } else {
            try {
                s->evidence = options_.connect_cc(s->state);
            } catch (const TransportError& e) {
                s->state.cc_effectively_disabled = true;
                s->warnings.push_back(std::string("clue collector unreachable: ") + e.what());
            }
        }
    }

    {
        std::lock_guard lock(mutex_);
        if (sessions_.contains(session_id)) {
            throw ContractError("session " + session_id + " already exists");
        }
        sessions_.emplace(session_id, s);
    }
    if (options_.store) {
        options_.store->create(s->state);
    }
    return session_id;
}

AssistantPayload ChatService::display(const Session& s, AssistantPayload p) const {
    p.text = pii::reidentify(p.text, s.placeholders);
    if (p.diagnosis_summary) {
        p.diagnosis_summary = pii::reidentify(*p.diagnosis_summary, s.placeholders);
    }
    if (p.recommendation) {
        p.recommendation->rationale = pii::reidentify(p.recommendation->rationale, s.placeholders);
    }
    return p;
}

std::vector<AssistantPayload> ChatService::post_user_message(const std::string& session_id,
                                                             const std::string& text) {
    auto s = find(session_id);
    std::lock_guard lock(s->mutex);
    if (s->state.closed) {
        throw InvalidActionError("session " + session_id + " is closed");
    }
    const std::string redacted = services_.anonymizer.anonymize(text, s->placeholders).text;
    orchestrator::SessionIo io;
    io.evidence = s->state.cc_available() ? s->evidence.get() : nullptr;
    io.placeholders = &s->placeholders;
    io.warn = [&](const std::string& w) { s->warnings.push_back(w); };

    const Turn* turn = nullptr;
    try {
        turn = &engine_.run_iteration(s->state, redacted, io);
    } catch (const std::exception& e) {
        s->warnings.push_back(std::string("pipeline failure: ") + e.what());
        Turn failed;
        failed.index = s->state.turns.size() + 1;
        failed.at = services_.clock.now();
        failed.user_text = redacted;
        failed.failed = true;
        failed.payload.kind = PayloadKind::NonTroubleshootingReply;
        failed.payload.text = kApology;
        s->state.turns.push_back(std::move(failed));
        turn = &s->state.turns.back();
    }
    if (options_.store) {
        options_.store->append_turn(session_id, *turn);
    }
    return {display(*s, turn->payload)};
}

AssistantPayload ChatService::post_step_action(const std::string& session_id,
                                               StepActionKind action, const std::string& text) {
    auto s = find(session_id);
    std::lock_guard lock(s->mutex);
    const std::string redacted = services_.anonymizer.anonymize(text, s->placeholders).text;
    orchestrator::SessionIo io;
    io.placeholders = &s->placeholders;
    io.warn = [&](const std::string& w) { s->warnings.push_back(w); };
    const StepEvent& ev = engine_.step_action(s->state, action, redacted, io);
    if (options_.store) {
        options_.store->append_step(session_id, s->state.turns.back().index, ev);
    }
    return display(*s, ev.payload);
}

void ChatService::close_session(const std::string& session_id) {
    auto s = find(session_id);
    std::lock_guard lock(s->mutex);
    if (s->state.closed) {
        return;
    }
    s->state.closed = true;
    s->evidence.reset();
    if (options_.store) {
        options_.store->append_trailer(s->state);
    }
}

std::string ChatService::export_session(const std::string& session_id) const {
    auto s = find(session_id);
    std::lock_guard lock(s->mutex);
    return codec::encode(s->state);
}

ConversationState ChatService::state(const std::string& session_id) const {
    auto s = find(session_id);
    std::lock_guard lock(s->mutex);
    return s->state;
}

std::vector<std::string> ChatService::warnings(const std::string& session_id) const {
    auto s = find(session_id);
    std::lock_guard lock(s->mutex);
    return s->warnings;
}

std::size_t ChatService::recover() {
    if (!options_.store) {
        return 0;
    }
    std::size_t n = 0;
    for (const auto& id : options_.store->list()) {
        auto s = std::make_shared<Session>();
        s->state = options_.store->load(id);
        // Placeholder maps are not persisted; recovered sessions display
        // placeholders for PII seen before the restart.
        std::lock_guard lock(mutex_);
        sessions_[id] = std::move(s);
        ++n;
    }
    return n;
}

} // namespace cluedesk::chat
