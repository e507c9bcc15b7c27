#include "cluedesk/llm/gateway.hpp"

#include "cluedesk/common/error.hpp"

namespace cluedesk::llm {

Gateway::Gateway(Provider& provider, const pii::Anonymizer& guard)
    : provider_(provider), guard_(guard) {}

void Gateway::check(std::string_view text) {
    const auto spans = guard_.detect(text);
    if (!spans.empty()) {
        ++refused_;
        throw PrivacyViolation("outbound request contains " +
                               std::string(pii::to_string(spans.front().kind)));
    }
}

Completion Gateway::complete(const ModelRequest& request) {
    if (request.messages.empty()) {
        throw ContractError("model request for " + std::string(to_string(request.node)) +
                            " has no messages");
    }
    check(request.system_prompt);
    for (const auto& m : request.messages) {
        check(m.content);
    }
    if (observer_) {
        observer_(request);
    }
    ++sent_;
    return provider_.complete(request);
}

std::vector<double> Gateway::embed(std::string_view text) {
    check(text);
    ++sent_;
    return provider_.embed(text);
}

} // namespace cluedesk::llm
