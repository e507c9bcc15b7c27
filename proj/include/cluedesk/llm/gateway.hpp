#pragma once

#include "cluedesk/llm/provider.hpp"
#include "cluedesk/pii/anonymizer.hpp"

#include <atomic>
#include <functional>

namespace cluedesk::llm {

// The single path from the system to a model. Every outbound request is
// checked against the anonymizer's detectors and refused with
// PrivacyViolation on any hit, before the provider sees it.
class Gateway {
public:
    using Observer = std::function<void(const ModelRequest&)>;

    Gateway(Provider& provider, const pii::Anonymizer& guard);

    // Throws ContractError on empty messages, PrivacyViolation on a detector
    // hit; provider errors propagate.
    Completion complete(const ModelRequest& request);
    std::vector<double> embed(std::string_view text);

    // Sees every request that passed the guard. Called from whichever thread
    // issued the request.
    void set_observer(Observer observer) { observer_ = std::move(observer); }

    std::size_t requests_sent() const { return sent_.load(); }
    std::size_t guard_refusals() const { return refused_.load(); }

private:
    void check(std::string_view text);

    Provider& provider_;
    const pii::Anonymizer& guard_;
    Observer observer_;
    std::atomic<std::size_t> sent_{0};
    std::atomic<std::size_t> refused_{0};
};

} // namespace cluedesk::llm
