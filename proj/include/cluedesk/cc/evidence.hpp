#pragma once

#include "cluedesk/cc/client.hpp"
#include "cluedesk/cc/collector.hpp"

namespace cluedesk::cc {

// What the orchestrator's execute_tools node talks to.
class EvidenceSource {
public:
    virtual ~EvidenceSource() = default;
    virtual CategorySlice query(InfoCategory category) = 0;
};

// In-process collector. With `drive_refresh`, each query first refreshes if
// a period has elapsed on the collector's clock, giving the same cadence as
// the refresh thread without its scheduling noise.
class LocalEvidence final : public EvidenceSource {
public:
    LocalEvidence(ClueCollector& collector, bool consent, bool drive_refresh = false)
        : collector_(collector), consent_(consent), drive_refresh_(drive_refresh) {}

    CategorySlice query(InfoCategory category) override;

private:
    ClueCollector& collector_;
    bool consent_;
    bool drive_refresh_;
};

class RemoteEvidence final : public EvidenceSource {
public:
    explicit RemoteEvidence(std::unique_ptr<CcClient> client) : client_(std::move(client)) {}
    CategorySlice query(InfoCategory category) override { return client_->query(category); }

private:
    std::unique_ptr<CcClient> client_;
};

} // namespace cluedesk::cc
