#include "cluedesk/cc/evidence.hpp"

namespace cluedesk::cc {

CategorySlice LocalEvidence::query(InfoCategory category) {
    if (drive_refresh_ && consent_) {
        collector_.refresh_if_due();
    }
    return collector_.query(category, consent_);
}

} // namespace cluedesk::cc
