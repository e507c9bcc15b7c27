#pragma once

#include "cluedesk/cc/snapshot.hpp"

namespace cluedesk::cc {

// Where snapshots come from: a fixture file or the live machine.
class SnapshotSource {
public:
    virtual ~SnapshotSource() = default;
    virtual bool supports(InfoCategory) const { return true; }
    // Fills `into` with the category's fields. Throws on collection failure;
    // the collector then marks the category stale and keeps the old data.
    virtual void collect(InfoCategory category, DeviceSnapshot& into) = 0;
};

} // namespace cluedesk::cc
