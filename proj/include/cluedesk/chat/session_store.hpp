#pragma once

// Append-only session journals: <dir>/<session_id>.jsonl plus <dir>/index.jsonl.
// Every append is flushed and fsynced before returning, so a turn that was
// acknowledged survives a crash. A half-written final line is dropped on load.

#include "cluedesk/model/types.hpp"

#include <filesystem>
#include <mutex>
#include <string>
#include <vector>

namespace cluedesk::chat {

class SessionStore {
public:
    explicit SessionStore(std::filesystem::path dir);

    // Writes the header record and registers the id in the index. Throws
    // ContractError if the session already exists.
    void create(const ConversationState& state);
    void append_turn(const std::string& session_id, const Turn& turn);
    void append_step(const std::string& session_id, std::size_t turn_index,
                     const StepEvent& event);
    void append_trailer(const ConversationState& state);

    ConversationState load(const std::string& session_id) const;
    // Ids in creation order.
    std::vector<std::string> list() const;

    std::filesystem::path journal_path(const std::string& session_id) const;
    const std::filesystem::path& dir() const { return dir_; }

private:
    void append_line(const std::filesystem::path& path, const std::string& line);

    std::filesystem::path dir_;
    mutable std::mutex index_mutex_;
};

} // namespace cluedesk::chat
