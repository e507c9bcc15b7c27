#include "cluedesk/chat/session_store.hpp"

#include "cluedesk/common/error.hpp"
#include "cluedesk/common/files.hpp"
#include "cluedesk/common/text.hpp"
#include "cluedesk/model/codec.hpp"

#include <cctype>
#include <cerrno>
#include <cstring>
#include <fcntl.h>
#include <unistd.h>

#include <json.hpp>

namespace cluedesk::chat {

namespace {

bool safe_id(const std::string& id) {
    if (id.empty() || id.size() > 128) {
        return false;
    }
    for (char c : id) {
        const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
        if (!ok) {
            return false;
        }
    }
    return id != "." && id != ".." && id != "index";
}

} // namespace

SessionStore::SessionStore(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) {
        throw ConfigError("cannot create session directory " + dir_.string() + ": " + ec.message());
    }
}

std::filesystem::path SessionStore::journal_path(const std::string& session_id) const {
    if (!safe_id(session_id)) {
        throw ContractError("unsafe session id '" + session_id + "'");
    }
    return dir_ / (session_id + ".jsonl");
}

void SessionStore::append_line(const std::filesystem::path& path, const std::string& line) {
    const int fd = ::open(path.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
    if (fd < 0) {
        throw Error("cannot open " + path.string() + ": " + std::strerror(errno));
    }
    std::string buf = line + "\n";
    const char* p = buf.data();
    std::size_t left = buf.size();
    while (left > 0) {
        const ssize_t n = ::write(fd, p, left);
        if (n < 0) {
            if (errno == EINTR) {
                continue;
            }
            const int err = errno;
            ::close(fd);
            throw Error("write to " + path.string() + " failed: " + std::strerror(err));
        }
        p += n;
        left -= static_cast<std::size_t>(n);
    }
    const int rc = ::fsync(fd);
    ::close(fd);
    if (rc != 0) {
        throw Error("fsync of " + path.string() + " failed");
    }
}

void SessionStore::create(const ConversationState& state) {
    const auto path = journal_path(state.session_id);
    if (std::filesystem::exists(path)) {
        throw ContractError("session " + state.session_id + " already exists");
    }
    append_line(path, codec::header_record(state));
    std::lock_guard lock(index_mutex_);
    append_line(dir_ / "index.jsonl",
                nlohmann::json{{"session_id", state.session_id},
                               {"configuration", state.configuration().label()},
                               {"opened_at", state.opened_at}}
                    .dump());
}

void SessionStore::append_turn(const std::string& session_id, const Turn& turn) {
    append_line(journal_path(session_id), codec::turn_record(turn));
}

void SessionStore::append_step(const std::string& session_id, std::size_t turn_index,
                               const StepEvent& event) {
    append_line(journal_path(session_id), codec::step_record(turn_index, event));
}

void SessionStore::append_trailer(const ConversationState& state) {
    append_line(journal_path(state.session_id), codec::trailer_record(state));
}

ConversationState SessionStore::load(const std::string& session_id) const {
    const auto path = journal_path(session_id);
    if (!std::filesystem::exists(path)) {
        throw NotFoundError("no session " + session_id);
    }
    return codec::decode(read_text_file(path), true);
}

std::vector<std::string> SessionStore::list() const {
    std::vector<std::string> ids;
    const auto index = dir_ / "index.jsonl";
    if (!std::filesystem::exists(index)) {
        return ids;
    }
    std::lock_guard lock(index_mutex_);
    const auto lines = text::split(read_text_file(index), '\n');
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (text::trim(lines[i]).empty()) {
            continue;
        }
        auto j = nlohmann::json::parse(lines[i], nullptr, false);
        if (j.is_discarded()) {
            if (i + 1 == lines.size()) {
                break;  // torn tail
            }
            throw ParseError(index.string(), i + 1, "malformed index entry");
        }
        ids.push_back(j.at("session_id").get<std::string>());
    }
    return ids;
}

} // namespace cluedesk::chat
