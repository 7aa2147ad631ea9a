#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <string>

#include "nmx/dialog.hpp"
#include "nmx/json_io.hpp"

namespace nmx {

/// Append-only JSON-lines log of session events. Each line is
/// {"ts", "session_id", "event", "payload"} with event one of
/// created | question | answer | diagnosis | no_match.
class SessionLog {
public:
    /// Disabled log: append() does nothing.
    SessionLog() = default;
    /// Writes to a caller-owned stream.
    explicit SessionLog(std::ostream& out) : out_(&out) {}
    /// Opens `path` for appending. Throws std::runtime_error on failure.
    explicit SessionLog(const std::filesystem::path& path);

    SessionLog(const SessionLog&) = delete;
    SessionLog& operator=(const SessionLog&) = delete;

    bool enabled() const { return out_ != nullptr; }
    void append(const std::string& session_id, const std::string& event, const ordered_json& payload);

private:
    std::mutex mutex_;
    std::ofstream file_;
    std::ostream* out_ = nullptr;
};

/// Current UTC time as ISO-8601 with milliseconds.
std::string iso8601_now();

/// Re-runs every logged session against a fresh dialog and returns each
/// session's outcome by id. `question` events are informational and skipped.
/// Throws std::runtime_error on malformed lines or answers the dialog rejects.
std::map<std::string, Outcome> replay_log(std::shared_ptr<const ReteTopology> topology, std::istream& log);

}  // namespace nmx
