#include "nmx/session_log.hpp"

#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>

namespace nmx {

SessionLog::SessionLog(const std::filesystem::path& path) : file_(path, std::ios::app) {
    if (!file_) throw std::runtime_error("cannot open session log '" + path.string() + "'");
    out_ = &file_;
}

void SessionLog::append(const std::string& session_id, const std::string& event, const ordered_json& payload) {
    if (out_ == nullptr) return;
    ordered_json record = {{"ts", iso8601_now()}, {"session_id", session_id}, {"event", event}, {"payload", payload}};
    std::string line = record.dump() + "\n";
    std::lock_guard lock(mutex_);
    *out_ << line;
    out_->flush();
}

std::string iso8601_now() {
    auto now = std::chrono::system_clock::now();
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%S") << '.' << std::setw(3) << std::setfill('0') << ms << 'Z';
    return out.str();
}

std::map<std::string, Outcome> replay_log(std::shared_ptr<const ReteTopology> topology, std::istream& log) {
    std::map<std::string, Session> sessions;
    std::string line;
    int line_no = 0;
    while (std::getline(log, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto where = "session log line " + std::to_string(line_no);
        nlohmann::json record;
        try {
            record = nlohmann::json::parse(line);
            std::string id = record.at("session_id").get<std::string>();
            std::string event = record.at("event").get<std::string>();
            if (event == "created") {
                sessions.emplace(id, Session(topology));
            } else if (event == "answer" || event == "diagnosis" || event == "no_match") {
                auto it = sessions.find(id);
                if (it == sessions.end()) throw std::runtime_error("answer for unknown session '" + id + "'");
                const auto& payload = record.at("payload");
                it->second.submit_answer(payload.at("ident").get<std::string>(),
                                         payload.at("answer").get<std::string>());
            } else if (event != "question") {
                throw std::runtime_error("unknown event '" + event + "'");
            }
        } catch (const nlohmann::json::exception& e) {
            throw std::runtime_error(where + ": " + e.what());
        } catch (const DialogError& e) {
            throw std::runtime_error(where + ": " + e.what());
        }
    }
    std::map<std::string, Outcome> out;
    for (const auto& [id, session] : sessions) out.emplace(id, session.result());
    return out;
}

}  // namespace nmx
