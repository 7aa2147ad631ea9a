#include "nmx/service.hpp"

#include <vector>

#include "httplib.h"

namespace nmx {

namespace {

HttpResponse json_response(int status, const ordered_json& body) { return {status, body.dump()}; }

HttpResponse error_response(int status, const std::string& code, const std::string& message = {}) {
    ordered_json body = {{"error", code}};
    if (!message.empty()) body["message"] = message;
    return json_response(status, body);
}

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= path.size()) {
        std::size_t end = path.find('/', start);
        if (end == std::string::npos) end = path.size();
        if (end > start) parts.push_back(path.substr(start, end - start));
        start = end + 1;
    }
    return parts;
}

const char* answer_event(Status status) {
    switch (status) {
        case Status::Diagnosed: return "diagnosis";
        case Status::NoMatch: return "no_match";
        case Status::InProgress: break;
    }
    return "answer";
}

}  // namespace

// ---------------------------------------------------------------------------
// SessionStore

SessionStore::SessionStore(std::chrono::steady_clock::duration idle_expiry, Clock clock)
    : idle_expiry_(idle_expiry), clock_(std::move(clock)) {}

bool SessionStore::expired(const Entry& entry, std::chrono::steady_clock::time_point now) const {
    return now - entry.last_used > idle_expiry_;
}

std::shared_ptr<SessionStore::Entry> SessionStore::create(Session session) {
    auto entry = std::make_shared<Entry>(std::move(session));
    auto now = clock_();
    entry->created = now;
    entry->last_used = now;
    std::lock_guard lock(mutex_);
    std::erase_if(sessions_, [&](const auto& item) { return expired(*item.second, now); });
    sessions_.emplace(entry->session.id(), entry);
    return entry;
}

std::shared_ptr<SessionStore::Entry> SessionStore::find(const std::string& id) {
    auto now = clock_();
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) return nullptr;
    if (expired(*it->second, now)) {
        sessions_.erase(it);
        return nullptr;
    }
    it->second->last_used = now;
    return it->second;
}

std::size_t SessionStore::size() {
    std::lock_guard lock(mutex_);
    return sessions_.size();
}

void SessionStore::sweep() {
    auto now = clock_();
    std::lock_guard lock(mutex_);
    std::erase_if(sessions_, [&](const auto& item) { return expired(*item.second, now); });
}

// ---------------------------------------------------------------------------
// Service

Service::Service(std::shared_ptr<const ReteTopology> topology, SessionLog& log, Options options,
                 std::string load_error)
    : topology_(std::move(topology)),
      log_(log),
      store_(options.idle_expiry, std::move(options.clock)),
      load_error_(std::move(load_error)) {}

HttpResponse Service::handle(const std::string& method, const std::string& path, const std::string& body) {
    auto parts = split_path(path);
    if (parts.size() < 2 || parts[0] != "api" || parts[1] != "sessions") return error_response(404, "not_found");

    if (parts.size() == 2) {
        if (method != "POST") return error_response(405, "method_not_allowed");
        return create_session();
    }
    if (parts.size() != 4) return error_response(404, "not_found");

    const std::string& id = parts[2];
    const std::string& action = parts[3];
    const bool known = (action == "next" && method == "GET") || (action == "result" && method == "GET") ||
                       (action == "answers" && method == "POST");
    if (!known) {
        if (action == "next" || action == "result" || action == "answers")
            return error_response(405, "method_not_allowed");
        return error_response(404, "not_found");
    }

    auto entry = store_.find(id);
    if (!entry) return error_response(404, "session_not_found");
    std::lock_guard lock(entry->mutex);
    if (action == "next") return next(*entry, id);
    if (action == "result") return result(*entry);
    return answer(*entry, id, body);
}

HttpResponse Service::create_session() {
    if (!topology_) return error_response(503, "kb_unavailable", load_error_);
    auto entry = store_.create(Session(topology_));
    const std::string& id = entry->session.id();
    log_.append(id, "created", ordered_json::object());
    return json_response(201, {{"session_id", id}});
}

HttpResponse Service::next(SessionStore::Entry& entry, const std::string& id) {
    if (entry.session.status() != Status::InProgress) return json_response(200, to_json(NextStep{Done{}}));
    NextStep step = entry.session.next_step();
    if (const auto* q = std::get_if<Question>(&step)) log_.append(id, "question", {{"ident", q->ident}});
    return json_response(200, to_json(step));
}

HttpResponse Service::answer(SessionStore::Entry& entry, const std::string& id, const std::string& body) {
    auto doc = nlohmann::json::parse(body, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("ident") || !doc["ident"].is_string() ||
        !doc.contains("answer") || !doc["answer"].is_string())
        return error_response(422, "invalid_answer", "expected {\"ident\": string, \"answer\": \"yes\"|\"no\"}");

    const auto ident = doc["ident"].get<std::string>();
    const auto token = doc["answer"].get<std::string>();
    Session& session = entry.session;
    AnswerDelta delta;
    try {
        delta = session.submit_answer(ident, token);
    } catch (const DialogError& e) {
        switch (e.code()) {
            case DialogError::Code::InvalidAnswer: return error_response(422, "invalid_answer", e.what());
            case DialogError::Code::Repeated: return error_response(409, "already_answered", e.what());
            case DialogError::Code::OutOfOrder: return error_response(409, "unexpected_question", e.what());
            case DialogError::Code::Finished: return error_response(409, "session_finished", e.what());
        }
        throw;
    }

    const auto asked = session.result().transcript.size();
    ordered_json payload = {{"ident", ident}, {"answer", token}, {"questions_asked", asked},
                            {"status", to_string(delta.status)}};
    if (delta.status == Status::Diagnosed) payload["diagnoses"] = to_json(session.result())["diagnoses"];
    log_.append(id, answer_event(delta.status), payload);
    return json_response(200, {{"status", to_string(delta.status)}, {"questions_asked", asked}});
}

HttpResponse Service::result(SessionStore::Entry& entry) { return json_response(200, to_json(entry.session.result())); }

// ---------------------------------------------------------------------------
// httplib glue

void install_routes(httplib::Server& server, Service& service, const ServerOptions& options) {
    auto dispatch = [&service](const httplib::Request& req, httplib::Response& res) {
        HttpResponse out = service.handle(req.method, req.path, req.body);
        res.status = out.status;
        res.set_content(out.body, "application/json");
    };
    server.Get(R"(/api/.*)", dispatch);
    server.Post(R"(/api/.*)", dispatch);
    server.Put(R"(/api/.*)", dispatch);
    server.Delete(R"(/api/.*)", dispatch);

    if (options.static_dir) {
        if (!server.set_mount_point("/", *options.static_dir))
            throw std::runtime_error("static directory '" + *options.static_dir + "' does not exist");
    } else {
        server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                    {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                    {"Access-Control-Allow-Headers", "Content-Type"}});
        server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    }
}

}  // namespace nmx
