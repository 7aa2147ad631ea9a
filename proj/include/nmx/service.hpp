#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "nmx/dialog.hpp"
#include "nmx/rete.hpp"
#include "nmx/session_log.hpp"

namespace httplib {
class Server;
}

namespace nmx {

/// Live dialog sessions keyed by id, dropped after an idle period.
class SessionStore {
public:
    using Clock = std::function<std::chrono::steady_clock::time_point()>;

    struct Entry {
        explicit Entry(Session s) : session(std::move(s)) {}
        /// Held for the whole of any request on this session.
        std::mutex mutex;
        Session session;
        std::chrono::steady_clock::time_point created;
        std::chrono::steady_clock::time_point last_used;
    };

    explicit SessionStore(std::chrono::steady_clock::duration idle_expiry = std::chrono::minutes(30),
                          Clock clock = std::chrono::steady_clock::now);

    std::shared_ptr<Entry> create(Session session);
    /// Null when the id is unknown or has expired.
    std::shared_ptr<Entry> find(const std::string& id);
    std::size_t size();
    /// Drops every expired session.
    void sweep();

private:
    bool expired(const Entry& entry, std::chrono::steady_clock::time_point now) const;

    std::mutex mutex_;
    std::map<std::string, std::shared_ptr<Entry>> sessions_;
    std::chrono::steady_clock::duration idle_expiry_;
    Clock clock_;
};

struct HttpResponse {
    int status = 200;
    std::string body;
};

/// HTTP-facing session API over a loaded knowledge base:
///
///   POST /api/sessions                  -> 201 {"session_id"}
///   GET  /api/sessions/{id}/next        -> {"kind":"question",...} | {"kind":"done"}
///   POST /api/sessions/{id}/answers     -> {"status","questions_asked"}
///   GET  /api/sessions/{id}/result      -> {"status","transcript","diagnoses"}
///
/// Every successful mutation appends one record to the session log.
class Service {
public:
    struct Options {
        std::chrono::steady_clock::duration idle_expiry = std::chrono::minutes(30);
        SessionStore::Clock clock = std::chrono::steady_clock::now;
    };

    /// `topology` is null when the KB failed to load; session creation then
    /// answers 503 with `load_error`.
    Service(std::shared_ptr<const ReteTopology> topology, SessionLog& log, Options options,
            std::string load_error = {});
    Service(std::shared_ptr<const ReteTopology> topology, SessionLog& log)
        : Service(std::move(topology), log, Options{}) {}

    HttpResponse handle(const std::string& method, const std::string& path, const std::string& body);

    SessionStore& store() { return store_; }

private:
    HttpResponse create_session();
    HttpResponse next(SessionStore::Entry& entry, const std::string& id);
    HttpResponse answer(SessionStore::Entry& entry, const std::string& id, const std::string& body);
    HttpResponse result(SessionStore::Entry& entry);

    std::shared_ptr<const ReteTopology> topology_;
    SessionLog& log_;
    SessionStore store_;
    std::string load_error_;
};

struct ServerOptions {
    /// Directory served at `/`. Without it the API sends permissive CORS
    /// headers so a separately hosted UI can call it.
    std::optional<std::string> static_dir;
};

/// Routes the service's endpoints on an httplib server.
void install_routes(httplib::Server& server, Service& service, const ServerOptions& options);

}  // namespace nmx
