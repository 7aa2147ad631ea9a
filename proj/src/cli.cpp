#include "nmx/cli.hpp"

#include <pthread.h>
#include <signal.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <thread>

#include "CLI11.hpp"
#include "httplib.h"

#include "nmx/bundled_kb.hpp"
#include "nmx/dialog.hpp"
#include "nmx/json_io.hpp"
#include "nmx/naive_match.hpp"
#include "nmx/parser.hpp"
#include "nmx/rete.hpp"
#include "nmx/service.hpp"
#include "nmx/session_log.hpp"
#include "nmx/validator.hpp"

namespace nmx {

namespace {

/// Failure that maps straight to an exit code.
struct CliFailure {
    int code;
    std::string message;
};

KnowledgeBase load_kb(const std::optional<std::string>& path) {
    if (!path) return load_bundled();
    try {
        return load_kb_file(*path);
    } catch (const KbFileError& e) {
        throw CliFailure{kExitIo, e.what()};
    } catch (const ParseError& e) {
        throw CliFailure{kExitValidation, *path + ":" + e.what()};
    }
}

/// Loads a KB and rejects it if validation reports errors.
KnowledgeBase load_valid_kb(const std::optional<std::string>& path, std::ostream& err) {
    KnowledgeBase kb = load_kb(path);
    auto diagnostics = validate(kb);
    if (has_errors(diagnostics)) {
        for (const auto& d : diagnostics) err << path.value_or("<bundled>") << ":" << format(d) << "\n";
        throw CliFailure{kExitValidation, "knowledge base has errors"};
    }
    return kb;
}

int run_validate(const std::string& path, std::ostream& err) {
    KnowledgeBase kb = load_kb(path);
    auto diagnostics = validate(kb);
    for (const auto& d : diagnostics) err << path << ":" << format(d) << "\n";
    return has_errors(diagnostics) ? kExitValidation : kExitOk;
}

std::string trim_lower(std::string s) {
    s = normalize_text(s);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

int run_diagnose(const std::optional<std::string>& kb_path, std::istream& in, std::ostream& out, std::ostream& err) {
    Session session = start_session(load_valid_kb(kb_path, err));
    out << "Answer each question with yes or no.\n";
    while (session.status() == Status::InProgress) {
        NextStep step = session.next_step();
        const auto* question = std::get_if<Question>(&step);
        if (question == nullptr) break;
        std::optional<Answer> answer;
        while (!answer) {
            out << question->prompt << " [yes/no] " << std::flush;
            std::string line;
            if (!std::getline(in, line)) throw CliFailure{kExitIo, "input ended before the interview finished"};
            std::string reply = trim_lower(line);
            if (reply == "y" || reply == "yes") answer = Answer::Yes;
            else if (reply == "n" || reply == "no") answer = Answer::No;
            else out << "Please answer yes or no.\n";
        }
        session.submit_answer(question->ident, *answer);
    }

    Outcome outcome = session.result();
    out << "\n";
    if (outcome.status == Status::Diagnosed) {
        for (const auto& rec : outcome.diagnoses) {
            out << "Diagnosis: " << rec.diagnosis << "\n";
            if (rec.tests) out << "Recommended tests: " << *rec.tests << "\n";
            if (rec.treatments) out << "Treatment options: " << *rec.treatments << "\n";
        }
    } else {
        out << "No diagnosis in the knowledge base matches these answers.\n";
    }
    out << "This tool does not replace a consultation with a doctor.\n";
    return kExitOk;
}

int run_match(const std::optional<std::string>& kb_path, const std::string& facts_path, const std::string& engine,
              std::ostream& out, std::ostream& err) {
    KnowledgeBase kb = load_valid_kb(kb_path, err);
    std::string text;
    try {
        text = read_text_file(facts_path);
    } catch (const KbFileError& e) {
        throw CliFailure{kExitIo, e.what()};
    }

    WorkingMemory wm(kb);
    std::optional<ReteNetwork> network;
    if (engine == "rete") network.emplace(kb).attach(wm);
    try {
        auto doc = nlohmann::json::parse(text);
        for (auto& spec : parse_facts(doc)) wm.assert_fact(spec.template_name, std::move(spec.slots));
    } catch (const nlohmann::json::exception& e) {
        throw CliFailure{kExitValidation, facts_path + ": " + e.what()};
    } catch (const std::invalid_argument& e) {
        throw CliFailure{kExitValidation, facts_path + ": " + e.what()};
    }

    ordered_json fired = ordered_json::array();
    auto emit = [&](const std::string& rule, const std::vector<FactId>& ids) {
        fired.push_back({{"rule", rule}, {"fact_ids", ids}});
    };
    if (network) {
        for (const auto& record : network->run()) emit(record.rule, record.fact_ids);
    } else {
        for (const auto& act : order_matches(kb, wm, naive_match(kb, wm))) emit(act.rule, act.fact_ids);
    }
    out << fired.dump(2) << "\n";
    return kExitOk;
}

int run_bench(const std::optional<std::string>& kb_path, std::size_t count, std::uint64_t seed, std::ostream& out,
              std::ostream& err) {
    KnowledgeBase kb = load_valid_kb(kb_path, err);
    if (kb.templates.empty()) throw CliFailure{kExitValidation, "knowledge base declares no templates"};

    std::map<std::pair<std::string, std::string>, std::vector<Atom>> constants;
    for (const auto& rule : kb.rules)
        for (const auto& pattern : rule.patterns)
            for (const auto& test : pattern.tests)
                if (auto atom = as_atom(test.test)) {
                    auto& pool = constants[{pattern.template_name, test.slot}];
                    if (std::find(pool.begin(), pool.end(), *atom) == pool.end()) pool.push_back(*atom);
                }

    std::mt19937_64 rng(seed);
    std::vector<std::pair<std::string, SlotValues>> facts;
    facts.reserve(count);
    std::uniform_int_distribution<std::size_t> pick_template(0, kb.templates.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_noise(0, std::max<std::size_t>(count, 1) - 1);
    std::bernoulli_distribution use_constant(0.8);
    for (std::size_t i = 0; i < count; ++i) {
        const TemplateDef& tmpl = kb.templates[pick_template(rng)];
        SlotValues values;
        for (const auto& slot : tmpl.slots) {
            auto it = constants.find({tmpl.name, slot});
            if (it != constants.end() && use_constant(rng)) {
                std::uniform_int_distribution<std::size_t> pick(0, it->second.size() - 1);
                values.emplace(slot, it->second[pick(rng)]);
            } else {
                values.emplace(slot, Symbol{"v" + std::to_string(pick_noise(rng))});
            }
        }
        facts.emplace_back(tmpl.name, std::move(values));
    }

    WorkingMemory wm(kb);
    ReteNetwork network(kb);
    network.attach(wm);
    auto start = std::chrono::steady_clock::now();
    for (auto& [name, values] : facts) wm.assert_fact(name, std::move(values));
    auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    ordered_json report = to_json(network.counters());
    report["wall_time_ms"] = elapsed;
    out << report.dump() << "\n";
    return kExitOk;
}

int run_serve(const std::optional<std::string>& kb_path, const std::string& host, int port,
              const std::optional<std::string>& static_dir, std::optional<std::string> log_path, std::ostream& out,
              std::ostream& err) {
    std::shared_ptr<const ReteTopology> topology;
    std::string load_error;
    try {
        topology = compile(load_valid_kb(kb_path, err));
    } catch (const CliFailure& e) {
        load_error = e.message;
    } catch (const std::exception& e) {
        load_error = e.what();
    }
    if (!load_error.empty()) err << "knowledge base unavailable: " << load_error << "\n";

    if (!log_path) {
        if (const char* env = std::getenv("NMX_LOG"); env != nullptr && *env != '\0') log_path = env;
    }
    std::unique_ptr<SessionLog> log;
    try {
        log = log_path ? std::make_unique<SessionLog>(std::filesystem::path(*log_path)) : std::make_unique<SessionLog>();
    } catch (const std::runtime_error& e) {
        throw CliFailure{kExitIo, e.what()};
    }

    Service service(topology, *log, Service::Options{}, load_error);
    httplib::Server server;
    try {
        install_routes(server, service, ServerOptions{static_dir});
    } catch (const std::runtime_error& e) {
        throw CliFailure{kExitIo, e.what()};
    }

    // Worker threads inherit this mask, so only the waiter sees the signals.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    int bound = port;
    if (port == 0) {
        bound = server.bind_to_any_port(host);
    } else if (!server.bind_to_port(host, port)) {
        bound = -1;
    }
    if (bound < 0) {
        pthread_sigmask(SIG_UNBLOCK, &signals, nullptr);
        throw CliFailure{kExitIo, "cannot listen on " + host + ":" + std::to_string(port)};
    }
    out << "listening on http://" << host << ":" << bound << std::endl;

    std::atomic<bool> stopping{false};
    std::thread waiter([&] {
        int sig = 0;
        sigwait(&signals, &sig);
        stopping = true;
        server.stop();
    });
    bool ok = server.listen_after_bind();
    if (!stopping) pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
    pthread_sigmask(SIG_UNBLOCK, &signals, nullptr);
    return ok || stopping ? kExitOk : kExitIo;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rule-based expert system shell for neuromuscular disorder diagnosis", "nmx"};
    app.require_subcommand(1);

    std::string validate_path;
    auto* validate_cmd = app.add_subcommand("validate", "Check a knowledge base file");
    validate_cmd->add_option("kb", validate_path, "Knowledge base file")->required();

    std::optional<std::string> kb_path;
    auto* diagnose_cmd = app.add_subcommand("diagnose", "Interactive yes/no diagnosis in the terminal");
    diagnose_cmd->add_option("--kb", kb_path, "Knowledge base file (default: bundled)");

    std::string facts_path;
    std::string engine = "rete";
    auto* match_cmd = app.add_subcommand("match", "Match a JSON fact file and print the rules that fire");
    match_cmd->add_option("--kb", kb_path, "Knowledge base file (default: bundled)");
    match_cmd->add_option("--facts", facts_path, "JSON array of {template, slots}")->required();
    match_cmd->add_option("--engine", engine, "Matcher")->check(CLI::IsMember({"rete", "naive"}));

    std::string host = "0.0.0.0";
    int port = 8080;
    std::optional<std::string> static_dir;
    std::optional<std::string> log_path;
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP session service");
    serve_cmd->add_option("--kb", kb_path, "Knowledge base file (default: bundled)");
    serve_cmd->add_option("--host", host, "Address to bind");
    serve_cmd->add_option("--port", port, "Port (0 picks a free one)")->check(CLI::Range(0, 65535));
    serve_cmd->add_option("--static", static_dir, "Directory served at /");
    serve_cmd->add_option("--log", log_path, "Session log file (default: $NMX_LOG)");

    std::size_t bench_facts = 0;
    std::uint64_t seed = 1;
    auto* bench_cmd = app.add_subcommand("bench", "Assert random facts and report matcher counters");
    bench_cmd->add_option("--kb", kb_path, "Knowledge base file (default: bundled)");
    bench_cmd->add_option("--facts", bench_facts, "Number of facts")->required();
    bench_cmd->add_option("--seed", seed, "Random seed");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*validate_cmd) return run_validate(validate_path, err);
        if (*diagnose_cmd) return run_diagnose(kb_path, in, out, err);
        if (*match_cmd) return run_match(kb_path, facts_path, engine, out, err);
        if (*serve_cmd) return run_serve(kb_path, host, port, static_dir, log_path, out, err);
        if (*bench_cmd) return run_bench(kb_path, bench_facts, seed, out, err);
    } catch (const CliFailure& e) {
        err << "nmx: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        err << "nmx: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitUsage;
}

}  // namespace nmx
