#include "nmx/dialog.hpp"

#include <algorithm>
#include <array>
#include <random>

#include "nmx/validator.hpp"

namespace nmx {

const char* to_string(Answer answer) { return answer == Answer::Yes ? "yes" : "no"; }

std::optional<Answer> parse_answer(std::string_view token) {
    if (token == "yes") return Answer::Yes;
    if (token == "no") return Answer::No;
    return std::nullopt;
}

const char* to_string(Status status) {
    switch (status) {
        case Status::InProgress: return "in_progress";
        case Status::Diagnosed: return "diagnosed";
        case Status::NoMatch: return "no_match";
    }
    return "unknown";
}

std::string make_session_id() {
    static constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-_";
    std::random_device rd;
    std::array<unsigned char, 16> bytes{};
    for (std::size_t i = 0; i < bytes.size(); i += 4) {
        auto word = rd();
        for (std::size_t j = 0; j < 4; ++j) bytes[i + j] = static_cast<unsigned char>(word >> (8 * j));
    }
    std::string out;
    std::uint32_t buffer = 0;
    int bits = 0;
    for (unsigned char b : bytes) {
        buffer = (buffer << 8) | b;
        bits += 8;
        while (bits >= 6) {
            bits -= 6;
            out += kAlphabet[(buffer >> bits) & 0x3f];
        }
    }
    if (bits > 0) out += kAlphabet[(buffer << (6 - bits)) & 0x3f];
    return out;
}

Recommendation to_recommendation(const FiringRecord& record) {
    Recommendation rec{record.rule, {}, std::nullopt, std::nullopt};
    for (const auto& action : record.actions) {
        if (action.args.empty()) continue;
        auto atom = as_atom(action.args.front());
        if (!atom) continue;
        std::string text = to_text(*atom);
        if (action.verb == kRecommendAction && rec.diagnosis.empty()) {
            rec.diagnosis = std::move(text);
        } else if (action.verb == kRecommendTests && !rec.tests) {
            rec.tests = std::move(text);
        } else if (action.verb == kRecommendTreatment && !rec.treatments) {
            rec.treatments = std::move(text);
        }
    }
    if (rec.diagnosis.empty()) rec.diagnosis = record.rule;
    return rec;
}

Session::Session(std::shared_ptr<const ReteTopology> topology) : id_(make_session_id()), topology_(std::move(topology)) {
    const KnowledgeBase& kb = topology_->kb();
    if (kb.rules.empty()) throw std::invalid_argument("knowledge base has no rules");
    if (has_errors(validate(kb))) throw std::invalid_argument("knowledge base has validation errors");
    const TemplateDef* answer = kb.find_template(kAnswerTemplate);
    if (answer == nullptr || !answer->has_slot(kIdentSlot) || !answer->has_slot(kTextSlot) ||
        answer->slots.size() != 2)
        throw std::invalid_argument("knowledge base needs (deftemplate answer (slot ident) (slot text))");

    wm_ = std::make_unique<WorkingMemory>(kb);
    network_ = std::make_unique<ReteNetwork>(topology_);
    network_->attach(*wm_);
    for (const auto& rule : kb.rules) candidates_.push_back(rule.name);
}

std::vector<std::string> Session::unanswered_idents(const RuleDef& rule) const {
    std::vector<std::string> out;
    for (auto& ident : answer_idents(rule))
        if (answered_.count(ident) == 0) out.push_back(std::move(ident));
    return out;
}

std::optional<Question> Session::pending_question() const {
    for (const auto& name : candidates_) {
        auto idents = unanswered_idents(*kb().find_rule(name));
        if (idents.empty()) continue;
        const QuestionDef* q = kb().find_question(idents.front());
        return Question{q->ident, q->prompt};
    }
    return std::nullopt;
}

NextStep Session::next_step() const {
    if (outcome_.status != Status::InProgress) throw DialogError(DialogError::Code::Finished, "session is finished");
    if (auto q = pending_question()) return *q;
    return Done{};
}

bool Session::contradicts(const RuleDef& rule, const std::string& ident, Answer answer) const {
    const Atom given = Symbol{to_string(answer)};
    for (const auto& pattern : rule.patterns) {
        if (pattern.template_name != kAnswerTemplate) continue;
        const SlotTest* id_test = pattern.find(kIdentSlot);
        const SlotTest* text_test = pattern.find(kTextSlot);
        if (id_test == nullptr || text_test == nullptr) continue;
        auto id_atom = as_atom(id_test->test);
        auto text_atom = as_atom(text_test->test);
        if (!id_atom || !text_atom) continue;
        if (*id_atom == Atom{Symbol{ident}} && *text_atom != given) return true;
    }
    return false;
}

AnswerDelta Session::submit_answer(const std::string& ident, std::string_view answer_token) {
    if (outcome_.status != Status::InProgress) throw DialogError(DialogError::Code::Finished, "session is finished");
    auto answer = parse_answer(answer_token);
    if (!answer)
        throw DialogError(DialogError::Code::InvalidAnswer,
                          "answer must be \"yes\" or \"no\", got \"" + std::string(answer_token) + "\"");
    return submit_answer(ident, *answer);
}

AnswerDelta Session::submit_answer(const std::string& ident, Answer answer) {
    if (outcome_.status != Status::InProgress) throw DialogError(DialogError::Code::Finished, "session is finished");
    if (answered_.count(ident) != 0)
        throw DialogError(DialogError::Code::Repeated, "question '" + ident + "' was already answered");
    auto pending = pending_question();
    if (!pending || pending->ident != ident)
        throw DialogError(DialogError::Code::OutOfOrder,
                          "question '" + ident + "' is not the pending question" +
                              (pending ? " ('" + pending->ident + "')" : std::string()));

    AnswerDelta delta;
    answered_.emplace(ident, answer);
    outcome_.transcript.push_back({ident, answer});
    wm_->assert_fact(kAnswerTemplate, {{kIdentSlot, Symbol{ident}}, {kTextSlot, Symbol{to_string(answer)}}});

    std::erase_if(candidates_, [&](const std::string& name) {
        bool drop = contradicts(*kb().find_rule(name), ident, answer);
        if (drop) delta.pruned.push_back(name);
        return drop;
    });

    if (!network_->agenda_empty()) {
        delta.fired = network_->run();
        for (const auto& record : delta.fired) outcome_.diagnoses.push_back(to_recommendation(record));
        outcome_.status = Status::Diagnosed;
    } else if (!pending_question()) {
        // Either every hypothesis is gone or none has anything left to ask.
        outcome_.status = Status::NoMatch;
    }
    delta.status = outcome_.status;
    return delta;
}

Session start_session(const KnowledgeBase& kb) { return Session(compile(kb)); }

Session start_session(std::shared_ptr<const ReteTopology> topology) { return Session(std::move(topology)); }

}  // namespace nmx
