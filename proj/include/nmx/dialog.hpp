#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nmx/knowledge_base.hpp"
#include "nmx/rete.hpp"
#include "nmx/working_memory.hpp"

namespace nmx {

enum class Answer { Yes, No };

const char* to_string(Answer answer);
/// Accepts exactly "yes" or "no".
std::optional<Answer> parse_answer(std::string_view token);

struct Recommendation {
    std::string rule;
    std::string diagnosis;
    std::optional<std::string> tests;
    std::optional<std::string> treatments;

    friend bool operator==(const Recommendation&, const Recommendation&) = default;
};

struct TranscriptEntry {
    std::string ident;
    Answer answer;

    friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};

enum class Status { InProgress, Diagnosed, NoMatch };

const char* to_string(Status status);

struct Outcome {
    Status status = Status::InProgress;
    std::vector<Recommendation> diagnoses;
    std::vector<TranscriptEntry> transcript;

    friend bool operator==(const Outcome&, const Outcome&) = default;
};

struct Question {
    std::string ident;
    std::string prompt;

    friend bool operator==(const Question&, const Question&) = default;
};

struct Done {
    friend bool operator==(const Done&, const Done&) = default;
};

using NextStep = std::variant<Question, Done>;

class DialogError : public std::runtime_error {
public:
    enum class Code { OutOfOrder, Repeated, InvalidAnswer, Finished };

    DialogError(Code code, const std::string& message) : std::runtime_error(message), code_(code) {}
    Code code() const { return code_; }

private:
    Code code_;
};

/// What one answer changed.
struct AnswerDelta {
    std::vector<std::string> pruned;
    std::vector<FiringRecord> fired;
    Status status = Status::InProgress;
};

/// One patient interview. Rules are hypotheses tried in declaration order:
/// the session asks the unanswered conditions of the first live hypothesis,
/// drops every hypothesis an answer contradicts, and runs the engine after
/// each answer so a diagnosis is reported as soon as a rule fires.
class Session {
public:
    /// Throws std::invalid_argument if the KB has no rules, has validation
    /// errors, or lacks an `answer` template with `ident` and `text` slots.
    explicit Session(std::shared_ptr<const ReteTopology> topology);

    const std::string& id() const { return id_; }

    /// Throws DialogError(Finished) once the outcome is terminal.
    NextStep next_step() const;

    /// `ident` must be the pending question. Throws DialogError.
    AnswerDelta submit_answer(const std::string& ident, Answer answer);
    AnswerDelta submit_answer(const std::string& ident, std::string_view answer_token);

    Outcome result() const { return outcome_; }
    Status status() const { return outcome_.status; }
    const std::vector<std::string>& candidates() const { return candidates_; }
    const std::map<std::string, Answer>& answered() const { return answered_; }
    const WorkingMemory& working_memory() const { return *wm_; }
    const ReteNetwork& network() const { return *network_; }
    const KnowledgeBase& kb() const { return topology_->kb(); }

private:
    std::optional<Question> pending_question() const;
    std::vector<std::string> unanswered_idents(const RuleDef& rule) const;
    bool contradicts(const RuleDef& rule, const std::string& ident, Answer answer) const;

    std::string id_;
    std::shared_ptr<const ReteTopology> topology_;
    // The network listens to the memory, so it is declared after it.
    std::unique_ptr<WorkingMemory> wm_;
    std::unique_ptr<ReteNetwork> network_;
    std::map<std::string, Answer> answered_;
    std::vector<std::string> candidates_;
    Outcome outcome_;
};

Session start_session(const KnowledgeBase& kb);
Session start_session(std::shared_ptr<const ReteTopology> topology);

/// 128 random bits, base64url without padding.
std::string make_session_id();

Recommendation to_recommendation(const FiringRecord& record);

}  // namespace nmx
