#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace nmx {

/// Position in a KB source file. Lines and columns are 1-based; columns
/// count bytes.
struct Location {
    int line = 1;
    int column = 1;

    auto operator<=>(const Location&) const = default;
};

struct Symbol {
    std::string name;

    auto operator<=>(const Symbol&) const = default;
};

struct Variable {
    std::string name;

    auto operator<=>(const Variable&) const = default;
};

/// A ground value: symbol, string, or integer.
using Atom = std::variant<Symbol, std::string, std::int64_t>;

/// A slot test or action argument: a ground value or a `?variable`.
using Term = std::variant<Symbol, std::string, std::int64_t, Variable>;

std::optional<Atom> as_atom(const Term& term);
Term to_term(const Atom& atom);
bool is_variable(const Term& term);

/// Source-form rendering: symbols bare, strings quoted and escaped,
/// variables with a leading `?`.
std::string to_source(const Atom& atom);
std::string to_source(const Term& term);

/// Plain text of an atom (no quoting). Used for recommendation strings.
std::string to_text(const Atom& atom);

struct TemplateDef {
    std::string name;
    std::vector<std::string> slots;
    Location loc;

    bool has_slot(const std::string& slot) const;
    friend bool operator==(const TemplateDef& a, const TemplateDef& b) {
        return a.name == b.name && a.slots == b.slots;
    }
};

struct QuestionDef {
    std::string ident;
    std::string prompt;
    Location loc;

    friend bool operator==(const QuestionDef& a, const QuestionDef& b) {
        return a.ident == b.ident && a.prompt == b.prompt;
    }
};

struct SlotTest {
    std::string slot;
    Term test;

    auto operator<=>(const SlotTest&) const = default;
};

struct Pattern {
    std::string template_name;
    std::vector<SlotTest> tests;

    const SlotTest* find(const std::string& slot) const;
    auto operator<=>(const Pattern&) const = default;
};

inline constexpr const char* kRecommendAction = "recommend-action";
inline constexpr const char* kRecommendTests = "recommend-tests";
inline constexpr const char* kRecommendTreatment = "recommend-treatment";

bool is_recognized_verb(const std::string& verb);

struct ActionCall {
    std::string verb;
    std::vector<Term> args;
    /// Spelling found in the source when the parser normalized the verb.
    std::optional<std::string> written_verb;
    Location loc;

    friend bool operator==(const ActionCall& a, const ActionCall& b) {
        return a.verb == b.verb && a.args == b.args;
    }
};

struct RuleDef {
    std::string name;
    bool auto_focus = false;
    std::int64_t salience = 0;
    std::vector<Pattern> patterns;
    std::vector<ActionCall> actions;
    Location loc;

    friend bool operator==(const RuleDef& a, const RuleDef& b) {
        return a.name == b.name && a.auto_focus == b.auto_focus &&
               a.salience == b.salience && a.patterns == b.patterns &&
               a.actions == b.actions;
    }
};

/// Parsed rule file. Declaration order of questions and rules is
/// significant: the dialog walks rules as hypotheses in this order.
struct KnowledgeBase {
    std::vector<TemplateDef> templates;
    std::vector<QuestionDef> questions;
    std::vector<RuleDef> rules;

    const TemplateDef* find_template(const std::string& name) const;
    const QuestionDef* find_question(const std::string& ident) const;
    const RuleDef* find_rule(const std::string& name) const;

    bool empty() const { return templates.empty() && questions.empty() && rules.empty(); }

    friend bool operator==(const KnowledgeBase&, const KnowledgeBase&) = default;
};

/// Template and slots the dialog layer reads and writes.
inline constexpr const char* kAnswerTemplate = "answer";
inline constexpr const char* kIdentSlot = "ident";
inline constexpr const char* kTextSlot = "text";

/// Constant `ident` values tested by the rule's `answer` patterns, in
/// pattern order.
std::vector<std::string> answer_idents(const RuleDef& rule);

}  // namespace nmx
