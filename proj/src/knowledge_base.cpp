#include "nmx/knowledge_base.hpp"

#include <algorithm>

namespace nmx {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::optional<Atom> as_atom(const Term& term) {
    return std::visit(Overloaded{
                          [](const Variable&) -> std::optional<Atom> { return std::nullopt; },
                          [](const auto& v) -> std::optional<Atom> { return Atom{v}; },
                      },
                      term);
}

Term to_term(const Atom& atom) {
    return std::visit([](const auto& v) -> Term { return v; }, atom);
}

bool is_variable(const Term& term) { return std::holds_alternative<Variable>(term); }

std::string to_source(const Atom& atom) {
    return std::visit(Overloaded{
                          [](const Symbol& s) { return s.name; },
                          [](const std::string& s) { return quote(s); },
                          [](std::int64_t v) { return std::to_string(v); },
                      },
                      atom);
}

std::string to_source(const Term& term) {
    if (const auto* var = std::get_if<Variable>(&term)) return "?" + var->name;
    return to_source(*as_atom(term));
}

std::string to_text(const Atom& atom) {
    return std::visit(Overloaded{
                          [](const Symbol& s) { return s.name; },
                          [](const std::string& s) { return s; },
                          [](std::int64_t v) { return std::to_string(v); },
                      },
                      atom);
}

bool TemplateDef::has_slot(const std::string& slot) const {
    return std::find(slots.begin(), slots.end(), slot) != slots.end();
}

const SlotTest* Pattern::find(const std::string& slot) const {
    auto it = std::find_if(tests.begin(), tests.end(),
                           [&](const SlotTest& t) { return t.slot == slot; });
    return it == tests.end() ? nullptr : &*it;
}

bool is_recognized_verb(const std::string& verb) {
    return verb == kRecommendAction || verb == kRecommendTests || verb == kRecommendTreatment;
}

const TemplateDef* KnowledgeBase::find_template(const std::string& name) const {
    auto it = std::find_if(templates.begin(), templates.end(),
                           [&](const TemplateDef& t) { return t.name == name; });
    return it == templates.end() ? nullptr : &*it;
}

const QuestionDef* KnowledgeBase::find_question(const std::string& ident) const {
    auto it = std::find_if(questions.begin(), questions.end(),
                           [&](const QuestionDef& q) { return q.ident == ident; });
    return it == questions.end() ? nullptr : &*it;
}

const RuleDef* KnowledgeBase::find_rule(const std::string& name) const {
    auto it = std::find_if(rules.begin(), rules.end(),
                           [&](const RuleDef& r) { return r.name == name; });
    return it == rules.end() ? nullptr : &*it;
}

std::vector<std::string> answer_idents(const RuleDef& rule) {
    std::vector<std::string> idents;
    for (const auto& pattern : rule.patterns) {
        if (pattern.template_name != kAnswerTemplate) continue;
        const SlotTest* test = pattern.find(kIdentSlot);
        if (test == nullptr) continue;
        auto atom = as_atom(test->test);
        if (!atom) continue;
        idents.push_back(to_text(*atom));
    }
    return idents;
}

}  // namespace nmx
