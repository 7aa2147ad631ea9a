#include "nmx/validator.hpp"

#include <algorithm>
#include <set>

namespace nmx {

std::vector<Diagnostic> validate(const KnowledgeBase& kb) {
    std::vector<Diagnostic> out;
    std::set<std::string> used_idents;

    for (const auto& rule : kb.rules) {
        for (const auto& action : rule.actions) {
            if (action.written_verb) {
                out.push_back({"W001", Severity::Warning,
                               "rule '" + rule.name + "': action '" + *action.written_verb +
                                   "' normalized to '" + action.verb + "'",
                               action.loc});
            } else if (!is_recognized_verb(action.verb)) {
                out.push_back({"W002", Severity::Warning,
                               "rule '" + rule.name + "': unrecognized action '" + action.verb + "'",
                               action.loc});
            }
        }
        for (const auto& ident : answer_idents(rule)) {
            used_idents.insert(ident);
            if (kb.find_question(ident) == nullptr) {
                out.push_back({"E101", Severity::Error,
                               "rule '" + rule.name + "' tests ident '" + ident + "' which has no defquestion",
                               rule.loc});
            }
        }
    }

    std::vector<std::vector<Pattern>> pattern_sets;
    for (const auto& rule : kb.rules) {
        auto set = rule.patterns;
        std::sort(set.begin(), set.end());
        pattern_sets.push_back(std::move(set));
    }
    for (std::size_t i = 0; i < kb.rules.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (pattern_sets[i] == pattern_sets[j]) {
                out.push_back({"W003", Severity::Warning,
                               "rule '" + kb.rules[i].name + "' has the same patterns as rule '" +
                                   kb.rules[j].name + "'",
                               kb.rules[i].loc});
                break;
            }
        }
    }

    for (const auto& q : kb.questions) {
        if (used_idents.count(q.ident) == 0)
            out.push_back({"W004", Severity::Warning, "question '" + q.ident + "' is not used by any rule", q.loc});
    }
    return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
    return std::any_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) { return d.is_error(); });
}

std::string format(const Diagnostic& d) {
    return std::to_string(d.loc.line) + ":" + std::to_string(d.loc.column) + ": " + d.code + " " + d.message;
}

}  // namespace nmx
