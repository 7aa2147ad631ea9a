#include "nmx/printer.hpp"

namespace nmx {

namespace {

std::string print_template(const TemplateDef& t) {
    std::string out = "(deftemplate " + t.name;
    for (const auto& slot : t.slots) out += "\n  (slot " + slot + ")";
    return out + ")\n";
}

std::string print_question(const QuestionDef& q) {
    return "(defquestion " + q.ident + " " + to_source(Atom{q.prompt}) + ")\n";
}

std::string print_pattern(const Pattern& p) {
    std::string out = "  (" + p.template_name;
    for (const auto& test : p.tests) out += "\n    (" + test.slot + " " + to_source(test.test) + ")";
    return out + ")\n";
}

}  // namespace

std::string pretty_print(const RuleDef& rule) {
    std::string out = "(defrule " + rule.name + "\n";
    if (rule.auto_focus || rule.salience != 0) {
        out += "  (declare";
        if (rule.auto_focus) out += " (auto-focus TRUE)";
        if (rule.salience != 0) out += " (salience " + std::to_string(rule.salience) + ")";
        out += ")\n";
    }
    for (const auto& p : rule.patterns) out += print_pattern(p);
    out += "  =>";
    for (const auto& a : rule.actions) {
        out += "\n  (" + a.verb;
        for (const auto& arg : a.args) out += " " + to_source(arg);
        out += ")";
    }
    return out + ")\n";
}

std::string pretty_print(const KnowledgeBase& kb) {
    std::string out;
    auto emit = [&](const std::string& form) {
        if (!out.empty()) out += "\n";
        out += form;
    };
    for (const auto& t : kb.templates) emit(print_template(t));
    for (const auto& q : kb.questions) emit(print_question(q));
    for (const auto& r : kb.rules) emit(pretty_print(r));
    return out;
}

}  // namespace nmx
