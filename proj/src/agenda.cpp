#include "nmx/agenda.hpp"

#include <algorithm>

namespace nmx {

bool fires_before(const Activation& a, const Activation& b) {
    if (a.auto_focus != b.auto_focus) return a.auto_focus;
    if (a.salience != b.salience) return a.salience > b.salience;
    if (a.recency != b.recency) return a.recency > b.recency;
    if (a.rule != b.rule) return a.rule < b.rule;
    if (a.fact_ids != b.fact_ids) return a.fact_ids > b.fact_ids;
    return a.rule_index < b.rule_index;
}

Activation make_activation(const KnowledgeBase& kb, std::size_t rule_index, const std::vector<const Fact*>& facts) {
    const RuleDef& rule = kb.rules.at(rule_index);
    Activation act;
    act.rule = rule.name;
    act.rule_index = rule_index;
    act.salience = rule.salience;
    act.auto_focus = rule.auto_focus;
    for (const Fact* f : facts) {
        act.fact_ids.push_back(f->id);
        act.recency = std::max(act.recency, f->timestamp);
    }
    return act;
}

}  // namespace nmx
