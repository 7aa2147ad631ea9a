#include "nmx/naive_match.hpp"

#include <algorithm>
#include <map>

namespace nmx {

namespace {

using Bindings = std::map<std::string, Atom>;

bool matches_pattern(const Pattern& pattern, const Fact& fact, Bindings& bindings) {
    if (fact.template_name != pattern.template_name) return false;
    for (const auto& test : pattern.tests) {
        auto slot = fact.slots.find(test.slot);
        if (slot == fact.slots.end()) return false;
        if (const auto* var = std::get_if<Variable>(&test.test)) {
            auto [it, inserted] = bindings.emplace(var->name, slot->second);
            if (!inserted && it->second != slot->second) return false;
        } else if (*as_atom(test.test) != slot->second) {
            return false;
        }
    }
    return true;
}

void search(const RuleDef& rule, const std::vector<Fact>& facts, std::size_t depth, const Bindings& bindings,
            std::vector<FactId>& chosen, MatchSet& out) {
    if (depth == rule.patterns.size()) {
        out.insert({rule.name, chosen});
        return;
    }
    for (const auto& fact : facts) {
        Bindings next = bindings;
        if (!matches_pattern(rule.patterns[depth], fact, next)) continue;
        chosen.push_back(fact.id);
        search(rule, facts, depth + 1, next, chosen, out);
        chosen.pop_back();
    }
}

}  // namespace

MatchSet naive_match(const KnowledgeBase& kb, const std::vector<Fact>& facts) {
    MatchSet out;
    for (const auto& rule : kb.rules) {
        std::vector<FactId> chosen;
        search(rule, facts, 0, {}, chosen, out);
    }
    return out;
}

MatchSet naive_match(const KnowledgeBase& kb, const WorkingMemory& wm) { return naive_match(kb, wm.snapshot()); }

std::vector<Activation> order_matches(const KnowledgeBase& kb, const WorkingMemory& wm, const MatchSet& matches) {
    std::vector<Activation> out;
    for (const auto& match : matches) {
        auto rule = std::find_if(kb.rules.begin(), kb.rules.end(),
                                 [&](const RuleDef& r) { return r.name == match.rule; });
        std::vector<const Fact*> facts;
        for (FactId id : match.fact_ids) facts.push_back(wm.find(id));
        out.push_back(make_activation(kb, static_cast<std::size_t>(rule - kb.rules.begin()), facts));
    }
    std::sort(out.begin(), out.end(), fires_before);
    return out;
}

MatchSet to_match_set(const std::vector<Activation>& activations) {
    MatchSet out;
    for (const auto& act : activations) out.insert({act.rule, act.fact_ids});
    return out;
}

}  // namespace nmx
