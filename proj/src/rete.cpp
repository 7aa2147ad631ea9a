#include "nmx/rete.hpp"

#include <algorithm>

namespace nmx {

namespace {

const std::vector<std::size_t> kNone;

bool contains_fact(const std::vector<FactId>& ids, FactId id) {
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

bool slot_equals(const Fact& fact, const std::string& slot, const Atom& value) {
    auto it = fact.slots.find(slot);
    return it != fact.slots.end() && it->second == value;
}

}  // namespace

// ---------------------------------------------------------------------------
// Topology

ReteTopology::ReteTopology(KnowledgeBase kb) : kb_(std::move(kb)) {
    for (std::size_t i = 0; i < kb_.rules.size(); ++i) compile_rule(i);
    collect_affected();
}

std::size_t ReteTopology::join_count() const {
    return static_cast<std::size_t>(
        std::count_if(beta_nodes_.begin(), beta_nodes_.end(), [](const BetaNode& n) { return n.parent.has_value(); }));
}

const std::vector<std::size_t>& ReteTopology::tests_for(const std::string& template_name) const {
    auto it = tests_by_template_.find(template_name);
    return it == tests_by_template_.end() ? kNone : it->second;
}

const std::vector<std::size_t>& ReteTopology::memories_for(const std::string& template_name) const {
    auto it = memories_by_template_.find(template_name);
    return it == memories_by_template_.end() ? kNone : it->second;
}

std::size_t ReteTopology::intern_test(const std::string& template_name, const std::string& slot,
                                      const Atom& constant) {
    for (std::size_t id : tests_for(template_name)) {
        const AlphaTest& t = alpha_tests_[id];
        if (t.slot == slot && t.constant == constant) return id;
    }
    alpha_tests_.push_back({template_name, slot, constant});
    tests_by_template_[template_name].push_back(alpha_tests_.size() - 1);
    return alpha_tests_.size() - 1;
}

std::size_t ReteTopology::intern_memory(const std::string& template_name, std::vector<std::size_t> tests,
                                        std::vector<std::pair<std::string, std::string>> equal_slots) {
    std::sort(tests.begin(), tests.end());
    tests.erase(std::unique(tests.begin(), tests.end()), tests.end());
    std::sort(equal_slots.begin(), equal_slots.end());
    for (std::size_t id : memories_for(template_name)) {
        const AlphaMemory& m = alpha_memories_[id];
        if (m.tests == tests && m.equal_slots == equal_slots) return id;
    }
    alpha_memories_.push_back({template_name, std::move(tests), std::move(equal_slots), {}, {}});
    memories_by_template_[template_name].push_back(alpha_memories_.size() - 1);
    return alpha_memories_.size() - 1;
}

std::size_t ReteTopology::intern_node(std::optional<std::size_t> parent, std::size_t memory,
                                      std::vector<JoinTest> tests) {
    std::sort(tests.begin(), tests.end());
    for (std::size_t id = 0; id < beta_nodes_.size(); ++id) {
        const BetaNode& n = beta_nodes_[id];
        if (n.parent == parent && n.alpha_memory == memory && n.tests == tests) return id;
    }
    std::size_t id = beta_nodes_.size();
    beta_nodes_.push_back({parent, memory, std::move(tests), {}, {}});
    if (parent) beta_nodes_[*parent].children.push_back(id);
    // A new node is never an ancestor of an older one, so prepending keeps
    // descendants ahead of ancestors. Right activations in that order cannot
    // build the same token twice when one fact enters several patterns.
    auto& successors = alpha_memories_[memory].successors;
    successors.insert(successors.begin(), id);
    return id;
}

void ReteTopology::compile_rule(std::size_t rule_index) {
    const RuleDef& rule = kb_.rules[rule_index];
    std::map<std::string, std::pair<std::size_t, std::string>> bindings;
    std::optional<std::size_t> parent;

    for (std::size_t k = 0; k < rule.patterns.size(); ++k) {
        const Pattern& pattern = rule.patterns[k];
        std::vector<std::size_t> tests;
        std::vector<std::pair<std::string, std::string>> equal_slots;
        std::vector<JoinTest> joins;
        std::map<std::string, std::string> first_slot;

        for (const auto& test : pattern.tests) {
            if (const auto* var = std::get_if<Variable>(&test.test)) {
                if (auto b = bindings.find(var->name); b != bindings.end()) {
                    joins.push_back({b->second.first, b->second.second, test.slot});
                } else if (auto l = first_slot.find(var->name); l != first_slot.end()) {
                    equal_slots.emplace_back(std::min(l->second, test.slot), std::max(l->second, test.slot));
                } else {
                    first_slot.emplace(var->name, test.slot);
                }
            } else {
                tests.push_back(intern_test(pattern.template_name, test.slot, *as_atom(test.test)));
            }
        }

        std::size_t memory = intern_memory(pattern.template_name, std::move(tests), std::move(equal_slots));
        parent = intern_node(parent, memory, std::move(joins));
        for (auto& [var, slot] : first_slot) bindings.emplace(var, std::make_pair(k, slot));
    }

    productions_.push_back({rule_index, *parent, std::move(bindings)});
    beta_nodes_[*parent].productions.push_back(productions_.size() - 1);
}

void ReteTopology::collect_affected() {
    for (auto& memory : alpha_memories_) {
        std::vector<char> seen(beta_nodes_.size(), 0);
        std::vector<std::size_t> stack(memory.successors.begin(), memory.successors.end());
        while (!stack.empty()) {
            std::size_t id = stack.back();
            stack.pop_back();
            if (seen[id]) continue;
            seen[id] = 1;
            for (std::size_t child : beta_nodes_[id].children) stack.push_back(child);
        }
        for (std::size_t id = 0; id < seen.size(); ++id)
            if (seen[id]) memory.affected.push_back(id);
    }
}

std::shared_ptr<const ReteTopology> compile(const KnowledgeBase& kb) {
    return std::make_shared<const ReteTopology>(kb);
}

// ---------------------------------------------------------------------------
// Network

ReteNetwork::ReteNetwork(std::shared_ptr<const ReteTopology> topology)
    : topology_(std::move(topology)),
      alpha_items_(topology_->alpha_memories().size()),
      tokens_(topology_->beta_nodes().size()) {}

ReteNetwork::~ReteNetwork() { detach(); }

void ReteNetwork::attach(WorkingMemory& wm) {
    detach();
    wm_ = &wm;
    wm.add_listener(this);
    for (const auto& fact : wm.snapshot()) propagate_assert(fact);
}

void ReteNetwork::detach() {
    if (wm_ != nullptr) wm_->remove_listener(this);
    wm_ = nullptr;
}

AgendaDelta ReteNetwork::propagate_assert(const Fact& fact) {
    AgendaDelta delta;
    const auto& tests = topology_->alpha_tests();
    const auto& test_ids = topology_->tests_for(fact.template_name);
    const auto& memories = topology_->memories_for(fact.template_name);
    if (memories.empty()) return delta;

    std::map<std::size_t, bool> passed;
    for (std::size_t id : test_ids) {
        ++counters_.alpha_evals;
        passed[id] = slot_equals(fact, tests[id].slot, tests[id].constant);
    }

    auto ref = std::make_shared<const Fact>(fact);
    for (std::size_t m : memories) {
        const auto& memory = topology_->alpha_memories()[m];
        bool ok = std::all_of(memory.tests.begin(), memory.tests.end(), [&](std::size_t id) { return passed[id]; });
        ok = ok && std::all_of(memory.equal_slots.begin(), memory.equal_slots.end(), [&](const auto& eq) {
                 auto a = fact.slots.find(eq.first);
                 auto b = fact.slots.find(eq.second);
                 return a != fact.slots.end() && b != fact.slots.end() && a->second == b->second;
             });
        if (!ok) continue;
        alpha_items_[m].push_back(ref);
        for (std::size_t node : memory.successors) right_activate(node, ref, delta);
    }
    return delta;
}

AgendaDelta ReteNetwork::propagate_retract(const Fact& fact) {
    AgendaDelta delta;
    const FactId id = fact.id;
    std::set<std::size_t> affected;
    for (std::size_t m : topology_->memories_for(fact.template_name)) {
        auto& items = alpha_items_[m];
        auto it = std::find_if(items.begin(), items.end(), [&](const FactRef& f) { return f->id == id; });
        if (it == items.end()) continue;
        items.erase(it);
        const auto& nodes = topology_->alpha_memories()[m].affected;
        affected.insert(nodes.begin(), nodes.end());
    }
    if (affected.empty()) return delta;

    for (std::size_t node : affected) {
        std::erase_if(tokens_[node], [&](const Token& token) {
            return std::any_of(token.begin(), token.end(), [&](const FactRef& f) { return f->id == id; });
        });
    }
    for (auto it = agenda_.begin(); it != agenda_.end();) {
        if (contains_fact(it->fact_ids, id)) {
            agenda_tokens_.erase({it->rule_index, it->fact_ids});
            delta.removed.push_back(*it);
            it = agenda_.erase(it);
        } else {
            ++it;
        }
    }
    std::erase_if(fired_, [&](const ActivationKey& key) { return contains_fact(key.second, id); });
    return delta;
}

void ReteNetwork::right_activate(std::size_t node, const FactRef& fact, AgendaDelta& delta) {
    const auto& n = topology_->beta_nodes()[node];
    if (!n.parent) {
        left_activate(node, Token{fact}, delta);
        return;
    }
    const auto& parent_tokens = tokens_[*n.parent];
    for (std::size_t i = 0; i < parent_tokens.size(); ++i) {
        ++counters_.join_attempts;
        if (!join_passes(n, parent_tokens[i], *fact)) continue;
        Token extended = parent_tokens[i];
        extended.push_back(fact);
        left_activate(node, std::move(extended), delta);
    }
}

void ReteNetwork::left_activate(std::size_t node, Token token, AgendaDelta& delta) {
    const auto& n = topology_->beta_nodes()[node];
    tokens_[node].push_back(token);
    ++counters_.tokens_created;

    for (std::size_t p : n.productions) {
        const auto& production = topology_->productions()[p];
        std::vector<const Fact*> facts;
        for (const auto& f : token) facts.push_back(f.get());
        Activation act = make_activation(topology_->kb(), production.rule_index, facts);
        ActivationKey key{act.rule_index, act.fact_ids};
        if (fired_.count(key) != 0 || agenda_tokens_.count(key) != 0) continue;
        agenda_tokens_.emplace(key, token);
        agenda_.insert(act);
        ++counters_.activations_created;
        delta.added.push_back(std::move(act));
    }

    for (std::size_t child : n.children) {
        const auto& c = topology_->beta_nodes()[child];
        const auto& items = alpha_items_[c.alpha_memory];
        for (std::size_t i = 0; i < items.size(); ++i) {
            ++counters_.join_attempts;
            if (!join_passes(c, token, *items[i])) continue;
            Token extended = token;
            extended.push_back(items[i]);
            left_activate(child, std::move(extended), delta);
        }
    }
}

bool ReteNetwork::join_passes(const ReteTopology::BetaNode& node, const Token& token, const Fact& fact) const {
    return std::all_of(node.tests.begin(), node.tests.end(), [&](const ReteTopology::JoinTest& t) {
        const Fact& earlier = *token.at(t.token_index);
        auto a = earlier.slots.find(t.token_slot);
        auto b = fact.slots.find(t.fact_slot);
        return a != earlier.slots.end() && b != fact.slots.end() && a->second == b->second;
    });
}

std::vector<Activation> ReteNetwork::agenda() const { return {agenda_.begin(), agenda_.end()}; }

std::vector<FiringRecord> ReteNetwork::run(std::optional<std::size_t> max_firings) {
    std::vector<FiringRecord> records;
    while (!agenda_.empty() && (!max_firings || records.size() < *max_firings)) {
        Activation act = *agenda_.begin();
        agenda_.erase(agenda_.begin());
        fired_.insert({act.rule_index, act.fact_ids});
        records.push_back(fire(act));
        agenda_tokens_.erase({act.rule_index, act.fact_ids});
    }
    return records;
}

FiringRecord ReteNetwork::fire(const Activation& act) {
    const auto& token = agenda_tokens_.at({act.rule_index, act.fact_ids});
    const auto& production = topology_->productions()[act.rule_index];
    const RuleDef& rule = topology_->kb().rules[act.rule_index];

    FiringRecord record{rule.name, {}, act.fact_ids, {}};
    for (const auto& action : rule.actions) {
        ActionCall call = action;
        for (auto& arg : call.args) {
            const auto* var = std::get_if<Variable>(&arg);
            if (var == nullptr) continue;
            const auto& [pattern, slot] = production.bindings.at(var->name);
            arg = to_term(token.at(pattern)->slot(slot));
        }
        if (!is_recognized_verb(call.verb)) record.warnings.push_back("unrecognized action '" + call.verb + "'");
        record.actions.push_back(std::move(call));
    }
    return record;
}

}  // namespace nmx
