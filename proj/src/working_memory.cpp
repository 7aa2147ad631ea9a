#include "nmx/working_memory.hpp"

#include <algorithm>

namespace nmx {

WorkingMemory::WorkingMemory(std::vector<TemplateDef> templates) : templates_(std::move(templates)) {}

std::pair<Fact, bool> WorkingMemory::assert_fact(const std::string& template_name, SlotValues values) {
    auto tmpl = std::find_if(templates_.begin(), templates_.end(),
                             [&](const TemplateDef& t) { return t.name == template_name; });
    if (tmpl == templates_.end()) throw WorkingMemoryError("unknown template '" + template_name + "'");
    for (const auto& slot : tmpl->slots) {
        if (values.count(slot) == 0)
            throw WorkingMemoryError("fact of template '" + template_name + "' is missing slot '" + slot + "'");
    }
    for (const auto& [slot, value] : values) {
        if (!tmpl->has_slot(slot))
            throw WorkingMemoryError("template '" + template_name + "' has no slot '" + slot + "'");
    }

    Identity identity{template_name, values};
    if (auto it = identities_.find(identity); it != identities_.end()) return {facts_.at(it->second), false};

    Fact fact{next_id_++, template_name, std::move(values), ++clock_};
    identities_.emplace(std::move(identity), fact.id);
    const Fact& stored = facts_.emplace(fact.id, std::move(fact)).first->second;
    for (auto* listener : listeners_) listener->on_assert(stored);
    return {stored, true};
}

bool WorkingMemory::retract_fact(FactId id) {
    auto it = facts_.find(id);
    if (it == facts_.end()) return false;
    Fact fact = std::move(it->second);
    facts_.erase(it);
    identities_.erase(Identity{fact.template_name, fact.slots});
    for (auto* listener : listeners_) listener->on_retract(fact);
    return true;
}

std::vector<Fact> WorkingMemory::snapshot() const {
    std::vector<Fact> out;
    out.reserve(facts_.size());
    // ids and timestamps are assigned together, so id order is timestamp order.
    for (const auto& [id, fact] : facts_) out.push_back(fact);
    return out;
}

const Fact* WorkingMemory::find(FactId id) const {
    auto it = facts_.find(id);
    return it == facts_.end() ? nullptr : &it->second;
}

void WorkingMemory::add_listener(WorkingMemoryListener* listener) {
    if (std::find(listeners_.begin(), listeners_.end(), listener) == listeners_.end())
        listeners_.push_back(listener);
}

void WorkingMemory::remove_listener(WorkingMemoryListener* listener) {
    listeners_.erase(std::remove(listeners_.begin(), listeners_.end(), listener), listeners_.end());
}

}  // namespace nmx
