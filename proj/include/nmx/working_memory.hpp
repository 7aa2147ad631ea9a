#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nmx/knowledge_base.hpp"

namespace nmx {

using FactId = std::uint64_t;
using SlotValues = std::map<std::string, Atom>;

struct Fact {
    FactId id = 0;
    std::string template_name;
    SlotValues slots;
    /// Global recency counter at assert time.
    std::uint64_t timestamp = 0;

    const Atom& slot(const std::string& name) const { return slots.at(name); }

    friend bool operator==(const Fact&, const Fact&) = default;
};

class WorkingMemoryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Observer of fact changes. Listeners are not owned by the memory and must
/// remove themselves before they are destroyed.
class WorkingMemoryListener {
public:
    virtual ~WorkingMemoryListener() = default;
    virtual void on_assert(const Fact& fact) = 0;
    virtual void on_retract(const Fact& fact) = 0;
};

/// Live fact store. Asserting a fact identical to a live one is a no-op;
/// ids and timestamps only grow, so a retracted id never comes back.
class WorkingMemory {
public:
    explicit WorkingMemory(std::vector<TemplateDef> templates);
    explicit WorkingMemory(const KnowledgeBase& kb) : WorkingMemory(kb.templates) {}

    WorkingMemory(const WorkingMemory&) = delete;
    WorkingMemory& operator=(const WorkingMemory&) = delete;

    /// Returns the live fact and whether it was newly created. Throws
    /// WorkingMemoryError for an unknown template or a missing/extra slot.
    std::pair<Fact, bool> assert_fact(const std::string& template_name, SlotValues values);

    /// True if the fact was live and is now gone.
    bool retract_fact(FactId id);

    /// Live facts in timestamp order.
    std::vector<Fact> snapshot() const;

    const Fact* find(FactId id) const;
    std::size_t size() const { return facts_.size(); }
    bool empty() const { return facts_.empty(); }
    std::uint64_t clock() const { return clock_; }
    const std::vector<TemplateDef>& templates() const { return templates_; }

    void add_listener(WorkingMemoryListener* listener);
    void remove_listener(WorkingMemoryListener* listener);

private:
    using Identity = std::pair<std::string, SlotValues>;

    std::vector<TemplateDef> templates_;
    std::map<FactId, Fact> facts_;
    std::map<Identity, FactId> identities_;
    std::vector<WorkingMemoryListener*> listeners_;
    FactId next_id_ = 1;
    std::uint64_t clock_ = 0;
};

}  // namespace nmx
