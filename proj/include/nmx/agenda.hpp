#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nmx/knowledge_base.hpp"
#include "nmx/working_memory.hpp"

namespace nmx {

/// A rule matched by a tuple of facts (one per pattern, in pattern order).
struct Activation {
    std::string rule;
    std::size_t rule_index = 0;
    std::vector<FactId> fact_ids;
    std::int64_t salience = 0;
    bool auto_focus = false;
    /// Largest timestamp among the matched facts.
    std::uint64_t recency = 0;

    friend bool operator==(const Activation& a, const Activation& b) {
        return a.rule_index == b.rule_index && a.fact_ids == b.fact_ids;
    }
};

/// Conflict resolution: auto-focus rules first, then higher salience, then
/// more recent, then rule name ascending. Remaining ties (same rule, same
/// recency) break on the fact-id tuple, larger ids first, so the order is
/// total.
bool fires_before(const Activation& a, const Activation& b);

struct ActivationOrder {
    bool operator()(const Activation& a, const Activation& b) const { return fires_before(a, b); }
};

/// Builds an activation for rule `rule_index` of `kb` matched by `facts`.
Activation make_activation(const KnowledgeBase& kb, std::size_t rule_index, const std::vector<const Fact*>& facts);

}  // namespace nmx
