#pragma once

#include <set>
#include <string>
#include <vector>

#include "nmx/agenda.hpp"
#include "nmx/knowledge_base.hpp"
#include "nmx/working_memory.hpp"

namespace nmx {

struct Match {
    std::string rule;
    std::vector<FactId> fact_ids;

    auto operator<=>(const Match&) const = default;
};

using MatchSet = std::set<Match>;

/// Brute-force matcher: for every rule, tries every assignment of live facts
/// to its patterns and keeps those satisfying all constant and
/// variable-equality tests. Keeps no state between calls.
MatchSet naive_match(const KnowledgeBase& kb, const std::vector<Fact>& facts);
MatchSet naive_match(const KnowledgeBase& kb, const WorkingMemory& wm);

/// The matches as activations in conflict-resolution order.
std::vector<Activation> order_matches(const KnowledgeBase& kb, const WorkingMemory& wm, const MatchSet& matches);

MatchSet to_match_set(const std::vector<Activation>& activations);

}  // namespace nmx
