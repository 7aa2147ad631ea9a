#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nmx/agenda.hpp"
#include "nmx/knowledge_base.hpp"
#include "nmx/working_memory.hpp"

namespace nmx {

struct InstrumentationCounters {
    /// Constant-test node evaluations.
    std::uint64_t alpha_evals = 0;
    /// (token, fact) pairs tested at join nodes.
    std::uint64_t join_attempts = 0;
    /// Partial matches stored in beta memories.
    std::uint64_t tokens_created = 0;
    std::uint64_t activations_created = 0;

    friend bool operator==(const InstrumentationCounters&, const InstrumentationCounters&) = default;
};

struct FiringRecord {
    std::string rule;
    /// The rule's actions with variables replaced by their bound values.
    std::vector<ActionCall> actions;
    std::vector<FactId> fact_ids;
    std::vector<std::string> warnings;
};

struct AgendaDelta {
    std::vector<Activation> added;
    std::vector<Activation> removed;
};

/// Immutable compiled form of a knowledge base: the node graph without any
/// match state. One topology can back any number of networks.
class ReteTopology {
public:
    /// Single-fact constant test `slot == constant`, shared by every pattern
    /// that uses it.
    struct AlphaTest {
        std::string template_name;
        std::string slot;
        Atom constant;
    };

    /// Facts passing a conjunction of alpha tests plus same-fact variable
    /// equalities. One per distinct pattern shape.
    struct AlphaMemory {
        std::string template_name;
        std::vector<std::size_t> tests;
        std::vector<std::pair<std::string, std::string>> equal_slots;
        /// Beta nodes fed by this memory, descendants before ancestors.
        std::vector<std::size_t> successors;
        /// Beta nodes whose tokens can contain a fact from this memory.
        std::vector<std::size_t> affected;
    };

    /// fact[fact_slot] == token[token_index][token_slot]
    struct JoinTest {
        std::size_t token_index;
        std::string token_slot;
        std::string fact_slot;

        auto operator<=>(const JoinTest&) const = default;
    };

    /// A beta node without a parent admits single-fact tokens straight from
    /// its alpha memory; every other node is a join.
    struct BetaNode {
        std::optional<std::size_t> parent;
        std::size_t alpha_memory;
        std::vector<JoinTest> tests;
        std::vector<std::size_t> children;
        std::vector<std::size_t> productions;
    };

    struct Production {
        std::size_t rule_index;
        std::size_t beta_node;
        /// variable -> (pattern index, slot) of its first occurrence
        std::map<std::string, std::pair<std::size_t, std::string>> bindings;
    };

    explicit ReteTopology(KnowledgeBase kb);

    const KnowledgeBase& kb() const { return kb_; }
    const std::vector<AlphaTest>& alpha_tests() const { return alpha_tests_; }
    const std::vector<AlphaMemory>& alpha_memories() const { return alpha_memories_; }
    const std::vector<BetaNode>& beta_nodes() const { return beta_nodes_; }
    const std::vector<Production>& productions() const { return productions_; }

    std::size_t join_count() const;
    /// Alpha test ids on a template, in creation order.
    const std::vector<std::size_t>& tests_for(const std::string& template_name) const;
    const std::vector<std::size_t>& memories_for(const std::string& template_name) const;

private:
    std::size_t intern_test(const std::string& template_name, const std::string& slot, const Atom& constant);
    std::size_t intern_memory(const std::string& template_name, std::vector<std::size_t> tests,
                              std::vector<std::pair<std::string, std::string>> equal_slots);
    std::size_t intern_node(std::optional<std::size_t> parent, std::size_t memory, std::vector<JoinTest> tests);
    void compile_rule(std::size_t rule_index);
    void collect_affected();

    KnowledgeBase kb_;
    std::vector<AlphaTest> alpha_tests_;
    std::vector<AlphaMemory> alpha_memories_;
    std::vector<BetaNode> beta_nodes_;
    std::vector<Production> productions_;
    std::map<std::string, std::vector<std::size_t>> tests_by_template_;
    std::map<std::string, std::vector<std::size_t>> memories_by_template_;
};

std::shared_ptr<const ReteTopology> compile(const KnowledgeBase& kb);

/// Match state over a topology: alpha and beta memories, the agenda, and
/// the refraction set. Attach it to a WorkingMemory to follow its changes,
/// or drive it directly with propagate_assert/propagate_retract.
class ReteNetwork : public WorkingMemoryListener {
public:
    explicit ReteNetwork(std::shared_ptr<const ReteTopology> topology);
    explicit ReteNetwork(const KnowledgeBase& kb) : ReteNetwork(compile(kb)) {}
    ~ReteNetwork() override;

    ReteNetwork(const ReteNetwork&) = delete;
    ReteNetwork& operator=(const ReteNetwork&) = delete;

    /// Subscribes to `wm` and propagates the facts it already holds.
    void attach(WorkingMemory& wm);
    void detach();

    AgendaDelta propagate_assert(const Fact& fact);
    AgendaDelta propagate_retract(const Fact& fact);

    void on_assert(const Fact& fact) override { propagate_assert(fact); }
    void on_retract(const Fact& fact) override { propagate_retract(fact); }

    /// Pending activations in firing order.
    std::vector<Activation> agenda() const;
    bool agenda_empty() const { return agenda_.empty(); }

    /// Fires activations in conflict-resolution order until the agenda is
    /// empty or `max_firings` have fired. A fired (rule, facts) pair never
    /// fires again.
    std::vector<FiringRecord> run(std::optional<std::size_t> max_firings = std::nullopt);

    const InstrumentationCounters& counters() const { return counters_; }
    const ReteTopology& topology() const { return *topology_; }

    /// Tokens currently stored at a beta node.
    std::size_t token_count(std::size_t beta_node) const { return tokens_.at(beta_node).size(); }

private:
    using FactRef = std::shared_ptr<const Fact>;
    using Token = std::vector<FactRef>;
    using ActivationKey = std::pair<std::size_t, std::vector<FactId>>;

    void right_activate(std::size_t node, const FactRef& fact, AgendaDelta& delta);
    void left_activate(std::size_t node, Token token, AgendaDelta& delta);
    bool join_passes(const ReteTopology::BetaNode& node, const Token& token, const Fact& fact) const;
    FiringRecord fire(const Activation& act);

    std::shared_ptr<const ReteTopology> topology_;
    std::vector<std::vector<FactRef>> alpha_items_;
    std::vector<std::vector<Token>> tokens_;
    std::set<Activation, ActivationOrder> agenda_;
    std::map<ActivationKey, Token> agenda_tokens_;
    std::set<ActivationKey> fired_;
    InstrumentationCounters counters_;
    WorkingMemory* wm_ = nullptr;
};

}  // namespace nmx
