#pragma once

// Shared fixtures and random generators for the unit and acceptance suites.

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "nmx/bundled_kb.hpp"
#include "nmx/knowledge_base.hpp"
#include "nmx/parser.hpp"
#include "nmx/printer.hpp"
#include "nmx/working_memory.hpp"

namespace nmx::testing {

inline const std::vector<std::string> kIdents = {"progress", "age",     "gait",           "spasticity",
                                                 "posture",  "movement", "seizures",      "muscle-wasting",
                                                 "balance",  "sensation", "vision",       "strength"};

inline const std::vector<std::string> kRuleNames = {"Cerebral-Palsy", "Parkinson", "muscular-dystrophy",
                                                    "multiple-sclerosis"};

/// The rule conditions from the published listings: ident -> required text.
inline const std::map<std::string, std::vector<std::pair<std::string, std::string>>> kCanonicalVectors = {
    {"Cerebral-Palsy", {{"progress", "no"}, {"age", "yes"}, {"gait", "yes"}, {"spasticity", "yes"}}},
    {"Parkinson", {{"posture", "yes"}, {"movement", "yes"}, {"seizures", "yes"}, {"gait", "yes"}}},
    {"muscular-dystrophy", {{"muscle-wasting", "yes"}, {"spasticity", "yes"}, {"gait", "yes"}, {"balance", "yes"}}},
    {"multiple-sclerosis", {{"sensation", "yes"}, {"balance", "yes"}, {"vision", "yes"}, {"strength", "yes"}}},
};

inline const std::map<std::string, std::string> kDiagnoses = {
    {"Cerebral-Palsy", "The patient is suffering from Cerebral Palsy"},
    {"Parkinson", "The patient is suffering from Parkinson's disease"},
    {"muscular-dystrophy", "The patient is suffering from Muscular Dystrophy"},
    {"multiple-sclerosis", "The patient is suffering from Multiple Sclerosis."},
};

inline SlotValues answer_slots(const std::string& ident, const std::string& text) {
    return {{kIdentSlot, Symbol{ident}}, {kTextSlot, Symbol{text}}};
}

inline std::string read_data(const std::string& name) { return read_text_file(std::string(NMX_TEST_DATA) + "/" + name); }

/// Random KBs over two small templates, drawing constants from a tiny pool
/// so that matches are common. Variables appear in roughly a third of the
/// slot tests, which exercises join tests and same-fact equalities.
class KbGenerator {
public:
    explicit KbGenerator(std::uint64_t seed) : rng_(seed) {}

    std::mt19937_64& rng() { return rng_; }

    KnowledgeBase kb(std::size_t max_rules = 8, std::size_t max_patterns = 4) {
        KnowledgeBase kb;
        kb.templates = {{"t0", {"a", "b"}, {}}, {"t1", {"a", "b", "c"}, {}}};
        std::size_t rules = uniform(1, max_rules);
        for (std::size_t r = 0; r < rules; ++r) {
            RuleDef rule;
            rule.name = "r" + std::to_string(r);
            rule.auto_focus = coin(0.3);
            rule.salience = static_cast<std::int64_t>(uniform(0, 2));
            std::vector<std::string> vars;
            std::size_t patterns = uniform(1, max_patterns);
            for (std::size_t p = 0; p < patterns; ++p) {
                const TemplateDef& tmpl = kb.templates[uniform(0, 1)];
                Pattern pat{tmpl.name, {}};
                for (const auto& slot : tmpl.slots) {
                    double roll = real();
                    if (roll < 0.3) continue;
                    if (roll < 0.55) {
                        std::string var = "v" + std::to_string(uniform(0, 2));
                        vars.push_back(var);
                        pat.tests.push_back({slot, Variable{var}});
                    } else {
                        pat.tests.push_back({slot, to_term(constant())});
                    }
                }
                rule.patterns.push_back(std::move(pat));
            }
            ActionCall call{kRecommendAction, {std::string("fired ") + rule.name}, std::nullopt, {}};
            if (!vars.empty() && coin(0.5)) call.args = {Variable{vars.front()}};
            rule.actions.push_back(std::move(call));
            kb.rules.push_back(std::move(rule));
        }
        return kb;
    }

    Atom constant() {
        switch (uniform(0, 3)) {
            case 0: return Symbol{"x"};
            case 1: return Symbol{"y"};
            case 2: return std::int64_t{1};
            default: return std::string("s z");
        }
    }

    std::pair<std::string, SlotValues> fact(const KnowledgeBase& kb) {
        const TemplateDef& tmpl = kb.templates[uniform(0, kb.templates.size() - 1)];
        SlotValues values;
        for (const auto& slot : tmpl.slots) values.emplace(slot, constant());
        return {tmpl.name, std::move(values)};
    }

    std::size_t uniform(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }
    bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }
    double real() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }

private:
    std::mt19937_64 rng_;
};

}  // namespace nmx::testing
