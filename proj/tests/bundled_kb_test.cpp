#include "doctest.h"

#include <algorithm>

#include "nmx/validator.hpp"
#include "support.hpp"

using namespace nmx;
using namespace nmx::testing;

TEST_CASE("bundled KB: shape") {
    auto kb = load_bundled();
    CHECK(kb.templates.size() == 1);
    CHECK(kb.questions.size() == 12);
    REQUIRE(kb.rules.size() == 4);
    for (std::size_t i = 0; i < kb.rules.size(); ++i) CHECK(kb.rules[i].name == kRuleNames[i]);
    for (std::size_t i = 0; i < kIdents.size(); ++i) CHECK(kb.questions[i].ident == kIdents[i]);
    REQUIRE(kb.find_template(kAnswerTemplate) != nullptr);
    CHECK(kb.find_template(kAnswerTemplate)->slots == std::vector<std::string>{kIdentSlot, kTextSlot});
    CHECK(validate(kb).empty());
}

TEST_CASE("bundled KB: loading twice gives equal KBs") { CHECK(load_bundled() == load_bundled()); }

TEST_CASE("bundled KB: rule conditions") {
    auto kb = load_bundled();
    for (const auto& [name, vector] : kCanonicalVectors) {
        const RuleDef* rule = kb.find_rule(name);
        REQUIRE(rule != nullptr);
        CHECK(rule->auto_focus);
        REQUIRE(rule->patterns.size() == vector.size());
        for (std::size_t i = 0; i < vector.size(); ++i) {
            const auto& pat = rule->patterns[i];
            CHECK(pat.template_name == kAnswerTemplate);
            REQUIRE(pat.find(kIdentSlot) != nullptr);
            CHECK(pat.find(kIdentSlot)->test == Term{Symbol{vector[i].first}});
            CHECK(pat.find(kTextSlot)->test == Term{Symbol{vector[i].second}});
        }
    }
}

TEST_CASE("bundled KB: recommendation strings") {
    auto kb = load_bundled();
    for (const auto& [name, diagnosis] : kDiagnoses) {
        const RuleDef* rule = kb.find_rule(name);
        REQUIRE(rule != nullptr);
        std::map<std::string, std::string> by_verb;
        for (const auto& action : rule->actions) by_verb[action.verb] = std::get<std::string>(action.args.at(0));
        CHECK(by_verb[kRecommendAction] == diagnosis);
        CHECK_FALSE(by_verb[kRecommendTests].empty());
        CHECK_FALSE(by_verb[kRecommendTreatment].empty());
    }
}

TEST_CASE("bundled KB: shared idents") {
    auto kb = load_bundled();
    auto rules_using = [&](const std::string& ident) {
        return std::count_if(kb.rules.begin(), kb.rules.end(), [&](const RuleDef& r) {
            auto idents = answer_idents(r);
            return std::find(idents.begin(), idents.end(), ident) != idents.end();
        });
    };
    CHECK(rules_using("gait") == 3);
    CHECK(rules_using("spasticity") == 2);
    CHECK(rules_using("balance") == 2);
    for (const auto& ident : {"progress", "age", "posture", "movement", "seizures", "muscle-wasting", "sensation",
                              "vision", "strength"})
        CHECK(rules_using(ident) == 1);
}

TEST_CASE("bundled KB: the seizures prompt mentions tremors") {
    auto kb = load_bundled();
    const QuestionDef* q = kb.find_question("seizures");
    REQUIRE(q != nullptr);
    CHECK(q->prompt.find("tremor") != std::string::npos);
}

TEST_CASE("bundled KB: the text is the file shipped in kb/") {
    CHECK(bundled_kb_text() == read_text_file(NMX_TEST_DATA "/../../kb/neuro.kb"));
}
