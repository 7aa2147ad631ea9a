#include "doctest.h"

#include <set>

#include "nmx/working_memory.hpp"
#include "support.hpp"

using namespace nmx;
using namespace nmx::testing;

namespace {

struct Event {
    bool assert_event;
    Fact fact;
};

class Recorder : public WorkingMemoryListener {
public:
    void on_assert(const Fact& fact) override { events.push_back({true, fact}); }
    void on_retract(const Fact& fact) override { events.push_back({false, fact}); }
    std::vector<Event> events;
};

WorkingMemory answer_memory() { return WorkingMemory(load_bundled()); }

}  // namespace

TEST_CASE("assert_fact: first assert gets id 1 and timestamp 1") {
    auto wm = answer_memory();
    auto [fact, is_new] = wm.assert_fact("answer", answer_slots("gait", "yes"));
    CHECK(is_new);
    CHECK(fact.id == 1);
    CHECK(fact.timestamp == 1);
    CHECK(wm.size() == 1);
}

TEST_CASE("assert_fact: duplicate asserts are idempotent") {
    auto wm = answer_memory();
    Recorder recorder;
    wm.add_listener(&recorder);
    auto first = wm.assert_fact("answer", answer_slots("gait", "yes"));
    auto again = wm.assert_fact("answer", answer_slots("gait", "yes"));
    CHECK_FALSE(again.second);
    CHECK(again.first == first.first);
    CHECK(wm.size() == 1);
    CHECK(wm.clock() == 1);
    CHECK(recorder.events.size() == 1);
    wm.remove_listener(&recorder);
}

TEST_CASE("assert_fact: the four Cerebral-Palsy answers get ids 1..4") {
    auto wm = answer_memory();
    FactId expected = 1;
    for (const auto& [ident, text] : kCanonicalVectors.at("Cerebral-Palsy")) {
        CHECK(wm.assert_fact("answer", answer_slots(ident, text)).first.id == expected++);
    }
    CHECK(wm.size() == 4);
}

TEST_CASE("assert_fact: schema errors") {
    auto wm = answer_memory();
    CHECK_THROWS_AS(wm.assert_fact("symptom", answer_slots("gait", "yes")), WorkingMemoryError);
    CHECK_THROWS_AS(wm.assert_fact("answer", {{"ident", Symbol{"gait"}}}), WorkingMemoryError);
    auto extra = answer_slots("gait", "yes");
    extra.emplace("colour", Symbol{"red"});
    CHECK_THROWS_AS(wm.assert_fact("answer", extra), WorkingMemoryError);
    CHECK(wm.empty());
    CHECK(wm.clock() == 0);
}

TEST_CASE("retract_fact") {
    auto wm = answer_memory();
    CHECK_FALSE(wm.retract_fact(999));
    auto id = wm.assert_fact("answer", answer_slots("gait", "yes")).first.id;
    CHECK(wm.retract_fact(id));
    CHECK(wm.empty());
    CHECK_FALSE(wm.retract_fact(id));
}

TEST_CASE("retract then re-assert yields a fresh id") {
    auto wm = answer_memory();
    auto first = wm.assert_fact("answer", answer_slots("gait", "yes")).first;
    wm.retract_fact(first.id);
    auto [second, is_new] = wm.assert_fact("answer", answer_slots("gait", "yes"));
    CHECK(is_new);
    CHECK(second.id > first.id);
    CHECK(second.timestamp > first.timestamp);
    CHECK(wm.size() == 1);
}

TEST_CASE("snapshot") {
    auto wm = answer_memory();
    CHECK(wm.snapshot().empty());
    for (const auto& ident : {"age", "gait", "vision", "balance"}) wm.assert_fact("answer", answer_slots(ident, "yes"));
    wm.retract_fact(2);
    auto snap = wm.snapshot();
    REQUIRE(snap.size() == 3);
    CHECK(snap[0].id == 1);
    CHECK(snap[1].id == 3);
    CHECK(snap[2].id == 4);
    for (std::size_t i = 1; i < snap.size(); ++i) CHECK(snap[i - 1].timestamp < snap[i].timestamp);
    snap.clear();
    CHECK(wm.size() == 3);
}

TEST_CASE("property: random assert/retract interleavings") {
    KbGenerator gen(99);
    auto kb = gen.kb();
    for (int trial = 0; trial < 200; ++trial) {
        WorkingMemory wm(kb);
        Recorder recorder;
        wm.add_listener(&recorder);
        FactId last_id = 0;
        for (int step = 0; step < 30; ++step) {
            auto live = wm.snapshot();
            if (!live.empty() && gen.coin(0.35)) {
                auto before = wm.snapshot();
                const Fact victim = live[gen.uniform(0, live.size() - 1)];
                REQUIRE(wm.retract_fact(victim.id));
                // Re-asserting and retracting again restores the live set.
                auto [back, is_new] = wm.assert_fact(victim.template_name, victim.slots);
                CHECK(is_new);
                CHECK(back.id > last_id);
                last_id = back.id;
                wm.retract_fact(back.id);
                auto after = wm.snapshot();
                CHECK(after.size() + 1 == before.size());
            } else {
                auto [name, values] = gen.fact(kb);
                auto [fact, is_new] = wm.assert_fact(name, values);
                if (is_new) {
                    CHECK(fact.id > last_id);
                    last_id = fact.id;
                }
            }
            // Live facts stay pairwise distinct.
            std::set<std::pair<std::string, SlotValues>> seen;
            for (const auto& f : wm.snapshot()) CHECK(seen.emplace(f.template_name, f.slots).second);
        }

        // Replaying the event stream against an empty memory rebuilds the
        // same live set, ids aside.
        WorkingMemory replay(kb);
        std::map<FactId, FactId> ids;
        for (const auto& event : recorder.events) {
            if (event.assert_event) {
                ids[event.fact.id] = replay.assert_fact(event.fact.template_name, event.fact.slots).first.id;
            } else {
                CHECK(replay.retract_fact(ids.at(event.fact.id)));
            }
        }
        auto expected = wm.snapshot();
        auto actual = replay.snapshot();
        REQUIRE(expected.size() == actual.size());
        for (std::size_t i = 0; i < expected.size(); ++i) {
            CHECK(expected[i].template_name == actual[i].template_name);
            CHECK(expected[i].slots == actual[i].slots);
        }
        wm.remove_listener(&recorder);
    }
}
