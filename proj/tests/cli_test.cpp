#include "doctest.h"

#include <sstream>

#include "json.hpp"
#include "nmx/cli.hpp"
#include "support.hpp"

using namespace nmx;
using namespace nmx::testing;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args, const std::string& input = {}) {
    std::istringstream in(input);
    std::ostringstream out;
    std::ostringstream err;
    int code = cli_main(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(NMX_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("validate") {
    auto bundled = run({"validate", std::string(NMX_TEST_DATA) + "/../../kb/neuro.kb"});
    CHECK(bundled.code == kExitOk);
    CHECK(bundled.out.empty());
    CHECK(bundled.err.empty());

    auto missing_question = run({"validate", data("missing_question.kb")});
    CHECK(missing_question.code == kExitValidation);
    CHECK(missing_question.err.find("E101") != std::string::npos);

    // Warnings alone still exit 0 and are reported.
    auto listings = run({"validate", data("published_listings.kb")});
    CHECK(listings.code == kExitOk);
    CHECK(listings.err.find("W001") != std::string::npos);

    CHECK(run({"validate", data("does-not-exist.kb")}).code == kExitIo);
    CHECK(run({"validate", data("ms.json")}).code == kExitValidation);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"validate"}).code == kExitUsage);
    CHECK(run({"match"}).code == kExitUsage);
    CHECK(run({"match", "--facts", data("ms.json"), "--engine", "fast"}).code == kExitUsage);
    CHECK(run({"serve", "--port", "70000"}).code == kExitUsage);
    CHECK(run({"bench", "--facts", "many"}).code == kExitUsage);
    CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("match: both engines print identical output") {
    for (const auto& file : {"ms.json", "cp_md.json"}) {
        auto rete = run({"match", "--facts", data(file), "--engine", "rete"});
        auto naive = run({"match", "--facts", data(file), "--engine", "naive"});
        CHECK(rete.code == kExitOk);
        CHECK(naive.code == kExitOk);
        CHECK(rete.out == naive.out);
        CHECK(run({"match", "--facts", data(file)}).out == rete.out);
    }
    auto ms = json::parse(run({"match", "--facts", data("ms.json")}).out);
    CHECK(ms == json::parse(R"([{"rule":"multiple-sclerosis","fact_ids":[1,2,3,4]}])"));
    auto cp_md = json::parse(run({"match", "--facts", data("cp_md.json")}).out);
    REQUIRE(cp_md.size() == 2);
    CHECK(cp_md[0].at("rule") == "muscular-dystrophy");
    CHECK(cp_md[1].at("rule") == "Cerebral-Palsy");
}

TEST_CASE("match: bad inputs") {
    CHECK(run({"match", "--facts", data("nope.json")}).code == kExitIo);
    CHECK(run({"match", "--facts", data("missing_question.kb")}).code == kExitValidation);
    CHECK(run({"match", "--kb", data("missing_question.kb"), "--facts", data("ms.json")}).code == kExitValidation);
}

TEST_CASE("bench prints counters") {
    auto r = run({"bench", "--facts", "500", "--seed", "3"});
    REQUIRE(r.code == kExitOk);
    auto report = json::parse(r.out);
    for (const auto& key : {"alpha_evals", "join_attempts", "tokens_created", "activations_created", "wall_time_ms"})
        CHECK(report.contains(key));
    CHECK(report.at("alpha_evals").get<std::uint64_t>() > 0);
    // Same seed, same counters.
    auto again = json::parse(run({"bench", "--facts", "500", "--seed", "3"}).out);
    again.erase("wall_time_ms");
    report.erase("wall_time_ms");
    CHECK(again == report);
}

TEST_CASE("diagnose over scripted input") {
    auto cp = run({"diagnose"}, "no\nyes\ny\nmaybe\nyes\n");
    CHECK(cp.code == kExitOk);
    CHECK(cp.out.find("Diagnosis: The patient is suffering from Cerebral Palsy") != std::string::npos);
    CHECK(cp.out.find("Please answer yes or no.") != std::string::npos);
    CHECK(cp.out.find("Recommended tests:") != std::string::npos);

    auto none = run({"diagnose"}, "n\nn\nn\nn\nn\n");
    CHECK(none.code == kExitOk);
    CHECK(none.out.find("No diagnosis") != std::string::npos);

    CHECK(run({"diagnose"}, "no\n").code == kExitIo);
}
