#include "doctest.h"

#include "nmx/printer.hpp"
#include "support.hpp"

using namespace nmx;
using namespace nmx::testing;

TEST_CASE("pretty_print: empty KB prints nothing") { CHECK(pretty_print(KnowledgeBase{}).empty()); }

TEST_CASE("pretty_print: salience is echoed in a declare form") {
    auto kb = parse_source("(deftemplate t (slot a))(defrule r (declare (salience 5)) (t (a x)) => (f))");
    CHECK(pretty_print(kb).find("(declare (salience 5))") != std::string::npos);
}

TEST_CASE("pretty_print: canonical layout") {
    auto kb = parse_source(
        "(deftemplate answer (slot ident) (slot text))"
        "(defquestion gait \"Gait?\")"
        "(defrule r (declare (auto-focus TRUE)) (answer (ident gait) (text yes)) => (recommend-action \"say \\\"hi\\\"\"))");
    CHECK(pretty_print(kb) ==
          "(deftemplate answer\n"
          "  (slot ident)\n"
          "  (slot text))\n"
          "\n"
          "(defquestion gait \"Gait?\")\n"
          "\n"
          "(defrule r\n"
          "  (declare (auto-focus TRUE))\n"
          "  (answer\n"
          "    (ident gait)\n"
          "    (text yes))\n"
          "  =>\n"
          "  (recommend-action \"say \\\"hi\\\"\"))\n");
}

TEST_CASE("pretty_print: bundled and published KBs round-trip") {
    for (const auto& text : {std::string(bundled_kb_text()), read_data("published_listings.kb")}) {
        auto kb = parse_source(text);
        auto printed = pretty_print(kb);
        CHECK(parse_source(printed) == kb);
        // Printing is a fixed point after the first pass.
        CHECK(pretty_print(parse_source(printed)) == printed);
    }
}

TEST_CASE("pretty_print: random KBs round-trip") {
    KbGenerator gen(2024);
    for (int trial = 0; trial < 300; ++trial) {
        auto kb = gen.kb();
        kb.questions.push_back({"q" + std::to_string(trial), "Prompt with \"quotes\" and \\ slash", {}});
        auto printed = pretty_print(kb);
        CAPTURE(printed);
        CHECK(parse_source(printed) == kb);
    }
}
