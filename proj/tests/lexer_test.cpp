#include "doctest.h"

#include "nmx/lexer.hpp"

using namespace nmx;

namespace {

std::vector<TokenKind> kinds(const std::vector<Token>& tokens) {
    std::vector<TokenKind> out;
    for (const auto& t : tokens) out.push_back(t.kind);
    return out;
}

}  // namespace

TEST_CASE("tokenize: answer slot test") {
    auto tokens = tokenize("(text no)");
    REQUIRE(kinds(tokens) ==
            std::vector<TokenKind>{TokenKind::Open, TokenKind::Symbol, TokenKind::Symbol, TokenKind::Close});
    CHECK(tokens[1].text == "text");
    CHECK(tokens[2].text == "no");
}

TEST_CASE("tokenize: empty and comment-only input") {
    CHECK(tokenize("").empty());
    CHECK(tokenize("  ; nothing here\n\t; nor here").empty());
}

TEST_CASE("tokenize: string escapes follow the escape table") {
    // Written out before the lexer: source literal -> decoded contents.
    const std::vector<std::pair<std::string, std::string>> table = {
        {R"("a\"b")", "a\"b"},
        {R"("a\\b")", "a\\b"},
        {R"("\\\"")", "\\\""},
        {R"("")", ""},
        {"\"two\nlines\"", "two\nlines"},
        {R"("semi;colon")", "semi;colon"},
    };
    for (const auto& [source, decoded] : table) {
        CAPTURE(source);
        auto tokens = tokenize(source);
        REQUIRE(tokens.size() == 1);
        CHECK(tokens[0].kind == TokenKind::String);
        CHECK(tokens[0].text == decoded);
        CHECK(tokens[0].length == source.size());
    }
}

TEST_CASE("tokenize: every token kind with positions") {
    auto tokens = tokenize("(defrule r\n  (t (a ?x) (b -12)) => (act \"s\"))");
    REQUIRE(tokens.size() == 20);
    CHECK(tokens[0].loc == Location{1, 1});
    CHECK(tokens[1].loc == Location{1, 2});
    CHECK(tokens[2].loc == Location{1, 10});
    CHECK(tokens[3].loc == Location{2, 3});
    const Token& var = tokens[7];
    CHECK(var.kind == TokenKind::Var);
    CHECK(var.text == "x");
    CHECK(var.loc == Location{2, 9});
    const Token& num = tokens[11];
    CHECK(num.kind == TokenKind::Int);
    CHECK(num.value == -12);
    CHECK(tokens[14].kind == TokenKind::Arrow);
    CHECK(tokens[17].kind == TokenKind::String);
}

TEST_CASE("tokenize: symbols are case-sensitive and allow dashes and underscores") {
    auto tokens = tokenize("Cerebral-Palsy muscle_wasting TRUE true");
    REQUIRE(tokens.size() == 4);
    CHECK(tokens[0].text == "Cerebral-Palsy");
    CHECK(tokens[1].text == "muscle_wasting");
    CHECK(tokens[2].text != tokens[3].text);
}

TEST_CASE("tokenize: errors carry line and column") {
    SUBCASE("unterminated string points at the opening quote") {
        try {
            tokenize("(defquestion q\n  \"never closed");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.location() == Location{2, 3});
            CHECK(e.detail() == "unterminated string");
        }
    }
    SUBCASE("illegal character") {
        try {
            tokenize("(a\n  b # c)");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.location() == Location{2, 5});
        }
    }
    SUBCASE("illegal character glued to a symbol") {
        try {
            tokenize("(gait.)");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.location() == Location{1, 6});
        }
    }
    SUBCASE("bad escape") {
        CHECK_THROWS_AS(tokenize(R"("a\qb")"), ParseError);
    }
    SUBCASE("empty variable name") {
        CHECK_THROWS_AS(tokenize("(a ? b)"), ParseError);
    }
    SUBCASE("integer overflow") {
        CHECK_THROWS_AS(tokenize("99999999999999999999"), ParseError);
    }
}
