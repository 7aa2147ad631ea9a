#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nmx/knowledge_base.hpp"

namespace nmx {

enum class TokenKind { Open, Close, Symbol, String, Int, Var, Arrow };

const char* to_string(TokenKind kind);

struct Token {
    TokenKind kind;
    /// Symbol/variable name, or the unescaped string contents.
    std::string text;
    std::int64_t value = 0;
    Location loc;
    /// Byte length of the token in the source, quotes and escapes included.
    std::size_t length = 0;

    friend bool operator==(const Token& a, const Token& b) {
        return a.kind == b.kind && a.text == b.text && a.value == b.value;
    }
};

/// Lexical, syntactic, or structural failure while reading a KB, with the
/// location of the offending token.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, Location loc);

    const Location& location() const { return loc_; }
    const std::string& detail() const { return detail_; }

private:
    std::string detail_;
    Location loc_;
};

/// Splits KB source into tokens. `;` starts a comment running to end of line.
std::vector<Token> tokenize(std::string_view source);

}  // namespace nmx
