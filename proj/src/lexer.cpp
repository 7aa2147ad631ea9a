#include "nmx/lexer.hpp"

#include <charconv>

namespace nmx {

namespace {

bool is_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_name_char(char c) { return is_alpha(c) || is_digit(c) || c == '_' || c == '-'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_delimiter(char c) { return is_space(c) || c == '(' || c == ')' || c == ';' || c == '"'; }

std::string format_message(const std::string& detail, Location loc) {
    return std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " + detail;
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (is_space(c)) {
                advance();
            } else if (c == ';') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (c == '(' || c == ')') {
                Location loc = here();
                advance();
                out.push_back({c == '(' ? TokenKind::Open : TokenKind::Close, "", 0, loc, 1});
            } else if (c == '"') {
                out.push_back(string_token());
            } else if (c == '?') {
                out.push_back(var_token());
            } else if (c == '=' && peek(1) == '>') {
                Location loc = here();
                advance();
                advance();
                if (pos_ < src_.size() && !is_delimiter(src_[pos_]))
                    throw ParseError("illegal character '" + std::string(1, src_[pos_]) + "'", here());
                out.push_back({TokenKind::Arrow, "=>", 0, loc, 2});
            } else if (is_digit(c) || (c == '-' && is_digit(peek(1)))) {
                out.push_back(int_token());
            } else if (is_alpha(c)) {
                out.push_back(symbol_token());
            } else {
                throw ParseError(illegal(c), here());
            }
        }
        return out;
    }

private:
    static std::string illegal(char c) {
        if (static_cast<unsigned char>(c) < 0x20 || static_cast<unsigned char>(c) >= 0x7f)
            return "illegal character (byte " + std::to_string(static_cast<unsigned char>(c)) + ")";
        return "illegal character '" + std::string(1, c) + "'";
    }

    Location here() const { return {line_, column_}; }

    char peek(std::size_t ahead) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    // Names must end at a delimiter; anything else is reported where it sits.
    void expect_delimiter() const {
        if (pos_ < src_.size() && !is_delimiter(src_[pos_])) throw ParseError(illegal(src_[pos_]), here());
    }

    Token string_token() {
        Location loc = here();
        std::size_t start = pos_;
        advance();
        std::string text;
        while (true) {
            if (pos_ >= src_.size()) throw ParseError("unterminated string", loc);
            char c = src_[pos_];
            if (c == '"') {
                advance();
                break;
            }
            if (c == '\\') {
                Location esc = here();
                advance();
                if (pos_ >= src_.size()) throw ParseError("unterminated string", loc);
                char e = src_[pos_];
                if (e != '"' && e != '\\') throw ParseError("invalid escape '\\" + std::string(1, e) + "'", esc);
                text += e;
                advance();
                continue;
            }
            text += c;
            advance();
        }
        return {TokenKind::String, std::move(text), 0, loc, pos_ - start};
    }

    Token var_token() {
        Location loc = here();
        std::size_t start = pos_;
        advance();
        std::size_t name_start = pos_;
        while (pos_ < src_.size() && is_name_char(src_[pos_])) advance();
        if (pos_ == name_start) throw ParseError("empty variable name", loc);
        expect_delimiter();
        return {TokenKind::Var, std::string(src_.substr(name_start, pos_ - name_start)), 0, loc, pos_ - start};
    }

    Token int_token() {
        Location loc = here();
        std::size_t start = pos_;
        if (src_[pos_] == '-') advance();
        while (pos_ < src_.size() && is_digit(src_[pos_])) advance();
        expect_delimiter();
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
        if (ec != std::errc{}) throw ParseError("integer out of range", loc);
        return {TokenKind::Int, std::string(src_.substr(start, pos_ - start)), value, loc, pos_ - start};
    }

    Token symbol_token() {
        Location loc = here();
        std::size_t start = pos_;
        while (pos_ < src_.size() && is_name_char(src_[pos_])) advance();
        expect_delimiter();
        return {TokenKind::Symbol, std::string(src_.substr(start, pos_ - start)), 0, loc, pos_ - start};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

}  // namespace

const char* to_string(TokenKind kind) {
    switch (kind) {
        case TokenKind::Open: return "'('";
        case TokenKind::Close: return "')'";
        case TokenKind::Symbol: return "symbol";
        case TokenKind::String: return "string";
        case TokenKind::Int: return "integer";
        case TokenKind::Var: return "variable";
        case TokenKind::Arrow: return "'=>'";
    }
    return "token";
}

ParseError::ParseError(const std::string& message, Location loc)
    : std::runtime_error(format_message(message, loc)), detail_(message), loc_(loc) {}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace nmx
