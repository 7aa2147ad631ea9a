#include "nmx/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace nmx {

namespace {

constexpr const char* kMisspelledAction = "recommended-action";

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

class Parser {
public:
    explicit Parser(std::span<const Token> tokens) : tokens_(tokens) {}

    KnowledgeBase run() {
        while (!at_end()) form();
        return std::move(kb_);
    }

private:
    bool at_end() const { return pos_ >= tokens_.size(); }

    // Errors at end of input are reported on the last token read.
    Location end_location() const { return tokens_.empty() ? Location{} : tokens_.back().loc; }

    const Token& peek() const {
        if (at_end()) throw ParseError("unexpected end of input", end_location());
        return tokens_[pos_];
    }

    bool peek_is(TokenKind kind) const { return !at_end() && tokens_[pos_].kind == kind; }

    bool peek_is_open_then(const char* keyword) const {
        return pos_ + 1 < tokens_.size() && tokens_[pos_].kind == TokenKind::Open &&
               tokens_[pos_ + 1].kind == TokenKind::Symbol && tokens_[pos_ + 1].text == keyword;
    }

    const Token& expect(TokenKind kind, const char* what) {
        const Token& tok = peek();
        if (tok.kind != kind)
            throw ParseError(std::string("expected ") + what + ", found " + to_string(tok.kind), tok.loc);
        ++pos_;
        return tok;
    }

    const Token& expect_keyword(const char* keyword) {
        const Token& tok = peek();
        if (tok.kind != TokenKind::Symbol || tok.text != keyword)
            throw ParseError(std::string("expected '") + keyword + "'", tok.loc);
        ++pos_;
        return tok;
    }

    Term term(const Token& tok) {
        switch (tok.kind) {
            case TokenKind::Symbol: return Symbol{tok.text};
            case TokenKind::String: return tok.text;
            case TokenKind::Int: return tok.value;
            case TokenKind::Var: return Variable{tok.text};
            default: throw ParseError(std::string("expected a value, found ") + to_string(tok.kind), tok.loc);
        }
    }

    void form() {
        expect(TokenKind::Open, "'('");
        const Token& head = expect(TokenKind::Symbol, "form name");
        if (head.text == "deftemplate") {
            deftemplate(head);
        } else if (head.text == "defquestion") {
            defquestion(head);
        } else if (head.text == "defrule") {
            defrule(head);
        } else {
            throw ParseError("unknown form '" + head.text + "'", head.loc);
        }
    }

    void deftemplate(const Token& head) {
        const Token& name = expect(TokenKind::Symbol, "template name");
        if (kb_.find_template(name.text) != nullptr)
            throw ParseError("duplicate template '" + name.text + "'", name.loc);
        TemplateDef def{name.text, {}, head.loc};
        while (!peek_is(TokenKind::Close)) {
            expect(TokenKind::Open, "'(' or ')'");
            expect_keyword("slot");
            const Token& slot = expect(TokenKind::Symbol, "slot name");
            if (def.has_slot(slot.text))
                throw ParseError("duplicate slot '" + slot.text + "' in template '" + def.name + "'", slot.loc);
            def.slots.push_back(slot.text);
            expect(TokenKind::Close, "')'");
        }
        const Token& close = expect(TokenKind::Close, "')'");
        if (def.slots.empty()) throw ParseError("template '" + def.name + "' has no slots", close.loc);
        kb_.templates.push_back(std::move(def));
    }

    void defquestion(const Token& head) {
        const Token& ident = expect(TokenKind::Symbol, "question ident");
        if (kb_.find_question(ident.text) != nullptr)
            throw ParseError("duplicate question '" + ident.text + "'", ident.loc);
        const Token& prompt = expect(TokenKind::String, "prompt string");
        std::string text = normalize_text(prompt.text);
        if (text.empty()) throw ParseError("question '" + ident.text + "' has an empty prompt", prompt.loc);
        expect(TokenKind::Close, "')'");
        kb_.questions.push_back({ident.text, std::move(text), head.loc});
    }

    void defrule(const Token& head) {
        const Token& name = expect(TokenKind::Symbol, "rule name");
        if (kb_.find_rule(name.text) != nullptr)
            throw ParseError("duplicate rule '" + name.text + "'", name.loc);
        RuleDef rule;
        rule.name = name.text;
        rule.loc = head.loc;

        if (peek_is_open_then("declare")) declare(rule);

        std::set<std::string> bound;
        while (!peek_is(TokenKind::Arrow)) {
            if (!peek_is(TokenKind::Open)) {
                const Token& tok = peek();
                throw ParseError(std::string("expected pattern or '=>', found ") + to_string(tok.kind), tok.loc);
            }
            rule.patterns.push_back(pattern(bound));
        }
        const Token& arrow = expect(TokenKind::Arrow, "'=>'");
        if (rule.patterns.empty()) throw ParseError("rule has no patterns", arrow.loc);

        while (!peek_is(TokenKind::Close)) rule.actions.push_back(action(bound));
        const Token& close = expect(TokenKind::Close, "')'");
        if (rule.actions.empty()) throw ParseError("rule has no actions", close.loc);
        kb_.rules.push_back(std::move(rule));
    }

    void declare(RuleDef& rule) {
        expect(TokenKind::Open, "'('");
        expect_keyword("declare");
        bool seen_focus = false;
        bool seen_salience = false;
        while (!peek_is(TokenKind::Close)) {
            expect(TokenKind::Open, "'(' or ')'");
            const Token& prop = expect(TokenKind::Symbol, "declaration name");
            if (prop.text == "auto-focus") {
                if (seen_focus) throw ParseError("duplicate auto-focus declaration", prop.loc);
                seen_focus = true;
                const Token& value = expect(TokenKind::Symbol, "TRUE or FALSE");
                std::string v = lower(value.text);
                if (v != "true" && v != "false") throw ParseError("expected TRUE or FALSE", value.loc);
                rule.auto_focus = v == "true";
            } else if (prop.text == "salience") {
                if (seen_salience) throw ParseError("duplicate salience declaration", prop.loc);
                seen_salience = true;
                rule.salience = expect(TokenKind::Int, "integer salience").value;
            } else {
                throw ParseError("unknown declaration '" + prop.text + "'", prop.loc);
            }
            expect(TokenKind::Close, "')'");
        }
        expect(TokenKind::Close, "')'");
    }

    Pattern pattern(std::set<std::string>& bound) {
        expect(TokenKind::Open, "'('");
        const Token& name = expect(TokenKind::Symbol, "template name");
        const TemplateDef* tmpl = kb_.find_template(name.text);
        if (tmpl == nullptr) throw ParseError("undeclared template '" + name.text + "'", name.loc);
        Pattern pat{name.text, {}};
        while (!peek_is(TokenKind::Close)) {
            expect(TokenKind::Open, "'(' or ')'");
            const Token& slot = expect(TokenKind::Symbol, "slot name");
            if (!tmpl->has_slot(slot.text))
                throw ParseError("template '" + tmpl->name + "' has no slot '" + slot.text + "'", slot.loc);
            if (pat.find(slot.text) != nullptr)
                throw ParseError("slot '" + slot.text + "' tested twice in one pattern", slot.loc);
            const Token& value = peek();
            ++pos_;
            Term t = term(value);
            if (const auto* var = std::get_if<Variable>(&t)) bound.insert(var->name);
            pat.tests.push_back({slot.text, std::move(t)});
            expect(TokenKind::Close, "')'");
        }
        expect(TokenKind::Close, "')'");
        return pat;
    }

    ActionCall action(const std::set<std::string>& bound) {
        expect(TokenKind::Open, "'(' or ')'");
        const Token& verb = expect(TokenKind::Symbol, "action name");
        ActionCall call;
        call.verb = verb.text;
        call.loc = verb.loc;
        if (verb.text == kMisspelledAction) {
            call.verb = kRecommendAction;
            call.written_verb = verb.text;
        }
        while (!peek_is(TokenKind::Close)) {
            const Token& arg = peek();
            ++pos_;
            Term t = term(arg);
            if (const auto* var = std::get_if<Variable>(&t)) {
                if (bound.count(var->name) == 0)
                    throw ParseError("variable ?" + var->name + " is not bound by any pattern", arg.loc);
            } else if (auto* s = std::get_if<std::string>(&t)) {
                *s = normalize_text(*s);
            }
            call.args.push_back(std::move(t));
        }
        expect(TokenKind::Close, "')'");
        if (is_recognized_verb(call.verb)) {
            bool ok = call.args.size() == 1 &&
                      (std::holds_alternative<std::string>(call.args[0]) || is_variable(call.args[0]));
            if (!ok) throw ParseError(call.verb + " takes exactly one string argument", verb.loc);
        }
        return call;
    }

    std::span<const Token> tokens_;
    std::size_t pos_ = 0;
    KnowledgeBase kb_;
};

}  // namespace

KnowledgeBase parse(std::span<const Token> tokens) { return Parser(tokens).run(); }

KnowledgeBase parse_source(std::string_view source) {
    auto tokens = tokenize(source);
    return parse(tokens);
}

std::string normalize_text(std::string_view text) {
    std::string out;
    bool pending_space = false;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out += ' ';
        pending_space = false;
        out += c;
    }
    return out;
}

}  // namespace nmx
