#pragma once

#include <span>
#include <string>
#include <string_view>

#include "nmx/knowledge_base.hpp"
#include "nmx/lexer.hpp"

namespace nmx {

/// Builds a KnowledgeBase from a token stream.
///
/// Grammar:
///   file        := {form}
///   form        := deftemplate | defquestion | defrule
///   deftemplate := "(" "deftemplate" NAME {"(" "slot" NAME ")"} ")"
///   defquestion := "(" "defquestion" NAME STRING ")"
///   defrule     := "(" "defrule" NAME [declare] {pattern} "=>" {action} ")"
///   declare     := "(" "declare" {"(" ("auto-focus" BOOL | "salience" INT) ")"} ")"
///   pattern     := "(" NAME {"(" NAME (SYMBOL|STRING|INT|VAR) ")"} ")"
///   action      := "(" NAME {SYMBOL|STRING|INT|VAR} ")"
///
/// Templates must be declared before a rule uses them. Action string
/// arguments and question prompts are whitespace-normalized (trimmed, inner
/// runs collapsed to one space). `recommended-action` is accepted as a
/// misspelling of `recommend-action`; the original spelling is kept in
/// ActionCall::written_verb so validate() can report it.
///
/// Throws ParseError for syntax errors, duplicate names, references to
/// undeclared templates or slots, and action variables no pattern binds.
KnowledgeBase parse(std::span<const Token> tokens);

/// tokenize + parse.
KnowledgeBase parse_source(std::string_view source);

/// Trims and collapses whitespace runs to a single space.
std::string normalize_text(std::string_view text);

}  // namespace nmx
