#pragma once

#include <string>
#include <vector>

#include "nmx/knowledge_base.hpp"

namespace nmx {

enum class Severity { Warning, Error };

/// Diagnostic codes:
///   W001  action verb normalized (e.g. `recommended-action`)
///   W002  unrecognized action verb
///   W003  two rules with identical pattern sets
///   W004  question ident never tested by any rule
///   E101  rule tests an `answer` ident that has no defquestion
struct Diagnostic {
    std::string code;
    Severity severity;
    std::string message;
    Location loc;

    bool is_error() const { return severity == Severity::Error; }
};

std::vector<Diagnostic> validate(const KnowledgeBase& kb);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

/// "line:col: CODE message"
std::string format(const Diagnostic& d);

}  // namespace nmx
