#pragma once

#include <string>

#include "nmx/knowledge_base.hpp"

namespace nmx {

/// Canonical KB text: templates, then questions, then rules, forms separated
/// by a blank line, two-space indent, one slot test per line. The empty KB
/// prints as the empty string. parse_source(pretty_print(kb)) == kb.
std::string pretty_print(const KnowledgeBase& kb);

std::string pretty_print(const RuleDef& rule);

}  // namespace nmx
