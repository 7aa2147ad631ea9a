#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "nmx/dialog.hpp"
#include "nmx/rete.hpp"
#include "nmx/working_memory.hpp"

namespace nmx {

using ordered_json = nlohmann::ordered_json;

/// Fact input for `match --facts`: {"template": name, "slots": {slot: value}}.
struct FactSpec {
    std::string template_name;
    SlotValues slots;
};

/// JSON strings shaped like symbols (`[A-Za-z][A-Za-z0-9_-]*`) become
/// symbols, other strings stay strings, integers become integers.
Atom atom_from_json(const nlohmann::json& value);
ordered_json to_json(const Atom& atom);

/// Throws std::invalid_argument on a malformed document.
std::vector<FactSpec> parse_facts(const nlohmann::json& doc);
ordered_json to_json(const Fact& fact);

ordered_json to_json(const NextStep& step);
ordered_json to_json(const Recommendation& rec);
/// {"status", "transcript": [{ident, answer}], "diagnoses": [...]}
ordered_json to_json(const Outcome& outcome);
ordered_json to_json(const InstrumentationCounters& counters);

}  // namespace nmx
