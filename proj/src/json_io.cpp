#include "nmx/json_io.hpp"

#include <cctype>
#include <stdexcept>

namespace nmx {

namespace {

bool symbol_shaped(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
    return true;
}

ordered_json optional_string(const std::optional<std::string>& s) { return s ? ordered_json(*s) : ordered_json(); }

}  // namespace

Atom atom_from_json(const nlohmann::json& value) {
    if (value.is_number_integer()) return value.get<std::int64_t>();
    if (value.is_string()) {
        auto s = value.get<std::string>();
        if (symbol_shaped(s)) return Symbol{s};
        return s;
    }
    throw std::invalid_argument("slot values must be strings or integers");
}

ordered_json to_json(const Atom& atom) {
    if (const auto* i = std::get_if<std::int64_t>(&atom)) return *i;
    return to_text(atom);
}

std::vector<FactSpec> parse_facts(const nlohmann::json& doc) {
    if (!doc.is_array()) throw std::invalid_argument("facts file must hold a JSON array");
    std::vector<FactSpec> out;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& item = doc[i];
        const std::string where = "fact #" + std::to_string(i + 1);
        if (!item.is_object() || !item.contains("template") || !item["template"].is_string())
            throw std::invalid_argument(where + ": expected {\"template\": ..., \"slots\": {...}}");
        FactSpec spec{item["template"].get<std::string>(), {}};
        if (item.contains("slots")) {
            if (!item["slots"].is_object()) throw std::invalid_argument(where + ": \"slots\" must be an object");
            for (const auto& [slot, value] : item["slots"].items()) {
                try {
                    spec.slots.emplace(slot, atom_from_json(value));
                } catch (const std::invalid_argument& e) {
                    throw std::invalid_argument(where + ": " + e.what());
                }
            }
        }
        out.push_back(std::move(spec));
    }
    return out;
}

ordered_json to_json(const Fact& fact) {
    ordered_json slots = ordered_json::object();
    for (const auto& [slot, value] : fact.slots) slots[slot] = to_json(value);
    return {{"template", fact.template_name}, {"slots", slots}};
}

ordered_json to_json(const NextStep& step) {
    if (const auto* q = std::get_if<Question>(&step))
        return {{"kind", "question"}, {"ident", q->ident}, {"prompt", q->prompt}};
    return {{"kind", "done"}};
}

ordered_json to_json(const Recommendation& rec) {
    return {{"rule", rec.rule},
            {"diagnosis", rec.diagnosis},
            {"tests", optional_string(rec.tests)},
            {"treatments", optional_string(rec.treatments)}};
}

ordered_json to_json(const Outcome& outcome) {
    ordered_json transcript = ordered_json::array();
    for (const auto& entry : outcome.transcript)
        transcript.push_back({{"ident", entry.ident}, {"answer", to_string(entry.answer)}});
    ordered_json diagnoses = ordered_json::array();
    for (const auto& rec : outcome.diagnoses) diagnoses.push_back(to_json(rec));
    return {{"status", to_string(outcome.status)}, {"transcript", transcript}, {"diagnoses", diagnoses}};
}

ordered_json to_json(const InstrumentationCounters& counters) {
    return {{"alpha_evals", counters.alpha_evals},
            {"join_attempts", counters.join_attempts},
            {"tokens_created", counters.tokens_created},
            {"activations_created", counters.activations_created}};
}

}  // namespace nmx
