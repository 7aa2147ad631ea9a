#include "nmx/bundled_kb.hpp"

#include <fstream>
#include <sstream>

#include "nmx/parser.hpp"
#include "nmx/validator.hpp"

namespace nmx {

namespace detail {
extern const std::string_view kBundledKbText;
}

std::string_view bundled_kb_text() { return detail::kBundledKbText; }

KnowledgeBase load_bundled() {
    KnowledgeBase kb;
    try {
        kb = parse_source(bundled_kb_text());
    } catch (const ParseError& e) {
        throw std::runtime_error(std::string("bundled knowledge base is corrupt: ") + e.what());
    }
    auto diagnostics = validate(kb);
    if (!diagnostics.empty())
        throw std::runtime_error("bundled knowledge base is corrupt: " + format(diagnostics.front()));
    return kb;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw KbFileError("cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw KbFileError("cannot read '" + path.string() + "'");
    return buffer.str();
}

KnowledgeBase load_kb_file(const std::filesystem::path& path) { return parse_source(read_text_file(path)); }

}  // namespace nmx
