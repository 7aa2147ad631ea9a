#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nmx/knowledge_base.hpp"

namespace nmx {

/// Text of kb/neuro.kb, embedded at build time.
std::string_view bundled_kb_text();

/// Parses the embedded neuromuscular KB. Throws std::runtime_error if it
/// fails to parse or validate cleanly, which means a broken build.
KnowledgeBase load_bundled();

class KbFileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reads and parses a KB file. Throws KbFileError when the file cannot be
/// read and ParseError when its contents are malformed.
KnowledgeBase load_kb_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace nmx
