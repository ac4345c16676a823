#pragma once

#include <string>
#include <string_view>

namespace graphcomm::ingest {

// NFC, trim, collapse whitespace runs to one space. Case is kept.
std::string normalize_name(std::string_view utf8);

// Full Unicode case fold of NFC text, for case-insensitive matching.
std::string fold_case(std::string_view utf8);

}  // namespace graphcomm::ingest
