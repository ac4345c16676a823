#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace graphcomm::ingest {

enum class UnknownEntityPolicy {
  kPassThrough,  // keep "&name;" literally and count it
  kReject,       // treat the enclosing entry as malformed
};

enum class SourceEncoding { kUtf8, kLatin1 };

void append_utf8(char32_t code_point, std::string& out);

// Latin-1 → UTF-8. Bytes below 0x80 are copied.
void append_latin1(std::string_view bytes, std::string& out);

// The five XML built-ins plus the ISO Latin-1 set declared by the dblp DTD.
std::optional<char32_t> named_entity(std::string_view name);

// Decodes entity and character references in `raw`, appending UTF-8 to
// `out`. Returns false on a syntactically broken reference, an invalid code
// point, or (under kReject) an unknown entity name.
bool decode_entities(std::string_view raw, std::string& out,
                     UnknownEntityPolicy policy, std::size_t& unknown_count);

}  // namespace graphcomm::ingest
