#include "graphcomm/ingest/xml_repair.hpp"

#include <vector>

#include "graphcomm/error.hpp"

namespace graphcomm::ingest {

void XmlRepairer::feed(std::string_view bytes) {
  tokenizer_.feed(bytes, [this](const XmlToken& t) { on_token(t); });
}

void XmlRepairer::finish() {
  tokenizer_.finish([this](const XmlToken& t) { on_token(t); });
}

void XmlRepairer::on_token(const XmlToken& token) {
  const bool entry_start = (token.kind == XmlToken::Kind::kStartTag ||
                            token.kind == XmlToken::Kind::kEmptyTag) &&
                           is_entry_tag(token.name);
  if (entry_start && last_byte_ != '\n') out_("\n");
  if (!token.raw.empty()) {
    out_(token.raw);
    last_byte_ = token.raw.back();
  }
}

void repair_xml(std::istream& in, std::ostream& out) {
  XmlRepairer repairer([&out](std::string_view bytes) {
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  });
  std::vector<char> buffer(1 << 16);
  while (in) {
    in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    const auto got = in.gcount();
    if (got <= 0) break;
    repairer.feed({buffer.data(), static_cast<std::size_t>(got)});
  }
  repairer.finish();
  if (!out) throw Error(ErrorCode::kIo, "failed writing repaired XML");
}

std::string repair_xml(std::string_view text) {
  std::string result;
  result.reserve(text.size() + text.size() / 64);
  XmlRepairer repairer([&result](std::string_view bytes) { result.append(bytes); });
  repairer.feed(text);
  repairer.finish();
  return result;
}

}  // namespace graphcomm::ingest
