#pragma once

#include <functional>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "graphcomm/ingest/xml_tokenizer.hpp"

namespace graphcomm::ingest {

// Inserts a single '\n' before every entry start tag that does not already
// begin a line. All other bytes pass through unchanged, so repair is
// idempotent.
class XmlRepairer {
 public:
  using Output = std::function<void(std::string_view)>;

  explicit XmlRepairer(Output out) : out_(std::move(out)) {}

  void feed(std::string_view bytes);
  void finish();

 private:
  void on_token(const XmlToken& token);

  Output out_;
  XmlTokenizer tokenizer_;
  char last_byte_ = '\n';  // stream start counts as a line start
};

void repair_xml(std::istream& in, std::ostream& out);
std::string repair_xml(std::string_view text);

}  // namespace graphcomm::ingest
