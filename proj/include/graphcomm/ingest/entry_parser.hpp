#pragma once

#include <cstddef>
#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graphcomm/ingest/bib_entry.hpp"
#include "graphcomm/ingest/entities.hpp"
#include "graphcomm/ingest/xml_tokenizer.hpp"

namespace graphcomm::ingest {

struct ParseOptions {
  UnknownEntityPolicy unknown_entities = UnknownEntityPolicy::kPassThrough;
  // Unset: taken from the XML declaration if one is seen, else UTF-8.
  std::optional<SourceEncoding> encoding;
};

struct ParseStats {
  std::size_t entries_seen = 0;
  std::size_t parsed = 0;
  std::size_t malformed = 0;
  std::size_t unknown_entities = 0;
};

// Reads the encoding pseudo-attribute of a leading <?xml ...?> declaration.
SourceEncoding detect_encoding(std::string_view head);

// Streaming parser producing one BibEntry per top-level entry element.
// Memory is bounded by the size of a single entry. Root element, prolog and
// anything between entries are ignored. A broken entry is counted and
// dropped; parsing resumes with the next entry.
class EntryParser {
 public:
  using Sink = std::function<void(BibEntry&&)>;

  EntryParser(Sink sink, ParseOptions options = {});

  void feed(std::string_view bytes);
  void finish();

  const ParseStats& stats() const { return stats_; }
  SourceEncoding encoding() const;

 private:
  void on_token(const XmlToken& token);
  void begin_entry(const XmlToken& token);
  void end_entry();
  void fail_entry();
  void flush_text();
  bool decode(std::string_view raw, std::string& out);
  bool parse_attributes(std::string_view tag, std::map<std::string, std::string>& out);

  Sink sink_;
  ParseOptions options_;
  XmlTokenizer tokenizer_;
  ParseStats stats_;
  bool seen_markup_ = false;

  bool in_entry_ = false;
  bool failed_ = false;
  BibEntry entry_;
  std::vector<std::string> stack_;  // open elements inside the entry, entry first
  std::string pending_text_;        // undecoded text awaiting the next tag
  FieldValue* field_ = nullptr;     // field receiving text, if any
};

std::vector<BibEntry> parse_entries(std::string_view text, ParseOptions options = {},
                                    ParseStats* stats = nullptr);

void parse_entries(std::istream& in, const EntryParser::Sink& sink,
                   ParseOptions options = {}, ParseStats* stats = nullptr);

}  // namespace graphcomm::ingest
