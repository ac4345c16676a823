#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace graphcomm::ingest {

struct XmlToken {
  enum class Kind {
    kText,      // character data (may arrive split across several tokens)
    kStartTag,  // <name ...>
    kEndTag,    // </name>
    kEmptyTag,  // <name .../>
    kCData,     // <![CDATA[...]]>
    kMarkup,    // comment, processing instruction, DOCTYPE
    kBroken,    // stray '<' or a construct cut off by end of input
  };

  Kind kind;
  std::string_view raw;   // exact source bytes
  std::string_view name;  // element name for tag tokens, empty otherwise
};

// Push-style, byte-preserving XML lexer. Concatenating the raw bytes of every
// emitted token reproduces the input exactly, regardless of how the input was
// split across feed() calls. No well-formedness checking beyond tokenization.
class XmlTokenizer {
 public:
  using Sink = std::function<void(const XmlToken&)>;

  void feed(std::string_view bytes, const Sink& sink);
  void finish(const Sink& sink);

 private:
  enum class TagKind { kUnknown, kElement, kComment, kCData, kPi, kDecl };

  void feed_tag_byte(char c, const Sink& sink);
  void emit_tag(XmlToken::Kind kind, const Sink& sink);

  bool in_tag_ = false;
  TagKind tag_kind_ = TagKind::kUnknown;
  std::string tag_;
  char quote_ = 0;
  int bracket_depth_ = 0;
};

// dblp's record element names. Any of these opens a new top-level entry.
bool is_entry_tag(std::string_view name);

}  // namespace graphcomm::ingest
