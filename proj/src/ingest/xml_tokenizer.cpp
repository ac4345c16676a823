#include "graphcomm/ingest/xml_tokenizer.hpp"

#include <array>

namespace graphcomm::ingest {

namespace {

constexpr std::string_view kCommentOpen = "<!--";
constexpr std::string_view kCDataOpen = "<![CDATA[";
constexpr std::size_t kMaxTagBytes = 1 << 20;

bool is_name_start(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' ||
         c == ':' || u >= 0x80;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::string_view element_name(std::string_view tag) {
  std::size_t begin = (tag.size() > 1 && tag[1] == '/') ? 2 : 1;
  std::size_t end = begin;
  while (end < tag.size() && !is_space(tag[end]) && tag[end] != '/' &&
         tag[end] != '>') {
    ++end;
  }
  return tag.substr(begin, end - begin);
}

}  // namespace

bool is_entry_tag(std::string_view name) {
  static constexpr std::array<std::string_view, 9> kEntryTags = {
      "article",       "inproceedings", "proceedings", "book", "incollection",
      "phdthesis",     "mastersthesis", "www",         "data"};
  for (auto tag : kEntryTags) {
    if (tag == name) return true;
  }
  return false;
}

void XmlTokenizer::feed(std::string_view bytes, const Sink& sink) {
  std::size_t i = 0;
  while (i < bytes.size()) {
    if (!in_tag_) {
      const std::size_t lt = bytes.find('<', i);
      const std::size_t stop = lt == std::string_view::npos ? bytes.size() : lt;
      if (stop > i) {
        sink(XmlToken{XmlToken::Kind::kText, bytes.substr(i, stop - i), {}});
      }
      if (lt == std::string_view::npos) return;
      in_tag_ = true;
      tag_kind_ = TagKind::kUnknown;
      tag_.assign(1, '<');
      quote_ = 0;
      bracket_depth_ = 0;
      i = lt + 1;
      continue;
    }
    const char c = bytes[i];
    if (tag_.size() == 1 && !(is_name_start(c) || c == '/' || c == '!' || c == '?')) {
      // A '<' that cannot start markup; leave c for text mode.
      emit_tag(XmlToken::Kind::kBroken, sink);
      continue;
    }
    feed_tag_byte(c, sink);
    ++i;
  }
}

void XmlTokenizer::finish(const Sink& sink) {
  if (in_tag_) emit_tag(XmlToken::Kind::kBroken, sink);
}

void XmlTokenizer::emit_tag(XmlToken::Kind kind, const Sink& sink) {
  std::string_view raw = tag_;
  std::string_view name;
  if (kind == XmlToken::Kind::kStartTag || kind == XmlToken::Kind::kEndTag ||
      kind == XmlToken::Kind::kEmptyTag) {
    name = element_name(raw);
  }
  in_tag_ = false;
  sink(XmlToken{kind, raw, name});
  tag_.clear();
}

void XmlTokenizer::feed_tag_byte(char c, const Sink& sink) {
  tag_.push_back(c);

  if (tag_kind_ == TagKind::kUnknown) {
    const char second = tag_[1];
    if (second == '?') {
      tag_kind_ = TagKind::kPi;
    } else if (second != '!') {
      tag_kind_ = TagKind::kElement;
    } else if (tag_.starts_with(kCommentOpen)) {
      tag_kind_ = TagKind::kComment;
    } else if (tag_.starts_with(kCDataOpen)) {
      tag_kind_ = TagKind::kCData;
    } else if (!kCommentOpen.starts_with(tag_) && !kCDataOpen.starts_with(tag_)) {
      tag_kind_ = TagKind::kDecl;
    } else {
      return;  // still a prefix of "<!--" or "<![CDATA["
    }
    if (tag_kind_ != TagKind::kElement && tag_kind_ != TagKind::kDecl) return;
    if (tag_kind_ == TagKind::kElement && tag_.size() == 2) return;
  }

  switch (tag_kind_) {
    case TagKind::kElement:
      if (quote_ != 0) {
        if (c == quote_) quote_ = 0;
      } else if (c == '"' || c == '\'') {
        quote_ = c;
      } else if (c == '>') {
        XmlToken::Kind kind = XmlToken::Kind::kStartTag;
        if (tag_[1] == '/') {
          kind = XmlToken::Kind::kEndTag;
        } else if (tag_.size() >= 3 && tag_[tag_.size() - 2] == '/') {
          kind = XmlToken::Kind::kEmptyTag;
        }
        emit_tag(kind, sink);
        return;
      }
      break;
    case TagKind::kComment:
      if (tag_.size() >= 7 && tag_.ends_with("-->")) {
        emit_tag(XmlToken::Kind::kMarkup, sink);
        return;
      }
      break;
    case TagKind::kCData:
      if (tag_.size() >= kCDataOpen.size() + 3 && tag_.ends_with("]]>")) {
        emit_tag(XmlToken::Kind::kCData, sink);
        return;
      }
      break;
    case TagKind::kPi:
      if (tag_.size() >= 4 && tag_.ends_with("?>")) {
        emit_tag(XmlToken::Kind::kMarkup, sink);
        return;
      }
      break;
    case TagKind::kDecl:
      if (c == '[') {
        ++bracket_depth_;
      } else if (c == ']') {
        --bracket_depth_;
      } else if (c == '>' && bracket_depth_ <= 0) {
        emit_tag(XmlToken::Kind::kMarkup, sink);
        return;
      }
      break;
    case TagKind::kUnknown:
      break;
  }
  if (tag_.size() > kMaxTagBytes) emit_tag(XmlToken::Kind::kBroken, sink);
}

}  // namespace graphcomm::ingest
