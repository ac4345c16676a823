#include "graphcomm/ingest/entry_parser.hpp"

#include <algorithm>
#include <cctype>

#include "graphcomm/error.hpp"

namespace graphcomm::ingest {

namespace {

constexpr std::string_view kCDataOpen = "<![CDATA[";
constexpr std::string_view kCDataClose = "]]>";

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

SourceEncoding detect_encoding(std::string_view head) {
  if (head.starts_with("\xEF\xBB\xBF")) return SourceEncoding::kUtf8;
  head = trim(head.substr(0, std::min<std::size_t>(head.size(), 512)));
  if (!head.starts_with("<?xml")) return SourceEncoding::kUtf8;
  const std::size_t close = head.find("?>");
  const std::string_view decl = head.substr(0, close);
  const std::size_t at = decl.find("encoding");
  if (at == std::string_view::npos) return SourceEncoding::kUtf8;
  std::size_t i = at + 8;
  while (i < decl.size() && (is_space(decl[i]) || decl[i] == '=')) ++i;
  if (i >= decl.size() || (decl[i] != '"' && decl[i] != '\'')) return SourceEncoding::kUtf8;
  const char quote = decl[i];
  const std::size_t end = decl.find(quote, i + 1);
  if (end == std::string_view::npos) return SourceEncoding::kUtf8;
  const std::string_view name = decl.substr(i + 1, end - i - 1);
  for (std::string_view latin1 : {"ISO-8859-1", "ISO8859-1", "ISO_8859-1", "latin1",
                                  "latin-1", "l1"}) {
    if (iequals(name, latin1)) return SourceEncoding::kLatin1;
  }
  return SourceEncoding::kUtf8;
}

EntryParser::EntryParser(Sink sink, ParseOptions options)
    : sink_(std::move(sink)), options_(options) {}

SourceEncoding EntryParser::encoding() const {
  return options_.encoding.value_or(SourceEncoding::kUtf8);
}

void EntryParser::feed(std::string_view bytes) {
  tokenizer_.feed(bytes, [this](const XmlToken& t) { on_token(t); });
}

void EntryParser::finish() {
  tokenizer_.finish([this](const XmlToken& t) { on_token(t); });
  if (in_entry_ && !failed_) fail_entry();
  in_entry_ = false;
  failed_ = false;
}

bool EntryParser::decode(std::string_view raw, std::string& out) {
  if (encoding() == SourceEncoding::kLatin1) {
    std::string utf8;
    append_latin1(raw, utf8);
    return decode_entities(utf8, out, options_.unknown_entities, stats_.unknown_entities);
  }
  return decode_entities(raw, out, options_.unknown_entities, stats_.unknown_entities);
}

void EntryParser::on_token(const XmlToken& token) {
  using Kind = XmlToken::Kind;
  switch (token.kind) {
    case Kind::kText:
      if (in_entry_ && !failed_ && field_ != nullptr) pending_text_.append(token.raw);
      return;
    case Kind::kCData:
      if (!in_entry_ || failed_ || field_ == nullptr) return;
      flush_text();
      if (failed_) return;
      {
        std::string_view body = token.raw;
        body.remove_prefix(kCDataOpen.size());
        body.remove_suffix(kCDataClose.size());
        if (encoding() == SourceEncoding::kLatin1) {
          append_latin1(body, field_->text);
        } else {
          field_->text.append(body);
        }
      }
      return;
    case Kind::kMarkup:
      if (!seen_markup_ && !options_.encoding && token.raw.starts_with("<?xml")) {
        options_.encoding = detect_encoding(token.raw);
      }
      seen_markup_ = true;
      return;
    case Kind::kBroken:
      if (in_entry_ && !failed_) fail_entry();
      return;
    case Kind::kStartTag:
    case Kind::kEmptyTag:
      seen_markup_ = true;
      if (is_entry_tag(token.name)) {
        if (in_entry_ && !failed_) fail_entry();
        begin_entry(token);
        if (!failed_ && token.kind == Kind::kEmptyTag) {
          stack_.clear();
          end_entry();
        }
        return;
      }
      if (!in_entry_ || failed_) return;
      flush_text();
      if (failed_) return;
      if (stack_.size() == 1) {
        FieldValue value;
        if (!parse_attributes(token.raw, value.attributes)) {
          fail_entry();
          return;
        }
        auto& slot = entry_.fields[std::string(token.name)];
        slot.push_back(std::move(value));
        if (token.kind == Kind::kStartTag) {
          field_ = &slot.back();
          stack_.emplace_back(token.name);
        }
      } else if (token.kind == Kind::kStartTag) {
        stack_.emplace_back(token.name);
      }
      return;
    case Kind::kEndTag:
      if (!in_entry_) return;
      if (failed_) {
        if (token.name == entry_.tag) {
          in_entry_ = false;
          failed_ = false;
        }
        return;
      }
      flush_text();
      if (failed_) return;
      if (stack_.empty() || token.name != stack_.back()) {
        fail_entry();
        if (token.name == entry_.tag) {
          in_entry_ = false;
          failed_ = false;
        }
        return;
      }
      stack_.pop_back();
      if (stack_.size() == 1) {
        field_->text = std::string(trim(field_->text));
        field_ = nullptr;
      } else if (stack_.empty()) {
        end_entry();
      }
      return;
  }
}

void EntryParser::begin_entry(const XmlToken& token) {
  in_entry_ = true;
  failed_ = false;
  entry_ = BibEntry{};
  entry_.tag = std::string(token.name);
  entry_.kind = entry_kind_from_tag(token.name);
  stack_.assign(1, entry_.tag);
  pending_text_.clear();
  field_ = nullptr;
  if (!parse_attributes(token.raw, entry_.attributes)) {
    fail_entry();
    return;
  }
  if (auto it = entry_.attributes.find("key"); it != entry_.attributes.end()) {
    entry_.source_key = it->second;
  }
}

void EntryParser::end_entry() {
  in_entry_ = false;
  if (trim(entry_.source_key).empty()) {
    ++stats_.entries_seen;
    ++stats_.malformed;
    return;
  }
  ++stats_.entries_seen;
  ++stats_.parsed;
  sink_(std::move(entry_));
  entry_ = BibEntry{};
}

void EntryParser::fail_entry() {
  failed_ = true;
  ++stats_.entries_seen;
  ++stats_.malformed;
  stack_.clear();
  pending_text_.clear();
  field_ = nullptr;
}

void EntryParser::flush_text() {
  if (pending_text_.empty()) return;
  if (field_ != nullptr && !decode(pending_text_, field_->text)) fail_entry();
  pending_text_.clear();
}

bool EntryParser::parse_attributes(std::string_view tag,
                                   std::map<std::string, std::string>& out) {
  std::size_t i = 1;
  while (i < tag.size() && !is_space(tag[i]) && tag[i] != '/' && tag[i] != '>') ++i;
  while (true) {
    while (i < tag.size() && is_space(tag[i])) ++i;
    if (i >= tag.size()) return false;
    if (tag[i] == '>') return true;
    if (tag[i] == '/') return i + 1 < tag.size() && tag[i + 1] == '>';
    const std::size_t name_begin = i;
    while (i < tag.size() && !is_space(tag[i]) && tag[i] != '=' && tag[i] != '>' &&
           tag[i] != '/') {
      ++i;
    }
    const std::string name(tag.substr(name_begin, i - name_begin));
    while (i < tag.size() && is_space(tag[i])) ++i;
    if (i >= tag.size() || tag[i] != '=') return false;
    ++i;
    while (i < tag.size() && is_space(tag[i])) ++i;
    if (i >= tag.size() || (tag[i] != '"' && tag[i] != '\'')) return false;
    const char quote = tag[i];
    const std::size_t end = tag.find(quote, i + 1);
    if (end == std::string_view::npos) return false;
    const std::string_view raw = tag.substr(i + 1, end - i - 1);
    if (raw.find('<') != std::string_view::npos) return false;
    std::string value;
    if (!decode(raw, value)) return false;
    if (!out.emplace(name, std::move(value)).second) return false;
    i = end + 1;
  }
}

std::vector<BibEntry> parse_entries(std::string_view text, ParseOptions options,
                                    ParseStats* stats) {
  std::vector<BibEntry> entries;
  EntryParser parser([&entries](BibEntry&& e) { entries.push_back(std::move(e)); },
                     options);
  parser.feed(text);
  parser.finish();
  if (stats != nullptr) *stats = parser.stats();
  return entries;
}

void parse_entries(std::istream& in, const EntryParser::Sink& sink, ParseOptions options,
                   ParseStats* stats) {
  EntryParser parser(sink, options);
  std::vector<char> buffer(1 << 16);
  while (in) {
    in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    const auto got = in.gcount();
    if (got <= 0) break;
    parser.feed({buffer.data(), static_cast<std::size_t>(got)});
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "failed reading XML input");
  parser.finish();
  if (stats != nullptr) *stats = parser.stats();
}

}  // namespace graphcomm::ingest
