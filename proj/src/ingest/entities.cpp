#include "graphcomm/ingest/entities.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <unordered_map>

namespace graphcomm::ingest {

namespace {

// Entity names for code points 160..255, in order.
constexpr std::array<std::string_view, 96> kLatin1Names = {
    "nbsp",   "iexcl",  "cent",   "pound",  "curren", "yen",    "brvbar", "sect",
    "uml",    "copy",   "ordf",   "laquo",  "not",    "shy",    "reg",    "macr",
    "deg",    "plusmn", "sup2",   "sup3",   "acute",  "micro",  "para",   "middot",
    "cedil",  "sup1",   "ordm",   "raquo",  "frac14", "frac12", "frac34", "iquest",
    "Agrave", "Aacute", "Acirc",  "Atilde", "Auml",   "Aring",  "AElig",  "Ccedil",
    "Egrave", "Eacute", "Ecirc",  "Euml",   "Igrave", "Iacute", "Icirc",  "Iuml",
    "ETH",    "Ntilde", "Ograve", "Oacute", "Ocirc",  "Otilde", "Ouml",   "times",
    "Oslash", "Ugrave", "Uacute", "Ucirc",  "Uuml",   "Yacute", "THORN",  "szlig",
    "agrave", "aacute", "acirc",  "atilde", "auml",   "aring",  "aelig",  "ccedil",
    "egrave", "eacute", "ecirc",  "euml",   "igrave", "iacute", "icirc",  "iuml",
    "eth",    "ntilde", "ograve", "oacute", "ocirc",  "otilde", "ouml",   "divide",
    "oslash", "ugrave", "uacute", "ucirc",  "uuml",   "yacute", "thorn",  "yuml"};

const std::unordered_map<std::string_view, char32_t>& entity_table() {
  static const auto table = [] {
    std::unordered_map<std::string_view, char32_t> t = {
        {"amp", U'&'}, {"lt", U'<'}, {"gt", U'>'}, {"quot", U'"'}, {"apos", U'\''}};
    for (std::size_t i = 0; i < kLatin1Names.size(); ++i) {
      t.emplace(kLatin1Names[i], static_cast<char32_t>(160 + i));
    }
    return t;
  }();
  return table;
}

bool is_name_char(char c, bool first) {
  const auto u = static_cast<unsigned char>(c);
  if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == ':' ||
      u >= 0x80) {
    return true;
  }
  return !first && ((c >= '0' && c <= '9') || c == '-' || c == '.');
}

bool valid_code_point(std::uint64_t cp) {
  if (cp == 0 || cp > 0x10FFFF) return false;
  if (cp >= 0xD800 && cp <= 0xDFFF) return false;
  return true;
}

}  // namespace

void append_utf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

void append_latin1(std::string_view bytes, std::string& out) {
  for (char c : bytes) append_utf8(static_cast<unsigned char>(c), out);
}

std::optional<char32_t> named_entity(std::string_view name) {
  const auto& table = entity_table();
  if (auto it = table.find(name); it != table.end()) return it->second;
  return std::nullopt;
}

bool decode_entities(std::string_view raw, std::string& out, UnknownEntityPolicy policy,
                     std::size_t& unknown_count) {
  std::size_t i = 0;
  while (i < raw.size()) {
    const std::size_t amp = raw.find('&', i);
    if (amp == std::string_view::npos) {
      out.append(raw.substr(i));
      return true;
    }
    out.append(raw.substr(i, amp - i));
    const std::size_t semi = raw.find(';', amp + 1);
    if (semi == std::string_view::npos) return false;
    const std::string_view body = raw.substr(amp + 1, semi - amp - 1);
    if (body.empty()) return false;

    if (body[0] == '#') {
      std::string_view digits = body.substr(1);
      int base = 10;
      if (!digits.empty() && (digits[0] == 'x' || digits[0] == 'X')) {
        base = 16;
        digits.remove_prefix(1);
      }
      if (digits.empty() || digits.size() > 8) return false;
      std::uint64_t cp = 0;
      const auto [end, ec] =
          std::from_chars(digits.data(), digits.data() + digits.size(), cp, base);
      if (ec != std::errc{} || end != digits.data() + digits.size()) return false;
      if (!valid_code_point(cp)) return false;
      append_utf8(static_cast<char32_t>(cp), out);
    } else {
      if (!is_name_char(body[0], true)) return false;
      for (char c : body.substr(1)) {
        if (!is_name_char(c, false)) return false;
      }
      if (auto cp = named_entity(body)) {
        append_utf8(*cp, out);
      } else {
        if (policy == UnknownEntityPolicy::kReject) return false;
        ++unknown_count;
        out.append(raw.substr(amp, semi - amp + 1));
      }
    }
    i = semi + 1;
  }
  return true;
}

}  // namespace graphcomm::ingest
