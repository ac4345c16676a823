#include "graphcomm/ingest/normalize.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "graphcomm/error.hpp"

namespace graphcomm::ingest {

namespace {

icu::UnicodeString nfc(std::string_view utf8) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* normalizer = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error(ErrorCode::kUnavailable, "ICU NFC unavailable");
  const auto source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  icu::UnicodeString result = normalizer->normalize(source, status);
  if (U_FAILURE(status)) throw Error(ErrorCode::kInvalidArgument, "cannot normalize text");
  return result;
}

}  // namespace

std::string normalize_name(std::string_view utf8) {
  bool ascii = true;
  for (char c : utf8) {
    if (static_cast<unsigned char>(c) >= 0x80) {
      ascii = false;
      break;
    }
  }

  std::string out;
  out.reserve(utf8.size());
  bool pending_space = false;
  auto push = [&](auto emit, bool space) {
    if (space) {
      pending_space = !out.empty();
      return;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    emit();
  };

  if (ascii) {
    for (char c : utf8) {
      const bool space = c == ' ' || c == '\t' || c == '\n' || c == '\r' ||
                         c == '\f' || c == '\v';
      push([&] { out.push_back(c); }, space);
    }
    return out;
  }

  const icu::UnicodeString text = nfc(utf8);
  for (int32_t i = 0; i < text.length();) {
    const UChar32 cp = text.char32At(i);
    i += U16_LENGTH(cp);
    push(
        [&] {
          std::string piece;
          icu::UnicodeString(cp).toUTF8String(piece);
          out += piece;
        },
        u_isUWhiteSpace(cp) != 0);
  }
  return out;
}

std::string fold_case(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  bool ascii = true;
  for (char c : utf8) {
    if (static_cast<unsigned char>(c) >= 0x80) {
      ascii = false;
      break;
    }
    out.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
  }
  if (ascii) return out;
  out.clear();

  icu::UnicodeString text = nfc(utf8);
  text.foldCase(U_FOLD_CASE_DEFAULT);
  text.toUTF8String(out);
  return out;
}

}  // namespace graphcomm::ingest
