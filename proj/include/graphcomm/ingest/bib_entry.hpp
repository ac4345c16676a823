#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "graphcomm/store/records.hpp"

namespace graphcomm::ingest {

enum class EntryKind {
  kArticle,
  kInproceedings,
  kProceedings,
  kBook,
  kIncollection,
  kPhdthesis,
  kMastersthesis,
  kWww,
  kOther,
};

std::string_view to_string(EntryKind kind);
// "data" and anything unrecognized map to kOther.
EntryKind entry_kind_from_tag(std::string_view tag);

struct FieldValue {
  std::string text;
  std::map<std::string, std::string> attributes;
};

struct BibEntry {
  EntryKind kind = EntryKind::kOther;
  std::string tag;         // element name as written
  std::string source_key;  // the key attribute
  std::map<std::string, std::string> attributes;
  std::map<std::string, std::vector<FieldValue>> fields;

  // Text of every occurrence of `field`, in document order.
  std::vector<std::string> values(std::string_view field) const;
  // First occurrence, or "" when absent.
  std::string first(std::string_view field) const;
  bool has(std::string_view field) const;

  // One object per entry keyed by tag: attributes and fields side by side,
  // repeated fields become arrays.
  Json to_import_json() const;
};

}  // namespace graphcomm::ingest
