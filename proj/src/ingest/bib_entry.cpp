#include "graphcomm/ingest/bib_entry.hpp"

namespace graphcomm::ingest {

namespace {

struct KindName {
  EntryKind kind;
  std::string_view name;
};

constexpr KindName kKindNames[] = {
    {EntryKind::kArticle, "article"},
    {EntryKind::kInproceedings, "inproceedings"},
    {EntryKind::kProceedings, "proceedings"},
    {EntryKind::kBook, "book"},
    {EntryKind::kIncollection, "incollection"},
    {EntryKind::kPhdthesis, "phdthesis"},
    {EntryKind::kMastersthesis, "mastersthesis"},
    {EntryKind::kWww, "www"},
    {EntryKind::kOther, "other"},
};

}  // namespace

std::string_view to_string(EntryKind kind) {
  for (const auto& kn : kKindNames) {
    if (kn.kind == kind) return kn.name;
  }
  return "other";
}

EntryKind entry_kind_from_tag(std::string_view tag) {
  for (const auto& kn : kKindNames) {
    if (kn.name == tag) return kn.kind;
  }
  return EntryKind::kOther;
}

std::vector<std::string> BibEntry::values(std::string_view field) const {
  std::vector<std::string> out;
  if (auto it = fields.find(std::string(field)); it != fields.end()) {
    out.reserve(it->second.size());
    for (const auto& v : it->second) out.push_back(v.text);
  }
  return out;
}

std::string BibEntry::first(std::string_view field) const {
  auto it = fields.find(std::string(field));
  if (it == fields.end() || it->second.empty()) return {};
  return it->second.front().text;
}

bool BibEntry::has(std::string_view field) const {
  auto it = fields.find(std::string(field));
  return it != fields.end() && !it->second.empty();
}

Json BibEntry::to_import_json() const {
  Json body = Json::object();
  for (const auto& [name, value] : attributes) body[name] = value;
  for (const auto& [name, list] : fields) {
    if (list.size() == 1) {
      body[name] = list.front().text;
    } else {
      Json arr = Json::array();
      for (const auto& v : list) arr.push_back(v.text);
      body[name] = std::move(arr);
    }
  }
  Json doc = Json::object();
  doc[tag.empty() ? std::string(to_string(kind)) : tag] = std::move(body);
  return doc;
}

}  // namespace graphcomm::ingest
