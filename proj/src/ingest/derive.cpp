#include "graphcomm/ingest/derive.hpp"

#include <set>

#include "graphcomm/error.hpp"
#include "graphcomm/ingest/normalize.hpp"

namespace graphcomm::ingest {

namespace c = collections;

namespace {

struct NameLink {
  std::string_view field;
  std::string_view vertices;
  std::string_view edges;
  std::string_view label;
};

constexpr NameLink kNameLinks[] = {
    {"author", c::kAuthor, c::kAuthorPublication, "HAS_PUBLISHED"},
    {"editor", c::kEditor, c::kEditorPublication, "HAS_EDITED"},
    {"publisher", c::kPublisher, c::kPublisherPublication, "PUBLISHED"},
    {"school", c::kSchool, c::kSchoolPublication, "HOSTED"},
    {"journal", c::kJournal, c::kJournalPublication, "CONTAINS"},
    {"series", c::kSeries, c::kSeriesPublication, "INCLUDES"},
};

constexpr std::string_view kAffiliates = "AFFILIATES";
constexpr std::string_view kCites = "CITES";
constexpr std::string_view kCrossrefs = "CROSSREFS";

// Report keys for the per-type counts, in output order.
constexpr std::pair<std::string_view, std::string_view> kReportKeys[] = {
    {"publications", c::kPublication},
    {"authors", c::kAuthor},
    {"schools", c::kSchool},
    {"editors", c::kEditor},
    {"publishers", c::kPublisher},
    {"series", c::kSeries},
    {"journals", c::kJournal},
    {"affiliation_institutions", c::kInstitution},
};

std::vector<const FieldValue*> affiliation_notes(const BibEntry& entry) {
  std::vector<const FieldValue*> out;
  auto it = entry.fields.find("note");
  if (it == entry.fields.end()) return out;
  for (const auto& note : it->second) {
    auto type = note.attributes.find("type");
    if (type != note.attributes.end() && type->second == "affiliation") {
      out.push_back(&note);
    }
  }
  return out;
}

Json field_json(const std::vector<FieldValue>& values) {
  if (values.size() == 1) return values.front().text;
  Json arr = Json::array();
  for (const auto& v : values) arr.push_back(v.text);
  return arr;
}

}  // namespace

std::vector<std::string_view> vertex_collections() {
  return {c::kAuthor, c::kPublication, c::kEditor, c::kPublisher,
          c::kSeries, c::kSchool,      c::kJournal, c::kInstitution};
}

std::vector<std::string_view> edge_collections() {
  return {c::kAuthorPublication, c::kEditorPublication, c::kPublisherPublication,
          c::kSchoolPublication, c::kJournalPublication, c::kSeriesPublication,
          c::kInstitutionAuthor, c::kCited,             c::kCrossref};
}

void ensure_schema(GraphStore& store) {
  for (auto name : vertex_collections()) {
    if (!store.has_collection(name)) store.create_collection(name, CollectionKind::kVertex);
  }
  for (auto name : edge_collections()) {
    if (!store.has_collection(name)) store.create_collection(name, CollectionKind::kEdge);
  }
  if (!store.has_graph(kDefaultGraphName)) {
    NamedGraph graph;
    graph.name = std::string(kDefaultGraphName);
    for (auto name : edge_collections()) graph.edge_collections.emplace_back(name);
    for (auto name : vertex_collections()) graph.vertex_collections.emplace_back(name);
    store.define_graph(std::move(graph));
  }
}

std::size_t DerivationReport::vertex_total() const {
  std::size_t total = 0;
  for (const auto& [_, n] : vertices) total += n;
  return total;
}

std::size_t DerivationReport::edge_total() const {
  std::size_t total = 0;
  for (const auto& [_, n] : edges) total += n;
  return total;
}

std::size_t DerivationReport::vertex_count(std::string_view collection) const {
  auto it = vertices.find(std::string(collection));
  return it == vertices.end() ? 0 : it->second;
}

std::size_t DerivationReport::edge_count(std::string_view collection) const {
  auto it = edges.find(std::string(collection));
  return it == edges.end() ? 0 : it->second;
}

void DerivationReport::merge(const DerivationReport& other) {
  for (const auto& [k, n] : other.vertices) vertices[k] += n;
  for (const auto& [k, n] : other.edges) edges[k] += n;
  entries += other.entries;
  person_records += other.person_records;
  duplicate_merges += other.duplicate_merges;
  malformed_entries += other.malformed_entries;
  skipped_references += other.skipped_references;
  unknown_entities += other.unknown_entities;
}

Json DerivationReport::to_json() const {
  Json out = Json::object();
  for (const auto& [key, collection] : kReportKeys) out[key] = vertex_count(collection);
  out["edges"] = edge_total();
  Json by_vertex = Json::object();
  for (auto name : vertex_collections()) by_vertex[name] = vertex_count(name);
  Json by_edge = Json::object();
  for (auto name : edge_collections()) by_edge[name] = edge_count(name);
  out["vertices_by_type"] = std::move(by_vertex);
  out["edges_by_type"] = std::move(by_edge);
  out["entries"] = entries;
  out["person_records"] = person_records;
  out["duplicate_merges"] = duplicate_merges;
  out["malformed_entries"] = malformed_entries;
  out["skipped_references"] = skipped_references;
  out["unknown_entities"] = unknown_entities;
  return out;
}

bool is_person_record(const BibEntry& entry) {
  return entry.kind == EntryKind::kWww && entry.source_key.starts_with("homepages/");
}

Deriver::Deriver(GraphStore& store) : store_(store) {
  ensure_schema(store_);
  for (const auto& link : kNameLinks) names_[std::string(link.vertices)];
  names_[std::string(c::kInstitution)];
  for (auto& [collection, index] : names_) {
    store_.for_each_vertex(collection, [&index](const VertexRecord& v) {
      index.emplace(v.graph_name(), v.handle);
    });
  }
  store_.for_each_vertex(c::kPublication, [this](const VertexRecord& v) {
    auto key = v.attributes.find("key");
    if (key != v.attributes.end() && key->is_string()) {
      publications_.emplace(key->get<std::string>(), v.handle);
    }
  });
}

const std::string* Deriver::find_name(std::string_view collection,
                                      std::string_view raw_name) const {
  const auto& index = names_.at(std::string(collection));
  auto it = index.find(normalize_name(raw_name));
  return it == index.end() ? nullptr : &it->second;
}

std::string Deriver::name_vertex(std::string_view collection, std::string_view raw_name) {
  std::string name = normalize_name(raw_name);
  if (name.empty()) return {};
  auto& index = names_.at(std::string(collection));
  if (auto it = index.find(name); it != index.end()) return it->second;
  Json attributes = Json::object();
  attributes["graph_name"] = name;
  std::string handle = store_.insert_vertex(collection, {}, std::move(attributes));
  ++report_.vertices[std::string(collection)];
  index.emplace(std::move(name), handle);
  return handle;
}

void Deriver::add_edge(std::string_view collection, const std::string& from,
                       const std::string& to, std::string_view label) {
  for (const auto& n : store_.neighbors(to, Direction::kInbound)) {
    if (n.edge->collection == collection && n.edge->from == from) return;
  }
  store_.insert_edge(collection, from, to, 1.0, std::string(label));
  ++report_.edges[std::string(collection)];
}

std::string Deriver::add_vertices(const BibEntry& entry) {
  ++report_.entries;
  if (is_person_record(entry)) {
    ++report_.person_records;
    add_person_vertices(entry);
    return {};
  }

  for (const auto& link : kNameLinks) {
    auto it = entry.fields.find(std::string(link.field));
    if (it == entry.fields.end()) continue;
    for (const auto& value : it->second) {
      const std::string handle = name_vertex(link.vertices, value.text);
      if (handle.empty() || link.vertices != c::kAuthor) continue;
      auto orcid = value.attributes.find("orcid");
      if (orcid != value.attributes.end() &&
          !store_.vertex(handle).attributes.contains("orcid")) {
        store_.set_vertex_attribute(handle, "orcid", orcid->second);
      }
    }
  }

  if (auto it = publications_.find(entry.source_key); it != publications_.end()) {
    ++report_.duplicate_merges;
    return it->second;
  }

  Json attributes = Json::object();
  for (const auto& [name, values] : entry.fields) {
    if (name.empty() || name.front() == '_') continue;
    attributes[name] = field_json(values);
  }
  for (const auto& [name, value] : entry.attributes) {
    if (name.empty() || name.front() == '_') continue;
    attributes[name] = value;
  }
  attributes["kind"] = std::string(to_string(entry.kind));
  const std::string title = entry.first("title");
  attributes["graph_name"] = title.empty() ? entry.source_key : title;

  std::string handle = store_.insert_vertex(c::kPublication, {}, std::move(attributes));
  ++report_.vertices[std::string(c::kPublication)];
  publications_.emplace(entry.source_key, handle);
  return handle;
}

void Deriver::add_person_vertices(const BibEntry& entry) {
  auto authors = entry.fields.find("author");
  if (authors == entry.fields.end() || authors->second.empty()) return;
  const FieldValue& primary = authors->second.front();
  const std::string handle = name_vertex(c::kAuthor, primary.text);
  if (handle.empty()) return;

  if (authors->second.size() > 1) {
    Json others = Json::array();
    for (std::size_t i = 1; i < authors->second.size(); ++i) {
      others.push_back(normalize_name(authors->second[i].text));
    }
    store_.set_vertex_attribute(handle, "other_names", std::move(others));
  }
  if (auto orcid = primary.attributes.find("orcid"); orcid != primary.attributes.end()) {
    store_.set_vertex_attribute(handle, "orcid", orcid->second);
  }
  if (entry.has("url")) {
    Json urls = Json::array();
    for (const auto& url : entry.values("url")) urls.push_back(url);
    store_.set_vertex_attribute(handle, "urls", std::move(urls));
  }
  const auto notes = affiliation_notes(entry);
  if (!notes.empty()) {
    Json affiliations = Json::array();
    for (const FieldValue* note : notes) {
      affiliations.push_back(normalize_name(note->text));
      name_vertex(c::kInstitution, note->text);
    }
    store_.set_vertex_attribute(handle, "affiliations", std::move(affiliations));
  }
  store_.set_vertex_attribute(handle, "homepage_key", entry.source_key);
}

void Deriver::add_person_edges(const BibEntry& entry) {
  auto authors = entry.fields.find("author");
  if (authors == entry.fields.end() || authors->second.empty()) return;
  const std::string* author = find_name(c::kAuthor, authors->second.front().text);
  if (author == nullptr) return;
  const std::string author_handle = *author;
  for (const FieldValue* note : affiliation_notes(entry)) {
    const std::string institution = name_vertex(c::kInstitution, note->text);
    if (!institution.empty()) {
      add_edge(c::kInstitutionAuthor, institution, author_handle, kAffiliates);
    }
  }
}

void Deriver::add_edges(const BibEntry& entry) {
  if (is_person_record(entry)) {
    add_person_edges(entry);
    return;
  }
  auto pub = publications_.find(entry.source_key);
  if (pub == publications_.end()) {
    throw Error(ErrorCode::kNotFound,
                "no publication vertex for key '" + entry.source_key + "'");
  }
  const std::string publication = pub->second;

  for (const auto& link : kNameLinks) {
    auto it = entry.fields.find(std::string(link.field));
    if (it == entry.fields.end()) continue;
    for (const auto& value : it->second) {
      const std::string from = name_vertex(link.vertices, value.text);
      if (!from.empty()) add_edge(link.edges, from, publication, link.label);
    }
  }

  std::set<std::pair<bool, std::string>> queued;
  for (const bool crossref : {false, true}) {
    for (const auto& target : entry.values(crossref ? "crossref" : "cite")) {
      if (queued.emplace(crossref, target).second) {
        pending_.push_back({publication, target, crossref});
      }
    }
  }
}

void Deriver::resolve_references() {
  for (const auto& ref : pending_) {
    auto target = publications_.find(ref.target_key);
    if (target == publications_.end()) {
      ++report_.skipped_references;
      continue;
    }
    if (ref.crossref) {
      add_edge(c::kCrossref, ref.from, target->second, kCrossrefs);
    } else {
      add_edge(c::kCited, ref.from, target->second, kCites);
    }
  }
  pending_.clear();
}

DerivationReport derive_vertices(std::span<const BibEntry> entries, GraphStore& store) {
  Deriver deriver(store);
  for (const auto& entry : entries) deriver.add_vertices(entry);
  return deriver.report();
}

DerivationReport derive_edges(std::span<const BibEntry> entries, GraphStore& store) {
  Deriver deriver(store);
  for (const auto& entry : entries) deriver.add_edges(entry);
  deriver.resolve_references();
  return deriver.report();
}

}  // namespace graphcomm::ingest
