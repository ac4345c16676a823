#include "graphcomm/store/graph_store.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "graphcomm/error.hpp"

namespace graphcomm {

namespace {

bool valid_collection_name(std::string_view name) {
  if (name.empty() || name.size() > 256) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_' || c == '-';
  });
}

bool valid_key(std::string_view key) {
  if (key.empty() || key.size() > 254) return false;
  return std::none_of(key.begin(), key.end(), [](char c) {
    return c == '/' || static_cast<unsigned char>(c) < 0x20;
  });
}

void check_attribute_value(const Json& value, int maps_allowed,
                           bool inside_list, const std::string& path) {
  if (value.is_primitive()) return;
  if (value.is_array()) {
    if (inside_list) {
      throw Error(ErrorCode::kInvalidArgument,
                  "attribute '" + path + "': nested lists are not supported");
    }
    for (const auto& item : value) {
      check_attribute_value(item, maps_allowed, true, path);
    }
    return;
  }
  if (maps_allowed == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "attribute '" + path + "': maps nest at most one level");
  }
  for (const auto& [name, item] : value.items()) {
    check_attribute_value(item, maps_allowed - 1, false, path + "." + name);
  }
}

}  // namespace

void validate_attributes(const Json& attributes) {
  if (!attributes.is_object()) {
    throw Error(ErrorCode::kInvalidArgument, "attributes must be a JSON object");
  }
  for (const auto& [name, value] : attributes.items()) {
    if (name.empty() || name.front() == '_') {
      throw Error(ErrorCode::kInvalidArgument,
                  "attribute name '" + name + "' is reserved");
    }
    check_attribute_value(value, 1, false, name);
  }
}

// ---------------------------------------------------------------------------
// Collections

void GraphStore::create_collection(std::string_view name, CollectionKind kind) {
  if (!valid_collection_name(name)) {
    throw Error(ErrorCode::kInvalidArgument,
                "invalid collection name '" + std::string(name) + "'");
  }
  if (collection_index_.contains(std::string(name))) {
    throw Error(ErrorCode::kAlreadyExists,
                "collection '" + std::string(name) + "' already exists");
  }
  collection_index_.emplace(std::string(name),
                            static_cast<CollectionId>(collections_.size()));
  collections_.push_back(Collection{std::string(name), kind, {}, 0});
}

bool GraphStore::has_collection(std::string_view name) const {
  return collection_index_.contains(std::string(name));
}

std::optional<CollectionKind> GraphStore::collection_kind(
    std::string_view name) const {
  auto it = collection_index_.find(std::string(name));
  if (it == collection_index_.end()) return std::nullopt;
  return collections_[it->second].kind;
}

std::vector<std::string> GraphStore::collection_names() const {
  std::vector<std::string> names;
  names.reserve(collections_.size());
  for (const auto& c : collections_) names.push_back(c.name);
  return names;
}

std::vector<std::string> GraphStore::collection_names(CollectionKind kind) const {
  std::vector<std::string> names;
  for (const auto& c : collections_) {
    if (c.kind == kind) names.push_back(c.name);
  }
  return names;
}

std::size_t GraphStore::collection_size(std::string_view name) const {
  return collections_[collection_id(name)].live;
}

GraphStore::CollectionId GraphStore::collection_id(std::string_view name) const {
  auto it = collection_index_.find(std::string(name));
  if (it == collection_index_.end()) {
    throw Error(ErrorCode::kNotFound,
                "unknown collection '" + std::string(name) + "'");
  }
  return it->second;
}

const GraphStore::Collection& GraphStore::require_collection(
    std::string_view name, CollectionKind kind) const {
  const Collection& c = collections_[collection_id(name)];
  if (c.kind != kind) {
    throw Error(ErrorCode::kInvalidArgument,
                "collection '" + c.name + "' is a " +
                    std::string(to_string(c.kind)) + " collection");
  }
  return c;
}

std::string GraphStore::next_key(std::string_view collection) {
  for (;;) {
    std::string key = std::to_string(next_auto_key_++);
    std::string handle = make_handle(collection, key);
    if (!vertex_index_.contains(handle) && !edge_index_.contains(handle)) {
      return key;
    }
  }
}

void GraphStore::note_key(std::string_view key) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), value);
  if (ec == std::errc() && ptr == key.data() + key.size() &&
      value >= next_auto_key_ && value < UINT64_MAX) {
    next_auto_key_ = value + 1;
  }
}

// ---------------------------------------------------------------------------
// Mutation

std::string GraphStore::insert_vertex(std::string_view collection,
                                      std::string_view key, Json attributes) {
  const CollectionId cid = collection_id(collection);
  require_collection(collection, CollectionKind::kVertex);
  validate_attributes(attributes);

  std::string actual_key = key.empty() ? next_key(collection) : std::string(key);
  if (!valid_key(actual_key)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid key '" + actual_key + "'");
  }
  std::string handle = make_handle(collection, actual_key);
  if (vertex_index_.contains(handle)) {
    throw Error(ErrorCode::kAlreadyExists,
                "duplicate key '" + actual_key + "' in collection '" +
                    std::string(collection) + "'");
  }
  if (!key.empty()) note_key(actual_key);

  const auto slot = static_cast<Slot>(vertices_.size());
  VertexSlot vs;
  vs.record.handle = handle;
  vs.record.key = std::move(actual_key);
  vs.record.collection = std::string(collection);
  vs.record.attributes = std::move(attributes);
  vertices_.push_back(std::move(vs));
  vertex_index_.emplace(handle, slot);
  collections_[cid].members.push_back(slot);
  ++collections_[cid].live;
  ++live_vertices_;
  return handle;
}

std::string GraphStore::insert_edge(std::string_view collection,
                                    std::string_view from, std::string_view to,
                                    double weight,
                                    std::optional<std::string> label,
                                    std::string_view key) {
  const CollectionId cid = collection_id(collection);
  require_collection(collection, CollectionKind::kEdge);
  if (!(weight > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "edge weight must be positive");
  }
  auto from_it = vertex_index_.find(std::string(from));
  if (from_it == vertex_index_.end()) {
    throw Error(ErrorCode::kIntegrity,
                "dangling endpoint: _from '" + std::string(from) + "' does not exist");
  }
  auto to_it = vertex_index_.find(std::string(to));
  if (to_it == vertex_index_.end()) {
    throw Error(ErrorCode::kIntegrity,
                "dangling endpoint: _to '" + std::string(to) + "' does not exist");
  }

  std::string actual_key = key.empty() ? next_key(collection) : std::string(key);
  if (!valid_key(actual_key)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid key '" + actual_key + "'");
  }
  std::string handle = make_handle(collection, actual_key);
  if (edge_index_.contains(handle)) {
    throw Error(ErrorCode::kAlreadyExists,
                "duplicate key '" + actual_key + "' in collection '" +
                    std::string(collection) + "'");
  }
  if (!key.empty()) note_key(actual_key);

  const auto slot = static_cast<Slot>(edges_.size());
  EdgeSlot es;
  es.record.handle = handle;
  es.record.key = std::move(actual_key);
  es.record.collection = std::string(collection);
  es.record.from = std::string(from);
  es.record.to = std::string(to);
  es.record.label = std::move(label);
  es.record.weight = weight;
  es.from_slot = from_it->second;
  es.to_slot = to_it->second;
  es.collection = cid;
  edges_.push_back(std::move(es));
  edge_index_.emplace(handle, slot);
  collections_[cid].members.push_back(slot);
  ++collections_[cid].live;
  ++live_edges_;

  auto bucket_for = [cid](VertexSlot& v) -> AdjacencyBucket& {
    for (auto& b : v.buckets) {
      if (b.collection == cid) return b;
    }
    v.buckets.push_back(AdjacencyBucket{cid, {}, {}});
    return v.buckets.back();
  };
  bucket_for(vertices_[from_it->second]).out.push_back(slot);
  bucket_for(vertices_[to_it->second]).in.push_back(slot);
  return handle;
}

void GraphStore::unlink_edge(Slot edge_slot) {
  EdgeSlot& es = edges_[edge_slot];
  auto erase_from = [&](VertexSlot& v, bool outgoing) {
    for (auto& b : v.buckets) {
      if (b.collection != es.collection) continue;
      auto& list = outgoing ? b.out : b.in;
      list.erase(std::remove(list.begin(), list.end(), edge_slot), list.end());
    }
  };
  erase_from(vertices_[es.from_slot], true);
  erase_from(vertices_[es.to_slot], false);
  es.alive = false;
  edge_index_.erase(es.record.handle);
  --collections_[es.collection].live;
  --live_edges_;
}

void GraphStore::delete_edge(std::string_view handle) {
  auto it = edge_index_.find(std::string(handle));
  if (it == edge_index_.end()) {
    throw Error(ErrorCode::kNotFound, "unknown edge '" + std::string(handle) + "'");
  }
  unlink_edge(it->second);
}

std::size_t GraphStore::delete_vertex(std::string_view handle) {
  const Slot slot = require_vertex_slot(handle);
  std::vector<Slot> incident;
  for (const auto& b : vertices_[slot].buckets) {
    incident.insert(incident.end(), b.out.begin(), b.out.end());
    incident.insert(incident.end(), b.in.begin(), b.in.end());
  }
  std::sort(incident.begin(), incident.end());
  incident.erase(std::unique(incident.begin(), incident.end()), incident.end());
  for (Slot e : incident) unlink_edge(e);

  VertexSlot& vs = vertices_[slot];
  vs.alive = false;
  vs.buckets.clear();
  vertex_index_.erase(vs.record.handle);
  --collections_[collection_id(vs.record.collection)].live;
  --live_vertices_;
  return incident.size();
}

void GraphStore::set_vertex_attribute(std::string_view handle,
                                      std::string_view field, Json value) {
  const Slot slot = require_vertex_slot(handle);
  Json probe = Json::object();
  probe[std::string(field)] = value;
  validate_attributes(probe);
  vertices_[slot].record.attributes[std::string(field)] = std::move(value);
}

// ---------------------------------------------------------------------------
// Lookup

GraphStore::Slot GraphStore::require_vertex_slot(std::string_view handle) const {
  auto it = vertex_index_.find(std::string(handle));
  if (it == vertex_index_.end()) {
    throw Error(ErrorCode::kNotFound, "unknown vertex '" + std::string(handle) + "'");
  }
  return it->second;
}

const VertexRecord* GraphStore::find_vertex(std::string_view handle) const {
  auto it = vertex_index_.find(std::string(handle));
  return it == vertex_index_.end() ? nullptr : &vertices_[it->second].record;
}

const VertexRecord& GraphStore::vertex(std::string_view handle) const {
  return vertices_[require_vertex_slot(handle)].record;
}

const EdgeRecord* GraphStore::find_edge(std::string_view handle) const {
  auto it = edge_index_.find(std::string(handle));
  return it == edge_index_.end() ? nullptr : &edges_[it->second].record;
}

const EdgeRecord& GraphStore::edge(std::string_view handle) const {
  const EdgeRecord* e = find_edge(handle);
  if (e == nullptr) {
    throw Error(ErrorCode::kNotFound, "unknown edge '" + std::string(handle) + "'");
  }
  return *e;
}

std::vector<GraphStore::CollectionId> GraphStore::graph_filter(
    const NamedGraph* graph) const {
  std::vector<CollectionId> ids;
  if (graph == nullptr) {
    for (CollectionId i = 0; i < collections_.size(); ++i) {
      if (collections_[i].kind == CollectionKind::kEdge) ids.push_back(i);
    }
  } else {
    for (const auto& name : graph->edge_collections) {
      ids.push_back(collection_id(name));
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  }
  return ids;
}

std::vector<GraphStore::Neighbor> GraphStore::neighbors(
    std::string_view handle, Direction direction,
    const NamedGraph* graph) const {
  const Slot slot = require_vertex_slot(handle);
  const std::vector<CollectionId> allowed = graph_filter(graph);
  const VertexSlot& vs = vertices_[slot];

  std::vector<Neighbor> result;
  for (CollectionId cid : allowed) {
    const AdjacencyBucket* bucket = nullptr;
    for (const auto& b : vs.buckets) {
      if (b.collection == cid) bucket = &b;
    }
    if (bucket == nullptr) continue;

    auto push_out = [&](Slot e) {
      result.push_back({&edges_[e].record, &vertices_[edges_[e].to_slot].record});
    };
    auto push_in = [&](Slot e) {
      result.push_back({&edges_[e].record, &vertices_[edges_[e].from_slot].record});
    };
    if (direction == Direction::kOutbound) {
      for (Slot e : bucket->out) push_out(e);
    } else if (direction == Direction::kInbound) {
      for (Slot e : bucket->in) push_in(e);
    } else {
      // Both lists are ascending in slot order, which within one collection is
      // insertion order. A self-loop shows up once in each list.
      std::size_t i = 0, j = 0;
      while (i < bucket->out.size() || j < bucket->in.size()) {
        if (j == bucket->in.size() ||
            (i < bucket->out.size() && bucket->out[i] <= bucket->in[j])) {
          push_out(bucket->out[i++]);
        } else {
          push_in(bucket->in[j++]);
        }
      }
    }
  }
  return result;
}

std::size_t GraphStore::degree(std::string_view handle, Direction direction,
                               const NamedGraph* graph) const {
  const Slot slot = require_vertex_slot(handle);
  const std::vector<CollectionId> allowed = graph_filter(graph);
  std::size_t d = 0;
  for (const auto& b : vertices_[slot].buckets) {
    if (!std::binary_search(allowed.begin(), allowed.end(), b.collection)) continue;
    if (direction != Direction::kInbound) d += b.out.size();
    if (direction != Direction::kOutbound) d += b.in.size();
  }
  return d;
}

// ---------------------------------------------------------------------------
// Named graphs

void GraphStore::define_graph(NamedGraph graph) {
  if (graph.name.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "graph name must not be empty");
  }
  if (has_graph(graph.name)) {
    throw Error(ErrorCode::kAlreadyExists,
                "graph '" + graph.name + "' already exists");
  }
  for (const auto& name : graph.edge_collections) {
    require_collection(name, CollectionKind::kEdge);
  }
  for (const auto& name : graph.vertex_collections) {
    require_collection(name, CollectionKind::kVertex);
  }
  graphs_.push_back(std::move(graph));
}

bool GraphStore::has_graph(std::string_view name) const {
  return std::any_of(graphs_.begin(), graphs_.end(),
                     [&](const NamedGraph& g) { return g.name == name; });
}

const NamedGraph& GraphStore::graph(std::string_view name) const {
  for (const auto& g : graphs_) {
    if (g.name == name) return g;
  }
  throw Error(ErrorCode::kNotFound, "unknown graph '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Iteration

void GraphStore::for_each_vertex(
    const std::function<void(const VertexRecord&)>& fn) const {
  for (const auto& c : collections_) {
    if (c.kind != CollectionKind::kVertex) continue;
    for (Slot s : c.members) {
      if (vertices_[s].alive) fn(vertices_[s].record);
    }
  }
}

void GraphStore::for_each_vertex(
    std::string_view collection,
    const std::function<void(const VertexRecord&)>& fn) const {
  const Collection& c = require_collection(collection, CollectionKind::kVertex);
  for (Slot s : c.members) {
    if (vertices_[s].alive) fn(vertices_[s].record);
  }
}

void GraphStore::for_each_edge(
    const std::function<void(const EdgeRecord&)>& fn) const {
  for (const auto& c : collections_) {
    if (c.kind != CollectionKind::kEdge) continue;
    for (Slot s : c.members) {
      if (edges_[s].alive) fn(edges_[s].record);
    }
  }
}

void GraphStore::for_each_edge(
    std::string_view collection,
    const std::function<void(const EdgeRecord&)>& fn) const {
  const Collection& c = require_collection(collection, CollectionKind::kEdge);
  for (Slot s : c.members) {
    if (edges_[s].alive) fn(edges_[s].record);
  }
}

std::vector<std::string> GraphStore::check_integrity() const {
  std::vector<std::string> problems;
  std::size_t expected_out = 0;
  for (Slot s = 0; s < edges_.size(); ++s) {
    const EdgeSlot& es = edges_[s];
    if (!es.alive) continue;
    ++expected_out;
    if (!vertex_index_.contains(es.record.from)) {
      problems.push_back("edge " + es.record.handle + " has dangling _from " +
                         es.record.from);
    }
    if (!vertex_index_.contains(es.record.to)) {
      problems.push_back("edge " + es.record.handle + " has dangling _to " +
                         es.record.to);
    }
  }
  std::size_t seen_out = 0;
  std::size_t seen_in = 0;
  for (Slot v = 0; v < vertices_.size(); ++v) {
    const VertexSlot& vs = vertices_[v];
    if (!vs.alive) continue;
    for (const auto& b : vs.buckets) {
      for (Slot e : b.out) {
        ++seen_out;
        if (!edges_[e].alive || edges_[e].from_slot != v) {
          problems.push_back("stale out-adjacency on " + vs.record.handle);
        }
      }
      for (Slot e : b.in) {
        ++seen_in;
        if (!edges_[e].alive || edges_[e].to_slot != v) {
          problems.push_back("stale in-adjacency on " + vs.record.handle);
        }
      }
    }
  }
  if (seen_out != expected_out || seen_in != expected_out) {
    problems.push_back("adjacency size mismatch");
  }
  return problems;
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

namespace fs = std::filesystem;

constexpr std::string_view kManifestFile = "manifest.json";

void write_line(std::ofstream& out, const Json& obj, const fs::path& path) {
  out << obj.dump(-1, ' ', false, Json::error_handler_t::replace) << '\n';
  if (!out) {
    throw Error(ErrorCode::kIo, "failed writing " + path.string());
  }
}

std::string require_string(const Json& obj, const char* field,
                           const fs::path& path, std::size_t line) {
  auto it = obj.find(field);
  if (it == obj.end() || !it->is_string()) {
    throw Error(ErrorCode::kParse, path.string() + ":" + std::to_string(line) +
                                       ": missing string field " + field);
  }
  return it->get<std::string>();
}

}  // namespace

void GraphStore::save(const fs::path& directory) const {
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) {
    throw Error(ErrorCode::kIo,
                "cannot create " + directory.string() + ": " + ec.message());
  }

  Json manifest = Json::object();
  manifest["format"] = "graphcomm-store";
  manifest["version"] = 1;
  manifest["next_key"] = next_auto_key_;
  manifest["collections"] = Json::array();
  for (const auto& c : collections_) {
    manifest["collections"].push_back(
        {{"name", c.name}, {"kind", std::string(to_string(c.kind))},
         {"file", c.name + ".jsonl"}});
  }
  manifest["graphs"] = Json::array();
  for (const auto& g : graphs_) {
    manifest["graphs"].push_back({{"name", g.name},
                                  {"edge_collections", g.edge_collections},
                                  {"vertex_collections", g.vertex_collections}});
  }

  for (const auto& c : collections_) {
    const fs::path path = directory / (c.name + ".jsonl");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string());
    for (Slot s : c.members) {
      if (c.kind == CollectionKind::kVertex) {
        const VertexSlot& vs = vertices_[s];
        if (!vs.alive) continue;
        Json line = Json::object();
        line["_key"] = vs.record.key;
        line["_id"] = vs.record.handle;
        for (const auto& [name, value] : vs.record.attributes.items()) {
          line[name] = value;
        }
        write_line(out, line, path);
      } else {
        const EdgeSlot& es = edges_[s];
        if (!es.alive) continue;
        Json line = Json::object();
        line["_key"] = es.record.key;
        line["_id"] = es.record.handle;
        line["_from"] = es.record.from;
        line["_to"] = es.record.to;
        if (es.record.label) line["label"] = *es.record.label;
        if (es.record.weight != 1.0) line["weight"] = es.record.weight;
        write_line(out, line, path);
      }
    }
  }

  const fs::path manifest_path = directory / kManifestFile;
  std::ofstream out(manifest_path, std::ios::binary | std::ios::trunc);
  out << manifest.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + manifest_path.string());
}

GraphStore GraphStore::load(const fs::path& directory) {
  const fs::path manifest_path = directory / kManifestFile;
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot read " + manifest_path.string());
  }
  Json manifest;
  try {
    manifest = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParse, manifest_path.string() + ": " + e.what());
  }

  GraphStore store;
  struct Pending {
    std::string name;
    CollectionKind kind;
    fs::path path;
  };
  std::vector<Pending> pending;
  for (const auto& c : manifest.at("collections")) {
    const std::string name = c.at("name").get<std::string>();
    const std::string kind_text = c.at("kind").get<std::string>();
    CollectionKind kind;
    if (kind_text == "vertex") {
      kind = CollectionKind::kVertex;
    } else if (kind_text == "edge") {
      kind = CollectionKind::kEdge;
    } else {
      throw Error(ErrorCode::kParse, manifest_path.string() +
                                         ": unknown collection kind '" +
                                         kind_text + "'");
    }
    store.create_collection(name, kind);
    pending.push_back({name, kind, directory / c.value("file", name + ".jsonl")});
  }

  // Vertices first so every edge line can be checked against them.
  for (CollectionKind pass : {CollectionKind::kVertex, CollectionKind::kEdge}) {
    for (const auto& p : pending) {
      if (p.kind != pass) continue;
      std::ifstream file(p.path, std::ios::binary);
      if (!file) throw Error(ErrorCode::kIo, "cannot read " + p.path.string());
      std::string text;
      std::size_t line_no = 0;
      while (std::getline(file, text)) {
        ++line_no;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        if (text.find_first_not_of(" \t") == std::string::npos) continue;
        Json obj;
        try {
          obj = Json::parse(text);
        } catch (const Json::parse_error& e) {
          throw Error(ErrorCode::kParse, p.path.string() + ":" +
                                             std::to_string(line_no) + ": " +
                                             e.what());
        }
        if (!obj.is_object()) {
          throw Error(ErrorCode::kParse, p.path.string() + ":" +
                                             std::to_string(line_no) +
                                             ": expected a JSON object");
        }
        const std::string key = require_string(obj, "_key", p.path, line_no);
        try {
          if (pass == CollectionKind::kVertex) {
            Json attributes = Json::object();
            for (const auto& [name, value] : obj.items()) {
              if (name != "_key" && name != "_id" && name != "_rev") {
                attributes[name] = value;
              }
            }
            store.insert_vertex(p.name, key, std::move(attributes));
          } else {
            const std::string from = require_string(obj, "_from", p.path, line_no);
            const std::string to = require_string(obj, "_to", p.path, line_no);
            std::optional<std::string> label;
            if (auto it = obj.find("label"); it != obj.end() && it->is_string()) {
              label = it->get<std::string>();
            }
            double weight = 1.0;
            if (auto it = obj.find("weight"); it != obj.end()) {
              if (!it->is_number()) {
                throw Error(ErrorCode::kParse, "weight must be a number");
              }
              weight = it->get<double>();
            }
            store.insert_edge(p.name, from, to, weight, std::move(label), key);
          }
        } catch (const Error& e) {
          if (e.code() == ErrorCode::kParse &&
              std::string_view(e.what()).starts_with(p.path.string())) {
            throw;
          }
          throw Error(ErrorCode::kParse, p.path.string() + ":" +
                                             std::to_string(line_no) + ": " +
                                             e.what());
        }
      }
    }
  }

  for (const auto& g : manifest.value("graphs", Json::array())) {
    NamedGraph graph;
    graph.name = g.at("name").get<std::string>();
    graph.edge_collections =
        g.value("edge_collections", std::vector<std::string>{});
    graph.vertex_collections =
        g.value("vertex_collections", std::vector<std::string>{});
    store.define_graph(std::move(graph));
  }
  if (auto it = manifest.find("next_key"); it != manifest.end()) {
    store.next_auto_key_ =
        std::max(store.next_auto_key_, it->get<std::uint64_t>());
  }
  return store;
}

}  // namespace graphcomm
