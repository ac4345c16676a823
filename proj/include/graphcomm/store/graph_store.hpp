#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "graphcomm/store/records.hpp"

namespace graphcomm {

class GraphView;

// In-memory property-graph store: vertex and edge collections, per-vertex
// adjacency buckets keyed by edge collection, cascade deletion, and a
// JSON-lines directory format.
//
// Canonical order: collections in creation order, records in insertion order
// within a collection. This order survives save/load and is what algorithms
// use as "stable vertex order".
//
// Not internally synchronized. Concurrent const access is safe; mutations
// need exclusive access.
class GraphStore {
 public:
  struct Neighbor {
    const EdgeRecord* edge;
    const VertexRecord* vertex;
  };

  GraphStore() = default;
  GraphStore(GraphStore&&) noexcept = default;
  GraphStore& operator=(GraphStore&&) noexcept = default;
  GraphStore(const GraphStore&) = delete;
  GraphStore& operator=(const GraphStore&) = delete;

  void create_collection(std::string_view name, CollectionKind kind);
  bool has_collection(std::string_view name) const;
  std::optional<CollectionKind> collection_kind(std::string_view name) const;
  std::vector<std::string> collection_names() const;
  std::vector<std::string> collection_names(CollectionKind kind) const;
  std::size_t collection_size(std::string_view name) const;

  // An empty key requests an auto-assigned, monotonically increasing decimal
  // key. Returns the new handle.
  std::string insert_vertex(std::string_view collection, std::string_view key,
                            Json attributes = Json::object());
  std::string insert_edge(std::string_view collection, std::string_view from,
                          std::string_view to, double weight = 1.0,
                          std::optional<std::string> label = std::nullopt,
                          std::string_view key = {});

  // Removes the vertex and every incident edge; returns the number of edges
  // removed (a self-loop counts once).
  std::size_t delete_vertex(std::string_view handle);
  void delete_edge(std::string_view handle);

  const VertexRecord* find_vertex(std::string_view handle) const;
  const VertexRecord& vertex(std::string_view handle) const;
  const EdgeRecord* find_edge(std::string_view handle) const;
  const EdgeRecord& edge(std::string_view handle) const;

  void set_vertex_attribute(std::string_view handle, std::string_view field,
                            Json value);

  // Incident edges of `handle` in the requested direction, each paired with
  // the opposite endpoint. With a graph, only its edge collections count.
  // Order: edge collection order, then edge insertion order; a self-loop is
  // reported twice for kAny.
  std::vector<Neighbor> neighbors(std::string_view handle, Direction direction,
                                  const NamedGraph* graph = nullptr) const;
  std::size_t degree(std::string_view handle, Direction direction,
                     const NamedGraph* graph = nullptr) const;

  void define_graph(NamedGraph graph);
  bool has_graph(std::string_view name) const;
  const NamedGraph& graph(std::string_view name) const;
  const std::vector<NamedGraph>& graphs() const { return graphs_; }

  std::size_t vertex_count() const { return live_vertices_; }
  std::size_t edge_count() const { return live_edges_; }

  void for_each_vertex(const std::function<void(const VertexRecord&)>& fn) const;
  void for_each_vertex(std::string_view collection,
                       const std::function<void(const VertexRecord&)>& fn) const;
  void for_each_edge(const std::function<void(const EdgeRecord&)>& fn) const;
  void for_each_edge(std::string_view collection,
                     const std::function<void(const EdgeRecord&)>& fn) const;

  // Full-scan integrity check. Returns human-readable problems; empty when the
  // store has no dangling edges and adjacency buckets match the edge table.
  std::vector<std::string> check_integrity() const;

  // One <collection>.jsonl per collection plus manifest.json.
  void save(const std::filesystem::path& directory) const;
  static GraphStore load(const std::filesystem::path& directory);

 private:
  friend class GraphView;

  using Slot = std::uint32_t;
  using CollectionId = std::uint32_t;

  struct AdjacencyBucket {
    CollectionId collection;
    std::vector<Slot> out;  // edge slots, insertion order
    std::vector<Slot> in;
  };

  struct VertexSlot {
    VertexRecord record;
    bool alive = true;
    std::vector<AdjacencyBucket> buckets;
  };

  struct EdgeSlot {
    EdgeRecord record;
    bool alive = true;
    Slot from_slot = 0;
    Slot to_slot = 0;
    CollectionId collection = 0;
  };

  struct Collection {
    std::string name;
    CollectionKind kind;
    std::vector<Slot> members;  // insertion order; may contain dead slots
    std::size_t live = 0;
  };

  const Collection& require_collection(std::string_view name,
                                       CollectionKind kind) const;
  CollectionId collection_id(std::string_view name) const;
  Slot require_vertex_slot(std::string_view handle) const;
  std::string next_key(std::string_view collection);
  void note_key(std::string_view key);
  void unlink_edge(Slot edge_slot);
  std::vector<CollectionId> graph_filter(const NamedGraph* graph) const;

  std::vector<Collection> collections_;
  std::unordered_map<std::string, CollectionId> collection_index_;
  std::vector<VertexSlot> vertices_;
  std::vector<EdgeSlot> edges_;
  std::unordered_map<std::string, Slot> vertex_index_;
  std::unordered_map<std::string, Slot> edge_index_;
  std::vector<NamedGraph> graphs_;
  std::uint64_t next_auto_key_ = 1;
  std::size_t live_vertices_ = 0;
  std::size_t live_edges_ = 0;
};

// Rejects attribute trees outside the supported shape: strings, numbers,
// booleans, null, lists of these, and one level of nested maps. Names
// starting with '_' are reserved.
void validate_attributes(const Json& attributes);

}  // namespace graphcomm
