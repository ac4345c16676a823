#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "graphcomm/store/graph_store.hpp"

namespace graphcomm {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct AdjEntry {
  VertexId neighbor;
  EdgeId edge;
};

struct ViewEdge {
  VertexId from;
  VertexId to;
  double weight;
  const EdgeRecord* record;
};

// Immutable compressed snapshot of a named graph (or the whole store) with
// dense vertex ids in canonical store order and dense edge ids in canonical
// edge order. Holds pointers into the store: valid until the store is
// mutated or destroyed.
class GraphView {
 public:
  static GraphView of_graph(const GraphStore& store, std::string_view graph_name);
  static GraphView of_graph(const GraphStore& store, const NamedGraph& graph);
  // Every vertex and every edge collection of the store.
  static GraphView whole_store(const GraphStore& store);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::string& name() const { return name_; }
  const GraphStore& store() const { return *store_; }

  const VertexRecord& vertex(VertexId v) const { return *vertices_[v]; }
  const std::string& handle(VertexId v) const { return vertices_[v]->handle; }
  std::optional<VertexId> find(std::string_view handle) const;
  VertexId require(std::string_view handle) const;

  const ViewEdge& edge(EdgeId e) const { return edges_[e]; }

  // kAny lists merge outgoing and incoming entries by edge id; a self-loop
  // appears twice (outgoing first).
  std::span<const AdjEntry> adjacent(VertexId v, Direction direction) const;
  std::size_t degree(VertexId v, Direction direction) const {
    return adjacent(v, direction).size();
  }

  // Slot layout of the kAny lists, used for exactly-once message delivery:
  // slot i in [any_offset(v), any_offset(v+1)) belongs to v, and mirror(i) is
  // the slot holding the same edge in the neighbor's list.
  std::size_t any_offset(VertexId v) const { return any_.offsets[v]; }
  std::size_t any_slot_count() const { return any_.entries.size(); }
  std::size_t mirror(std::size_t slot) const { return mirror_[slot]; }
  double slot_weight(std::size_t slot) const {
    return edges_[any_.entries[slot].edge].weight;
  }

 private:
  struct Csr {
    std::vector<std::size_t> offsets;
    std::vector<AdjEntry> entries;
  };

  GraphView() = default;
  void build(const GraphStore& store, const std::vector<std::string>& edge_collections,
             const std::vector<std::string>& vertex_collections, bool all_vertices);
  const Csr& csr(Direction direction) const;

  const GraphStore* store_ = nullptr;
  std::string name_;
  std::vector<const VertexRecord*> vertices_;
  std::unordered_map<std::string_view, VertexId> index_;
  std::vector<ViewEdge> edges_;
  Csr out_;
  Csr in_;
  Csr any_;
  std::vector<std::size_t> mirror_;
};

}  // namespace graphcomm
