#include "graphcomm/store/graph_view.hpp"

#include <algorithm>
#include <limits>

#include "graphcomm/error.hpp"

namespace graphcomm {

namespace {
constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();
}

GraphView GraphView::of_graph(const GraphStore& store, std::string_view graph_name) {
  return of_graph(store, store.graph(graph_name));
}

GraphView GraphView::of_graph(const GraphStore& store, const NamedGraph& graph) {
  GraphView view;
  view.name_ = graph.name;
  view.build(store, graph.edge_collections, graph.vertex_collections, false);
  return view;
}

GraphView GraphView::whole_store(const GraphStore& store) {
  GraphView view;
  view.build(store, store.collection_names(CollectionKind::kEdge), {}, true);
  return view;
}

void GraphView::build(const GraphStore& store,
                      const std::vector<std::string>& edge_collections,
                      const std::vector<std::string>& vertex_collections,
                      bool all_vertices) {
  store_ = &store;

  std::vector<GraphStore::CollectionId> edge_ids;
  for (const auto& name : edge_collections) {
    const auto id = store.collection_id(name);
    if (store.collections_[id].kind != CollectionKind::kEdge) {
      throw Error(ErrorCode::kInvalidArgument,
                  "'" + name + "' is not an edge collection");
    }
    edge_ids.push_back(id);
  }
  std::sort(edge_ids.begin(), edge_ids.end());
  edge_ids.erase(std::unique(edge_ids.begin(), edge_ids.end()), edge_ids.end());

  std::vector<char> member(store.vertices_.size(), all_vertices ? 1 : 0);
  for (const auto& name : vertex_collections) {
    const auto id = store.collection_id(name);
    for (auto slot : store.collections_[id].members) member[slot] = 1;
  }
  for (auto cid : edge_ids) {
    for (auto slot : store.collections_[cid].members) {
      const auto& es = store.edges_[slot];
      if (!es.alive) continue;
      member[es.from_slot] = 1;
      member[es.to_slot] = 1;
    }
  }

  std::vector<std::uint32_t> vid_of_slot(store.vertices_.size(), kAbsent);
  for (const auto& c : store.collections_) {
    if (c.kind != CollectionKind::kVertex) continue;
    for (auto slot : c.members) {
      const auto& vs = store.vertices_[slot];
      if (!vs.alive || !member[slot]) continue;
      vid_of_slot[slot] = static_cast<VertexId>(vertices_.size());
      vertices_.push_back(&vs.record);
    }
  }
  index_.reserve(vertices_.size());
  for (VertexId v = 0; v < vertices_.size(); ++v) {
    index_.emplace(vertices_[v]->handle, v);
  }

  for (auto cid : edge_ids) {
    for (auto slot : store.collections_[cid].members) {
      const auto& es = store.edges_[slot];
      if (!es.alive) continue;
      edges_.push_back(ViewEdge{vid_of_slot[es.from_slot],
                                vid_of_slot[es.to_slot], es.record.weight,
                                &es.record});
    }
  }

  const std::size_t n = vertices_.size();
  auto fill = [&](Csr& csr, bool outgoing) {
    csr.offsets.assign(n + 1, 0);
    for (const auto& e : edges_) ++csr.offsets[(outgoing ? e.from : e.to) + 1];
    for (std::size_t v = 0; v < n; ++v) csr.offsets[v + 1] += csr.offsets[v];
    csr.entries.resize(edges_.size());
    std::vector<std::size_t> cursor(csr.offsets.begin(), csr.offsets.end() - 1);
    for (EdgeId id = 0; id < edges_.size(); ++id) {
      const auto& e = edges_[id];
      const VertexId owner = outgoing ? e.from : e.to;
      csr.entries[cursor[owner]++] = AdjEntry{outgoing ? e.to : e.from, id};
    }
  };
  fill(out_, true);
  fill(in_, false);

  any_.offsets.assign(n + 1, 0);
  any_.entries.resize(edges_.size() * 2);
  std::vector<std::size_t> out_slot(edges_.size());
  std::vector<std::size_t> in_slot(edges_.size());
  std::size_t pos = 0;
  for (VertexId v = 0; v < n; ++v) {
    any_.offsets[v] = pos;
    std::size_t i = out_.offsets[v];
    std::size_t j = in_.offsets[v];
    const std::size_t i_end = out_.offsets[v + 1];
    const std::size_t j_end = in_.offsets[v + 1];
    while (i < i_end || j < j_end) {
      if (j == j_end || (i < i_end && out_.entries[i].edge <= in_.entries[j].edge)) {
        out_slot[out_.entries[i].edge] = pos;
        any_.entries[pos++] = out_.entries[i++];
      } else {
        in_slot[in_.entries[j].edge] = pos;
        any_.entries[pos++] = in_.entries[j++];
      }
    }
  }
  any_.offsets[n] = pos;

  mirror_.resize(any_.entries.size());
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    mirror_[out_slot[e]] = in_slot[e];
    mirror_[in_slot[e]] = out_slot[e];
  }
}

std::optional<VertexId> GraphView::find(std::string_view handle) const {
  auto it = index_.find(handle);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VertexId GraphView::require(std::string_view handle) const {
  auto v = find(handle);
  if (!v) {
    throw Error(ErrorCode::kNotFound,
                "vertex '" + std::string(handle) + "' is not in graph" +
                    (name_.empty() ? std::string() : " '" + name_ + "'"));
  }
  return *v;
}

const GraphView::Csr& GraphView::csr(Direction direction) const {
  switch (direction) {
    case Direction::kOutbound: return out_;
    case Direction::kInbound: return in_;
    case Direction::kAny: return any_;
  }
  return any_;
}

std::span<const AdjEntry> GraphView::adjacent(VertexId v, Direction direction) const {
  const Csr& c = csr(direction);
  return {c.entries.data() + c.offsets[v], c.offsets[v + 1] - c.offsets[v]};
}

}  // namespace graphcomm
