#include "graphcomm/traversal/traversal.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "graphcomm/error.hpp"

namespace graphcomm::traversal {

namespace {

bool in_graph(const GraphStore& store, const VertexRecord& v, const NamedGraph& graph) {
  const auto& vc = graph.vertex_collections;
  if (std::find(vc.begin(), vc.end(), v.collection) != vc.end()) return true;
  return store.degree(v.handle, Direction::kAny, &graph) > 0;
}

class Collector {
 public:
  Collector(TraversalResult& result, std::size_t cap) : result_(result), cap_(cap) {}

  // Adds a whole path or nothing; false once the cap would be exceeded.
  bool add_path(std::span<const VertexRecord* const> vertices,
                std::span<const EdgeRecord* const> edges) {
    std::size_t fresh = 0;
    for (const auto* v : vertices) {
      if (v != result_.start_node && !seen_vertices_.contains(v)) ++fresh;
    }
    if (fresh > cap_ - non_start_) {
      result_.truncated = true;
      return false;
    }
    for (const auto* v : vertices) add_vertex(v);
    for (const auto* e : edges) {
      if (seen_edges_.insert(e).second) result_.edges.push_back(e);
    }
    return true;
  }

  bool add_vertex(const VertexRecord* v) {
    if (!seen_vertices_.insert(v).second) return true;
    if (v != result_.start_node) {
      if (non_start_ == cap_) {
        seen_vertices_.erase(v);
        result_.truncated = true;
        return false;
      }
      ++non_start_;
    }
    result_.vertices.push_back(v);
    return true;
  }

  void add_edge(const EdgeRecord* e) {
    if (seen_edges_.insert(e).second) result_.edges.push_back(e);
  }

 private:
  TraversalResult& result_;
  std::size_t cap_;
  std::size_t non_start_ = 0;
  std::unordered_set<const VertexRecord*> seen_vertices_;
  std::unordered_set<const EdgeRecord*> seen_edges_;
};

struct Frame {
  std::vector<GraphStore::Neighbor> next;
  std::size_t pos = 0;
};

void enumerate_paths(const GraphStore& store, const NamedGraph& graph,
                     const TraversalSpec& spec, const auto& admit,
                     TraversalResult& result) {
  Collector collector(result, spec.vertex_cap);
  std::vector<const VertexRecord*> path{result.start_node};
  std::vector<const EdgeRecord*> path_edges;
  std::unordered_set<const VertexRecord*> on_path{result.start_node};
  std::vector<Frame> stack;
  std::size_t expansions = 0;

  if (spec.min_depth == 0 && !collector.add_path(path, path_edges)) return;
  if (spec.max_depth == 0) return;
  stack.push_back({store.neighbors(result.start_node->handle, spec.direction, &graph)});

  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.pos == top.next.size()) {
      stack.pop_back();
      if (!path_edges.empty()) {
        on_path.erase(path.back());
        path.pop_back();
        path_edges.pop_back();
      }
      continue;
    }
    const auto [edge, vertex] = top.next[top.pos++];
    if (on_path.contains(vertex) || !admit(*vertex)) continue;
    if (++expansions > spec.max_expansions) {
      result.truncated = true;
      return;
    }
    path.push_back(vertex);
    path_edges.push_back(edge);
    on_path.insert(vertex);
    if (path_edges.size() >= spec.min_depth && !collector.add_path(path, path_edges)) {
      return;
    }
    if (path_edges.size() < spec.max_depth) {
      stack.push_back({store.neighbors(vertex->handle, spec.direction, &graph)});
    } else {
      on_path.erase(vertex);
      path.pop_back();
      path_edges.pop_back();
    }
  }
}

void by_distance(const GraphStore& store, const NamedGraph& graph,
                 const TraversalSpec& spec, const auto& admit, TraversalResult& result) {
  // Pass 1: shortest distances up to max_depth.
  std::unordered_map<const VertexRecord*, std::size_t> dist{{result.start_node, 0}};
  std::vector<const VertexRecord*> order{result.start_node};
  std::deque<const VertexRecord*> queue{result.start_node};
  while (!queue.empty()) {
    const VertexRecord* v = queue.front();
    queue.pop_front();
    const std::size_t d = dist.at(v);
    if (d == spec.max_depth) continue;
    for (const auto& [edge, w] : store.neighbors(v->handle, spec.direction, &graph)) {
      if (dist.contains(w) || !admit(*w)) continue;
      dist.emplace(w, d + 1);
      order.push_back(w);
      queue.push_back(w);
    }
  }

  // Pass 2: keep vertices in range and the edges linking consecutive layers.
  Collector collector(result, spec.vertex_cap);
  std::unordered_set<const VertexRecord*> kept;
  for (const auto* v : order) {
    const std::size_t d = dist.at(v);
    if (v != result.start_node && (d < spec.min_depth || d > spec.max_depth)) continue;
    if (!collector.add_vertex(v)) break;
    kept.insert(v);
  }
  for (const auto* v : order) {
    if (!kept.contains(v)) continue;
    const std::size_t d = dist.at(v);
    for (const auto& [edge, w] : store.neighbors(v->handle, spec.direction, &graph)) {
      if (kept.contains(w) && dist.at(w) == d + 1) collector.add_edge(edge);
    }
  }
}

}  // namespace

TraversalResult traverse(const GraphStore& store, const TraversalSpec& spec) {
  if (spec.min_depth > spec.max_depth) {
    throw Error(ErrorCode::kInvalidArgument,
                "min_depth " + std::to_string(spec.min_depth) + " exceeds max_depth " +
                    std::to_string(spec.max_depth));
  }
  if (spec.vertex_cap == 0) {
    throw Error(ErrorCode::kInvalidArgument, "vertex_cap must be at least 1");
  }
  if (!store.has_graph(spec.graph)) {
    throw Error(ErrorCode::kNotFound, "unknown graph '" + spec.graph + "'");
  }
  const NamedGraph& graph = store.graph(spec.graph);
  const VertexRecord* start = store.find_vertex(spec.start);
  if (start == nullptr || !in_graph(store, *start, graph)) {
    throw Error(ErrorCode::kNotFound,
                "vertex '" + spec.start + "' not found in graph '" + spec.graph + "'");
  }

  TraversalResult result;
  result.start_node = start;
  const auto admit = [&](const VertexRecord& v) {
    return !spec.community_filter ||
           v.community(spec.community_field) == spec.community_filter;
  };
  if (spec.distance_mode) {
    by_distance(store, graph, spec, admit, result);
  } else {
    enumerate_paths(store, graph, spec, admit, result);
  }
  result.communities = distinct_communities(result.vertices, spec.community_field);
  return result;
}

std::vector<CommunityId> distinct_communities(std::span<const VertexRecord* const> vertices,
                                              std::string_view field) {
  std::vector<CommunityId> out;
  out.reserve(vertices.size());
  for (const auto* v : vertices) {
    if (auto c = v->community(field)) out.push_back(*c);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace graphcomm::traversal
