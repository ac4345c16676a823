#include "graphcomm/analytics/components.hpp"

#include <algorithm>
#include <numeric>

namespace graphcomm::analytics {

namespace {

VertexId find_root(std::vector<VertexId>& parent, VertexId x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

lpa::Partition to_partition(const GraphView& view, const std::vector<VertexId>& ids) {
  std::vector<std::string> handles;
  std::vector<CommunityId> labels;
  handles.reserve(ids.size());
  labels.reserve(ids.size());
  for (VertexId v = 0; v < ids.size(); ++v) {
    handles.push_back(view.handle(v));
    labels.push_back(ids[v]);
  }
  return lpa::Partition(std::move(handles), std::move(labels));
}

}  // namespace

std::vector<VertexId> weak_component_ids(const GraphView& view) {
  const std::size_t n = view.vertex_count();
  std::vector<VertexId> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (EdgeId e = 0; e < view.edge_count(); ++e) {
    VertexId a = find_root(parent, view.edge(e).from);
    VertexId b = find_root(parent, view.edge(e).to);
    if (a == b) continue;
    // Smaller ordinal becomes the root, so the root is the component minimum.
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
  std::vector<VertexId> ids(n);
  for (VertexId v = 0; v < n; ++v) ids[v] = find_root(parent, v);
  return ids;
}

std::vector<VertexId> strong_component_ids(const GraphView& view) {
  // Iterative Tarjan.
  const std::size_t n = view.vertex_count();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited);
  std::vector<std::size_t> low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<VertexId> stack;
  std::vector<VertexId> ids(n, 0);
  std::vector<std::pair<VertexId, std::size_t>> call;  // vertex, next adjacency position
  std::size_t counter = 0;

  for (VertexId root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      auto out = view.adjacent(v, Direction::kOutbound);
      if (pos < out.size()) {
        const VertexId w = out[pos++].neighbor;
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const VertexId done = v;
      call.pop_back();
      if (!call.empty()) {
        const VertexId parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        const auto begin = std::find(stack.rbegin(), stack.rend(), done).base() - 1;
        const VertexId id = *std::min_element(begin, stack.end());
        for (auto it = begin; it != stack.end(); ++it) {
          ids[*it] = id;
          on_stack[*it] = false;
        }
        stack.erase(begin, stack.end());
      }
    }
  }
  return ids;
}

std::size_t component_count(const std::vector<VertexId>& ids) {
  std::size_t count = 0;
  for (VertexId v = 0; v < ids.size(); ++v) {
    if (ids[v] == v) ++count;
  }
  return count;
}

lpa::Partition weakly_connected_components(const GraphView& view) {
  return to_partition(view, weak_component_ids(view));
}

lpa::Partition strongly_connected_components(const GraphView& view) {
  return to_partition(view, strong_component_ids(view));
}

}  // namespace graphcomm::analytics
