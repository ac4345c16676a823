#include "graphcomm/analytics/metrics.hpp"

#include <algorithm>
#include <unordered_map>

#include "graphcomm/error.hpp"

namespace graphcomm::analytics {

SimpleGraph::SimpleGraph(const GraphView& view) {
  const std::size_t n = view.vertex_count();
  offsets_.assign(n + 1, 0);
  std::vector<std::pair<VertexId, double>> row;
  for (VertexId v = 0; v < n; ++v) {
    row.clear();
    for (const auto& entry : view.adjacent(v, Direction::kAny)) {
      if (entry.neighbor != v) row.emplace_back(entry.neighbor, view.edge(entry.edge).weight);
    }
    std::sort(row.begin(), row.end());
    for (std::size_t i = 0; i < row.size();) {
      const VertexId u = row[i].first;
      double w = row[i].second;
      for (; i < row.size() && row[i].first == u; ++i) w = std::max(w, row[i].second);
      neighbors_.push_back(u);
      weights_.push_back(w);
      total_weight_ += w;
    }
    offsets_[v + 1] = neighbors_.size();
  }
  total_weight_ /= 2.0;
}

bool SimpleGraph::adjacent(VertexId a, VertexId b) const {
  auto list = neighbors(a);
  return std::binary_search(list.begin(), list.end(), b);
}

std::vector<std::uint64_t> vertex_triangles(const SimpleGraph& graph) {
  const std::size_t n = graph.vertex_count();
  std::vector<std::uint64_t> count(n, 0);
  // Each triangle a < b < c is found once from its smallest vertex.
  for (VertexId a = 0; a < n; ++a) {
    auto na = graph.neighbors(a);
    for (VertexId b : na) {
      if (b <= a) continue;
      auto nb = graph.neighbors(b);
      auto i = std::upper_bound(na.begin(), na.end(), b);
      auto j = std::upper_bound(nb.begin(), nb.end(), b);
      while (i != na.end() && j != nb.end()) {
        if (*i < *j) {
          ++i;
        } else if (*j < *i) {
          ++j;
        } else {
          ++count[a];
          ++count[b];
          ++count[*i];
          ++i;
          ++j;
        }
      }
    }
  }
  return count;
}

std::uint64_t triangle_count(const SimpleGraph& graph) {
  std::uint64_t total = 0;
  for (auto t : vertex_triangles(graph)) total += t;
  return total / 3;
}

double clustering_coefficient(const SimpleGraph& graph, VertexId v) {
  const std::size_t k = graph.degree(v);
  if (k < 2) return 0.0;
  auto nv = graph.neighbors(v);
  std::uint64_t links = 0;
  for (std::size_t i = 0; i < nv.size(); ++i) {
    auto nu = graph.neighbors(nv[i]);
    // Neighbors of nv[i] that are also neighbors of v and come after it.
    auto a = nv.begin() + static_cast<std::ptrdiff_t>(i) + 1;
    auto b = std::upper_bound(nu.begin(), nu.end(), nv[i]);
    while (a != nv.end() && b != nu.end()) {
      if (*a < *b) {
        ++a;
      } else if (*b < *a) {
        ++b;
      } else {
        ++links;
        ++a;
        ++b;
      }
    }
  }
  return 2.0 * static_cast<double>(links) / (static_cast<double>(k) * static_cast<double>(k - 1));
}

std::vector<double> clustering_coefficients(const SimpleGraph& graph) {
  const auto triangles = vertex_triangles(graph);
  std::vector<double> out(graph.vertex_count(), 0.0);
  for (VertexId v = 0; v < out.size(); ++v) {
    const double k = static_cast<double>(graph.degree(v));
    if (k >= 2) out[v] = 2.0 * static_cast<double>(triangles[v]) / (k * (k - 1));
  }
  return out;
}

double average_clustering(const SimpleGraph& graph) {
  if (graph.vertex_count() == 0) return 0.0;
  double sum = 0.0;
  for (double c : clustering_coefficients(graph)) sum += c;
  return sum / static_cast<double>(graph.vertex_count());
}

std::vector<CommunityId> labels_for(const GraphView& view, const lpa::Partition& partition) {
  std::vector<CommunityId> labels(view.vertex_count());
  for (VertexId v = 0; v < view.vertex_count(); ++v) {
    auto label = partition.find(view.handle(v));
    if (!label) {
      throw Error(ErrorCode::kInvalidArgument,
                  "partition does not cover vertex " + view.handle(v));
    }
    labels[v] = *label;
  }
  return labels;
}

namespace {

void check_labels(const SimpleGraph& graph, std::span<const CommunityId> labels) {
  if (labels.size() != graph.vertex_count()) {
    throw Error(ErrorCode::kInvalidArgument, "one label per vertex is required");
  }
}

struct CommunityTotals {
  double internal = 0.0;  // edges (or weight) with both ends inside
  double degree = 0.0;    // sum of member degrees (or strengths)
};

std::unordered_map<CommunityId, CommunityTotals> aggregate(const SimpleGraph& graph,
                                                           std::span<const CommunityId> labels,
                                                           bool weighted) {
  std::unordered_map<CommunityId, CommunityTotals> totals;
  for (VertexId v = 0; v < graph.vertex_count(); ++v) {
    auto& t = totals[labels[v]];
    auto nv = graph.neighbors(v);
    auto wv = graph.weights(v);
    for (std::size_t i = 0; i < nv.size(); ++i) {
      const double w = weighted ? wv[i] : 1.0;
      t.degree += w;
      if (labels[nv[i]] == labels[v]) t.internal += w / 2.0;  // seen from both ends
    }
  }
  return totals;
}

}  // namespace

double modularity_M(const SimpleGraph& graph, std::span<const CommunityId> labels) {
  check_labels(graph, labels);
  const double L = static_cast<double>(graph.edge_count());
  if (L == 0) throw Error(ErrorCode::kInvalidArgument, "modularity of a graph without edges");
  double m = 0.0;
  for (const auto& [_, t] : aggregate(graph, labels, false)) {
    const double share = t.degree / (2.0 * L);
    m += t.internal / L - share * share;
  }
  return m;
}

double modularity_Q(const SimpleGraph& graph, std::span<const CommunityId> labels) {
  check_labels(graph, labels);
  const double m = graph.total_weight();
  if (m <= 0) throw Error(ErrorCode::kInvalidArgument, "modularity of a graph without weight");
  // Σ_{u,v in c} A_uv = 2·internal_c and Σ_{u,v in c} k_u k_v = K_c².
  double q = 0.0;
  for (const auto& [_, t] : aggregate(graph, labels, true)) {
    q += 2.0 * t.internal - t.degree * t.degree / (2.0 * m);
  }
  return q / (2.0 * m);
}

}  // namespace graphcomm::analytics
