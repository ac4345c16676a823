#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "graphcomm/lpa/label_propagation.hpp"
#include "graphcomm/store/graph_view.hpp"

namespace graphcomm::analytics {

// Undirected simple view of a GraphView: parallel edges collapse into one
// (keeping the largest weight), self-loops are dropped, direction ignored.
// Vertex ids match the source view.
class SimpleGraph {
 public:
  explicit SimpleGraph(const GraphView& view);

  std::size_t vertex_count() const { return offsets_.size() - 1; }
  std::size_t edge_count() const { return neighbors_.size() / 2; }  // L
  double total_weight() const { return total_weight_; }              // m

  // Sorted, distinct neighbor ids.
  std::span<const VertexId> neighbors(VertexId v) const {
    return {neighbors_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::span<const double> weights(VertexId v) const {
    return {weights_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool adjacent(VertexId a, VertexId b) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> neighbors_;
  std::vector<double> weights_;
  double total_weight_ = 0.0;
};

// Triangles through each vertex.
std::vector<std::uint64_t> vertex_triangles(const SimpleGraph& graph);
std::uint64_t triangle_count(const SimpleGraph& graph);

// 2R/(k(k-1)), 0 when k < 2.
double clustering_coefficient(const SimpleGraph& graph, VertexId v);
std::vector<double> clustering_coefficients(const SimpleGraph& graph);
double average_clustering(const SimpleGraph& graph);  // 0 for an empty graph

// Community of every view vertex, by ordinal. kInvalidArgument when the
// partition misses a vertex.
std::vector<CommunityId> labels_for(const GraphView& view, const lpa::Partition& partition);

// Σ_c [L_c/L − (k_c/2L)²] on unweighted edge counts. kInvalidArgument when L == 0.
double modularity_M(const SimpleGraph& graph, std::span<const CommunityId> labels);
// (1/2m) Σ_{u,v} [A_uv − k_u k_v/2m] δ(c_u,c_v), evaluated per community.
// kInvalidArgument when m == 0.
double modularity_Q(const SimpleGraph& graph, std::span<const CommunityId> labels);

}  // namespace graphcomm::analytics
