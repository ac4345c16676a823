#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graphcomm/store/graph_store.hpp"

namespace graphcomm::traversal {

inline constexpr std::size_t kDefaultVertexCap = 10000;
inline constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

struct TraversalSpec {
  std::string start;
  std::size_t min_depth = 1;
  std::size_t max_depth = 1;
  Direction direction = Direction::kAny;
  std::string graph;
  std::optional<CommunityId> community_filter;
  std::string community_field = std::string(kDefaultCommunityField);
  // Non-start vertices allowed in the result.
  std::size_t vertex_cap = kDefaultVertexCap;
  // Upper bound on edge expansions during path enumeration.
  std::size_t max_expansions = kUnlimited;
  // Keep vertices whose shortest distance lies in [min, max] instead of
  // collecting whole paths.
  bool distance_mode = false;
};

struct TraversalResult {
  const VertexRecord* start_node = nullptr;
  std::vector<const VertexRecord*> vertices;  // first-encounter order
  std::vector<const EdgeRecord*> edges;       // first-encounter order
  std::vector<CommunityId> communities;       // sorted, distinct
  bool truncated = false;
};

// Collects every simple path (no repeated vertex) from the start whose length
// is in [min_depth, max_depth]; the result is the union of their vertices and
// edges. A community filter prunes paths at non-start vertices whose
// community differs. When adding a path would exceed vertex_cap, or the
// expansion budget runs out, enumeration stops and `truncated` is set.
// The records point into `store`; they stay valid until it is mutated.
TraversalResult traverse(const GraphStore& store, const TraversalSpec& spec);

// Sorted distinct community values; vertices without one are skipped.
std::vector<CommunityId> distinct_communities(
    std::span<const VertexRecord* const> vertices,
    std::string_view field = kDefaultCommunityField);

}  // namespace graphcomm::traversal
