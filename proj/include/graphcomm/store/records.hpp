#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace graphcomm {

using Json = nlohmann::json;
using CommunityId = std::int64_t;

enum class CollectionKind { kVertex, kEdge };
enum class Direction { kOutbound, kInbound, kAny };

std::string_view to_string(CollectionKind kind);
std::string_view to_string(Direction direction);
Direction parse_direction(std::string_view text);

inline constexpr std::string_view kDefaultCommunityField = "community";

struct VertexRecord {
  std::string handle;      // "<collection>/<key>"
  std::string key;
  std::string collection;
  Json attributes = Json::object();

  // Reads an integer community label stored under `field`, if any.
  std::optional<CommunityId> community(
      std::string_view field = kDefaultCommunityField) const;
  std::string graph_name() const;
};

struct EdgeRecord {
  std::string handle;
  std::string key;
  std::string collection;
  std::string from;
  std::string to;
  std::optional<std::string> label;
  double weight = 1.0;
};

// A named graph is a set of edge collections. Its vertex set is the union of
// all edge endpoints plus every vertex of the listed vertex collections
// (vertices of those collections without edges still belong to the graph).
struct NamedGraph {
  std::string name;
  std::vector<std::string> edge_collections;
  std::vector<std::string> vertex_collections;
};

std::string make_handle(std::string_view collection, std::string_view key);

// Splits "<collection>/<key>"; nullopt when the handle is not of that form.
std::optional<std::pair<std::string_view, std::string_view>> split_handle(
    std::string_view handle);

}  // namespace graphcomm
