#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graphcomm/error.hpp"
#include "graphcomm/store/graph_store.hpp"
#include "graphcomm/traversal/traversal.hpp"

namespace graphcomm::api {

struct ServiceOptions {
  std::string graph_name;  // empty: the bibliographic default graph
  std::size_t suggestion_limit = 10;
  std::size_t vertex_cap = traversal::kDefaultVertexCap;
  std::size_t max_expansions = 5'000'000;
  std::string community_field = std::string(kDefaultCommunityField);
};

// Bad request parameters; `fields` names the offending inputs.
class ValidationError : public Error {
 public:
  ValidationError(std::vector<std::string> fields, const std::string& message)
      : Error(ErrorCode::kInvalidArgument, message), fields_(std::move(fields)) {}
  const std::vector<std::string>& fields() const noexcept { return fields_; }

 private:
  std::vector<std::string> fields_;
};

struct NodeGraph {
  Json graph;  // SlimGraph
  bool truncated = false;
};

struct HttpResponse {
  int status = 200;
  Json body;
};

// Transport-independent resolver for the two query operations. Safe to call
// from many threads; a store can be attached once it has loaded, requests
// before that fail as unavailable.
class QueryService {
 public:
  explicit QueryService(ServiceOptions options = {});
  QueryService(std::shared_ptr<const GraphStore> store, ServiceOptions options = {});

  void attach(std::shared_ptr<const GraphStore> store);
  bool ready() const;
  const ServiceOptions& options() const { return options_; }

  // [SuggestedNode]: case-insensitive substring match on graph_name.
  Json nodes_id(std::string_view name) const;
  NodeGraph node_graph(std::string_view node_id,
                       std::optional<std::string_view> min_depth = std::nullopt,
                       std::optional<std::string_view> max_depth = std::nullopt) const;
  Json vertex_detail(std::string_view handle) const;
  Json health() const;

  // Request-level entry points: decoded JSON in, status and body out.
  HttpResponse handle_query(std::string_view body) const;
  HttpResponse handle_health() const;
  HttpResponse handle_vertex(std::string_view handle) const;

 private:
  struct Snapshot;
  std::shared_ptr<const Snapshot> snapshot() const;

  ServiceOptions options_;
  mutable std::mutex mutex_;
  std::shared_ptr<const Snapshot> snapshot_;
};

// SlimGraph: vertices sorted by _id, edges by handle, communities as strings.
Json slim_graph(const traversal::TraversalResult& result,
                std::string_view community_field = kDefaultCommunityField);

// Strict decimal parse of a depth argument.
std::size_t parse_depth(std::string_view text, std::string_view field);

// {errors: [{message, code, fields?}]} and the matching HTTP status.
HttpResponse error_response(const std::exception& e);

}  // namespace graphcomm::api
