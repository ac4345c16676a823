#include "graphcomm/api/query_service.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "graphcomm/api/graphql.hpp"
#include "graphcomm/ingest/derive.hpp"
#include "graphcomm/ingest/normalize.hpp"

namespace graphcomm::api {

struct QueryService::Snapshot {
  struct Entry {
    std::string folded;
    const VertexRecord* vertex;
    std::size_t appearances;
  };

  std::shared_ptr<const GraphStore> store;
  const NamedGraph* graph = nullptr;
  std::string graph_name;
  std::vector<Entry> entries;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t communities = 0;
};

namespace {

Json slim_node(const VertexRecord& v, std::string_view field) {
  Json node = {{"_id", v.handle}, {"graph_name", v.graph_name()}};
  if (auto c = v.community(field)) node["community"] = std::to_string(*c);
  return node;
}

}  // namespace

QueryService::QueryService(ServiceOptions options) : options_(std::move(options)) {
  if (options_.graph_name.empty()) options_.graph_name = std::string(ingest::kDefaultGraphName);
  if (options_.suggestion_limit == 0) {
    throw Error(ErrorCode::kInvalidArgument, "suggestion_limit must be at least 1");
  }
  if (options_.vertex_cap == 0) {
    throw Error(ErrorCode::kInvalidArgument, "vertex_cap must be at least 1");
  }
}

QueryService::QueryService(std::shared_ptr<const GraphStore> store, ServiceOptions options)
    : QueryService(std::move(options)) {
  attach(std::move(store));
}

void QueryService::attach(std::shared_ptr<const GraphStore> store) {
  auto snap = std::make_shared<Snapshot>();
  snap->graph_name = options_.graph_name;
  if (store->has_graph(options_.graph_name)) snap->graph = &store->graph(options_.graph_name);

  std::set<CommunityId> communities;
  store->for_each_vertex([&](const VertexRecord& v) {
    const std::size_t appearances =
        snap->graph ? store->degree(v.handle, Direction::kAny, snap->graph) : 0;
    snap->entries.push_back({ingest::fold_case(v.graph_name()), &v, appearances});
    if (auto c = v.community(options_.community_field)) communities.insert(*c);
  });
  store->for_each_edge([&](const EdgeRecord&) { ++snap->edges; });
  snap->vertices = snap->entries.size();
  snap->communities = communities.size();
  snap->store = std::move(store);

  const std::lock_guard lock(mutex_);
  snapshot_ = std::move(snap);
}

bool QueryService::ready() const {
  const std::lock_guard lock(mutex_);
  return snapshot_ != nullptr;
}

std::shared_ptr<const QueryService::Snapshot> QueryService::snapshot() const {
  std::shared_ptr<const Snapshot> snap;
  {
    const std::lock_guard lock(mutex_);
    snap = snapshot_;
  }
  if (!snap) throw Error(ErrorCode::kUnavailable, "store not loaded yet");
  return snap;
}

Json QueryService::nodes_id(std::string_view name) const {
  const auto snap = snapshot();
  const std::string needle = ingest::fold_case(ingest::normalize_name(name));
  Json out = Json::array();
  if (needle.empty()) return out;

  std::vector<const Snapshot::Entry*> hits;
  for (const auto& entry : snap->entries) {
    if (entry.folded.find(needle) != std::string::npos) hits.push_back(&entry);
  }
  const auto before = [](const Snapshot::Entry* a, const Snapshot::Entry* b) {
    if (a->appearances != b->appearances) return a->appearances > b->appearances;
    const std::string an = a->vertex->graph_name();
    const std::string bn = b->vertex->graph_name();
    if (an != bn) return an < bn;
    return a->vertex->handle < b->vertex->handle;
  };
  const std::size_t keep = std::min(hits.size(), options_.suggestion_limit);
  std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(keep), hits.end(),
                    before);
  for (std::size_t i = 0; i < keep; ++i) {
    const VertexRecord& v = *hits[i]->vertex;
    out.push_back({{"_id", v.handle},
                   {"graph_name", v.graph_name()},
                   {"the_type", v.collection},
                   {"appearances", hits[i]->appearances}});
  }
  return out;
}

std::size_t parse_depth(std::string_view text, std::string_view field) {
  long long value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ValidationError({std::string(field)},
                          std::string(field) + " must be an integer, got '" +
                              std::string(text) + "'");
  }
  if (value < 0) {
    throw ValidationError({std::string(field)}, std::string(field) + " must be at least 1");
  }
  return static_cast<std::size_t>(value);
}

NodeGraph QueryService::node_graph(std::string_view node_id,
                                   std::optional<std::string_view> min_depth,
                                   std::optional<std::string_view> max_depth) const {
  if (node_id.empty()) throw ValidationError({"node_id"}, "node_id is required");
  const std::size_t lo = parse_depth(min_depth.value_or("1"), "minDepth");
  const std::size_t hi = parse_depth(max_depth.value_or("2"), "maxDepth");
  std::vector<std::string> bad;
  std::string message;
  if (lo < 1) {
    bad.emplace_back("minDepth");
    message = "minDepth must be at least 1";
  }
  if (hi < lo) {
    bad.emplace_back("maxDepth");
    if (!message.empty()) message += "; ";
    message += "maxDepth must be greater than or equal to minDepth";
  }
  if (!bad.empty()) throw ValidationError(std::move(bad), message);

  const auto snap = snapshot();
  if (snap->store->find_vertex(node_id) == nullptr) {
    throw Error(ErrorCode::kNotFound, "vertex '" + std::string(node_id) + "' not found");
  }

  traversal::TraversalSpec spec;
  spec.start = std::string(node_id);
  spec.min_depth = lo;
  spec.max_depth = hi;
  spec.direction = Direction::kAny;
  spec.graph = snap->graph_name;
  spec.community_field = options_.community_field;
  spec.vertex_cap = options_.vertex_cap;
  spec.max_expansions = options_.max_expansions;
  const auto result = traversal::traverse(*snap->store, spec);

  return {slim_graph(result, options_.community_field), result.truncated};
}

Json slim_graph(const traversal::TraversalResult& result, std::string_view community_field) {
  auto vertices = result.vertices;
  std::sort(vertices.begin(), vertices.end(),
            [](const VertexRecord* a, const VertexRecord* b) { return a->handle < b->handle; });
  auto edges = result.edges;
  std::sort(edges.begin(), edges.end(),
            [](const EdgeRecord* a, const EdgeRecord* b) { return a->handle < b->handle; });

  Json graph = Json::object();
  graph["startNode"] = slim_node(*result.start_node, community_field);
  Json& vs = graph["vertices"] = Json::array();
  for (const auto* v : vertices) vs.push_back(slim_node(*v, community_field));
  Json& es = graph["edges"] = Json::array();
  for (const auto* e : edges) {
    Json edge = {{"_id", e->handle}, {"_from", e->from}, {"_to", e->to}};
    if (e->label) edge["label"] = *e->label;
    es.push_back(std::move(edge));
  }
  Json& cs = graph["communities"] = Json::array();
  for (CommunityId c : result.communities) cs.push_back({{"number", std::to_string(c)}});
  return graph;
}

Json QueryService::vertex_detail(std::string_view handle) const {
  const auto snap = snapshot();
  const VertexRecord* v = snap->store->find_vertex(handle);
  if (v == nullptr) throw Error(ErrorCode::kNotFound, "vertex '" + std::string(handle) + "' not found");
  Json out = v->attributes;
  out["_id"] = v->handle;
  out["_key"] = v->key;
  out["the_type"] = v->collection;
  return out;
}

Json QueryService::health() const {
  const auto snap = snapshot();
  return {{"status", "ok"},
          {"graph", snap->graph_name},
          {"vertices", snap->vertices},
          {"edges", snap->edges},
          {"communities", snap->communities}};
}

HttpResponse error_response(const std::exception& e) {
  Json error = {{"message", e.what()}};
  int status = 500;
  if (const auto* v = dynamic_cast<const ValidationError*>(&e)) {
    status = 400;
    error["code"] = "validation";
    error["fields"] = v->fields();
  } else if (const auto* p = dynamic_cast<const Json::parse_error*>(&e)) {
    status = 400;
    error["code"] = "malformed_json";
    error["position"] = p->byte;
  } else if (const auto* g = dynamic_cast<const Error*>(&e)) {
    error["code"] = std::string(to_string(g->code()));
    switch (g->code()) {
      case ErrorCode::kInvalidArgument:
      case ErrorCode::kParse:
        status = 400;
        break;
      case ErrorCode::kNotFound:
        status = 404;
        break;
      case ErrorCode::kUnavailable:
        status = 503;
        break;
      default:
        break;
    }
  } else {
    error["code"] = "internal";
  }
  return {status, {{"errors", Json::array({std::move(error)})}}};
}

namespace {

std::optional<std::string_view> string_var(const Json& vars, const char* name) {
  const auto it = vars.find(name);
  if (it == vars.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw ValidationError({name}, std::string(name) + " must be a string");
  return it->get_ref<const std::string&>();
}

}  // namespace

HttpResponse QueryService::handle_query(std::string_view body) const {
  try {
    const Json request = Json::parse(body);
    if (!request.is_object()) throw ValidationError({"body"}, "request body must be an object");
    Json vars = request.value("variables", Json::object());
    if (vars.is_null()) vars = Json::object();
    if (!vars.is_object()) throw ValidationError({"variables"}, "variables must be an object");

    if (request.contains("query")) {
      if (!request["query"].is_string()) throw ValidationError({"query"}, "query must be a string");
      bool truncated = false;
      const auto op_name = request.value("operationName", Json()).is_string()
                               ? request["operationName"].get<std::string>()
                               : std::string();
      Json data =
          execute_graphql(*this, request["query"].get<std::string>(), vars, truncated, op_name);
      return {200, {{"data", std::move(data)}, {"extensions", {{"truncated", truncated}}}}};
    }

    const auto op = request.find("operation");
    if (op == request.end() || !op->is_string()) {
      throw ValidationError({"operation"}, "operation must be 'nodesID' or 'nodeGraph'");
    }
    if (*op == "nodesID") {
      const auto name = string_var(vars, "name");
      if (!name) throw ValidationError({"name"}, "name is required");
      return {200, {{"data", nodes_id(*name)}, {"extensions", {{"truncated", false}}}}};
    }
    if (*op == "nodeGraph") {
      const auto node_id = string_var(vars, "node_id");
      if (!node_id) throw ValidationError({"node_id"}, "node_id is required");
      auto result = node_graph(*node_id, string_var(vars, "minDepth"), string_var(vars, "maxDepth"));
      return {200,
              {{"data", std::move(result.graph)}, {"extensions", {{"truncated", result.truncated}}}}};
    }
    throw ValidationError({"operation"}, "unknown operation '" + op->get<std::string>() + "'");
  } catch (const std::exception& e) {
    return error_response(e);
  }
}

HttpResponse QueryService::handle_health() const {
  try {
    return {200, health()};
  } catch (const std::exception& e) {
    return error_response(e);
  }
}

HttpResponse QueryService::handle_vertex(std::string_view handle) const {
  try {
    return {200, vertex_detail(handle)};
  } catch (const std::exception& e) {
    return error_response(e);
  }
}

}  // namespace graphcomm::api
