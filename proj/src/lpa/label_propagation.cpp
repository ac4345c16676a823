#include "graphcomm/lpa/label_propagation.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "graphcomm/error.hpp"

namespace graphcomm::lpa {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform in [0, n) from a 64-bit hash (Lemire's multiply-shift).
std::size_t reduce(std::uint64_t hash, std::size_t n) {
  return static_cast<std::size_t>((static_cast<unsigned __int128>(hash) * n) >> 64);
}

constexpr std::string_view kTableHeader =
    "Vertex type\tNumber of vertices\tNumber of detected communities";

}  // namespace

std::string_view to_string(TieBreak tie_break) {
  return tie_break == TieBreak::kMinId ? "min_id" : "random";
}

TieBreak parse_tie_break(std::string_view text) {
  if (text == "min_id") return TieBreak::kMinId;
  if (text == "random") return TieBreak::kRandom;
  throw Error(ErrorCode::kInvalidArgument,
              "tie_break must be min_id or random, got '" + std::string(text) + "'");
}

void validate(const LpaParams& params) {
  if (params.max_gss < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_gss must be at least 1");
  }
  if (params.workers < 1) {
    throw Error(ErrorCode::kInvalidArgument, "workers must be at least 1");
  }
  if (params.result_field.empty() || params.result_field.front() == '_') {
    throw Error(ErrorCode::kInvalidArgument,
                "result_field must be a non-empty name not starting with '_'");
  }
  if (params.tie_break == TieBreak::kRandom && !params.rng_seed) {
    throw Error(ErrorCode::kInvalidArgument, "random tie-break requires rng_seed");
  }
  if (params.random_initial_labels && !params.rng_seed) {
    throw Error(ErrorCode::kInvalidArgument, "random initial labels require rng_seed");
  }
}

// ---- Partition ----

Partition::Partition(std::vector<std::string> handles, std::vector<CommunityId> labels,
                     std::size_t supersteps_run, bool converged)
    : handles_(std::move(handles)),
      labels_(std::move(labels)),
      supersteps_run_(supersteps_run),
      converged_(converged) {
  if (handles_.size() != labels_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "partition handles and labels differ in size");
  }
  build_index();
}

Partition::Partition(const Partition& other)
    : handles_(other.handles_),
      labels_(other.labels_),
      supersteps_run_(other.supersteps_run_),
      converged_(other.converged_) {
  build_index();
}

Partition& Partition::operator=(const Partition& other) {
  if (this != &other) {
    handles_ = other.handles_;
    labels_ = other.labels_;
    supersteps_run_ = other.supersteps_run_;
    converged_ = other.converged_;
    build_index();
  }
  return *this;
}

void Partition::build_index() {
  index_.clear();
  index_.reserve(handles_.size());
  for (std::size_t i = 0; i < handles_.size(); ++i) {
    if (!index_.emplace(handles_[i], i).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate vertex in partition: " + handles_[i]);
    }
  }
}

std::optional<CommunityId> Partition::find(std::string_view handle) const {
  auto it = index_.find(handle);
  if (it == index_.end()) return std::nullopt;
  return labels_[it->second];
}

CommunityId Partition::at(std::string_view handle) const {
  auto label = find(handle);
  if (!label) {
    throw Error(ErrorCode::kNotFound, "vertex not in partition: " + std::string(handle));
  }
  return *label;
}

std::size_t Partition::community_count() const {
  std::vector<CommunityId> sorted = labels_;
  std::sort(sorted.begin(), sorted.end());
  return static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

std::map<CommunityId, std::vector<std::string>> Partition::communities() const {
  std::map<CommunityId, std::vector<std::string>> out;
  for (std::size_t i = 0; i < handles_.size(); ++i) out[labels_[i]].push_back(handles_[i]);
  return out;
}

// ---- Program ----

LabelPropagation::LabelPropagation(const GraphView& view, const LpaParams& params)
    : tie_break_(params.tie_break),
      seed_(params.rng_seed.value_or(0)),
      include_self_(params.include_self) {
  validate(params);
  const std::size_t n = view.vertex_count();
  initial_.resize(n);
  for (VertexId v = 0; v < n; ++v) {
    initial_[v] = params.random_initial_labels
                      ? static_cast<CommunityId>(splitmix64(seed_ ^ splitmix64(v)) >> 1)
                      : static_cast<CommunityId>(v);
  }
  for (const auto& [handle, label] : params.seed_labels) {
    auto v = view.find(handle);
    if (!v) {
      throw Error(ErrorCode::kInvalidArgument,
                  "seed label for a vertex outside the graph: " + handle);
    }
    initial_[*v] = label;
  }
}

LabelPropagation::Value LabelPropagation::compute(
    VertexId v, std::size_t step, const Value& own,
    std::span<const Incoming<Value>> messages) const {
  thread_local std::vector<std::pair<CommunityId, double>> tally;
  tally.clear();
  for (const auto& m : messages) tally.emplace_back(m.value, m.weight);
  if (include_self_) tally.emplace_back(own, 1.0);
  if (tally.empty()) return own;
  std::sort(tally.begin(), tally.end());

  // Ascending label scan; `best` keeps the smallest label of maximum weight.
  thread_local std::vector<CommunityId> tied;
  tied.clear();
  double best_weight = -1.0;
  for (std::size_t i = 0; i < tally.size();) {
    const CommunityId label = tally[i].first;
    double weight = 0.0;
    for (; i < tally.size() && tally[i].first == label; ++i) weight += tally[i].second;
    if (weight > best_weight) {
      best_weight = weight;
      tied.assign(1, label);
    } else if (weight == best_weight) {
      tied.push_back(label);
    }
  }
  if (tie_break_ == TieBreak::kMinId || tied.size() == 1) return tied.front();
  const std::uint64_t h =
      splitmix64(seed_ ^ splitmix64(step ^ splitmix64(static_cast<std::uint64_t>(v))));
  return tied[reduce(h, tied.size())];
}

// ---- Driver ----

Partition detect_communities(const GraphView& view, const LpaParams& params) {
  validate(params);
  LabelPropagation program(view, params);
  PregelOptions options;
  options.max_gss = params.max_gss;
  options.workers = params.workers;
  options.halt_on_convergence = params.halt_on_convergence;
  options.on_status = params.on_status;
  auto result = run_pregel(view, program, options);

  std::vector<std::string> handles;
  handles.reserve(view.vertex_count());
  for (VertexId v = 0; v < view.vertex_count(); ++v) handles.push_back(view.handle(v));
  return Partition(std::move(handles), std::move(result.values), result.supersteps,
                   result.converged);
}

Partition detect_communities(const GraphStore& store, std::string_view graph_name,
                             const LpaParams& params) {
  return detect_communities(GraphView::of_graph(store, graph_name), params);
}

std::size_t annotate_graph(GraphStore& store, std::string_view graph_name,
                           const Partition& partition, std::string_view result_field) {
  if (result_field.empty() || result_field.front() == '_') {
    throw Error(ErrorCode::kInvalidArgument, "invalid result field name");
  }
  std::vector<std::pair<std::string, CommunityId>> writes;
  {
    const GraphView view = GraphView::of_graph(store, graph_name);
    writes.reserve(view.vertex_count());
    for (VertexId v = 0; v < view.vertex_count(); ++v) {
      auto label = partition.find(view.handle(v));
      if (!label) {
        throw Error(ErrorCode::kInvalidArgument,
                    "partition does not cover vertex " + view.handle(v));
      }
      writes.emplace_back(view.handle(v), *label);
    }
  }
  for (const auto& [handle, label] : writes) {
    store.set_vertex_attribute(handle, result_field, label);
  }
  return writes.size();
}

Partition partition_from_store(const GraphStore& store, std::string_view graph_name,
                               std::string_view result_field) {
  const GraphView view = GraphView::of_graph(store, graph_name);
  std::vector<std::string> handles;
  std::vector<CommunityId> labels;
  for (VertexId v = 0; v < view.vertex_count(); ++v) {
    if (auto label = view.vertex(v).community(result_field)) {
      handles.push_back(view.handle(v));
      labels.push_back(*label);
    }
  }
  return Partition(std::move(handles), std::move(labels));
}

std::vector<PartitionRow> partition_stats(const Partition& partition,
                                          const GraphStore& store) {
  std::map<std::string, std::pair<std::size_t, std::set<CommunityId>>> per_type;
  std::set<CommunityId> all;
  for (std::size_t i = 0; i < partition.size(); ++i) {
    const auto& handle = partition.handles()[i];
    const VertexRecord* record = store.find_vertex(handle);
    std::string type;
    if (record != nullptr) {
      type = record->collection;
    } else if (auto parts = split_handle(handle)) {
      type = std::string(parts->first);
    } else {
      throw Error(ErrorCode::kInvalidArgument, "malformed handle in partition: " + handle);
    }
    auto& [count, communities] = per_type[type];
    ++count;
    communities.insert(partition.labels()[i]);
    all.insert(partition.labels()[i]);
  }
  std::vector<PartitionRow> rows;
  if (partition.empty()) return rows;
  for (const auto& [type, entry] : per_type) {
    rows.push_back({type, entry.first, entry.second.size()});
  }
  rows.push_back({std::string(kAllTypesRow), partition.size(), all.size()});
  return rows;
}

std::string format_partition_table(const std::vector<PartitionRow>& rows) {
  std::string out(kTableHeader);
  out += '\n';
  for (const auto& row : rows) {
    out += row.type + '\t' + std::to_string(row.vertices) + '\t' +
           std::to_string(row.communities) + '\n';
  }
  return out;
}

std::vector<PartitionRow> parse_partition_table(std::string_view text) {
  std::vector<PartitionRow> rows;
  std::size_t line_no = 0;
  auto parse_count = [&](std::string_view field) {
    std::size_t value = 0;
    auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || end != field.data() + field.size()) {
      throw Error(ErrorCode::kParse, "bad count '" + std::string(field) + "' on line " +
                                         std::to_string(line_no));
    }
    return value;
  };
  while (!text.empty()) {
    ++line_no;
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line_no == 1 && line == kTableHeader) continue;
    const std::size_t t1 = line.find('\t');
    const std::size_t t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos || line.find('\t', t2 + 1) != std::string_view::npos) {
      throw Error(ErrorCode::kParse,
                  "expected three tab-separated columns on line " + std::to_string(line_no));
    }
    rows.push_back({std::string(line.substr(0, t1)),
                    parse_count(line.substr(t1 + 1, t2 - t1 - 1)),
                    parse_count(line.substr(t2 + 1))});
  }
  return rows;
}

}  // namespace graphcomm::lpa
