#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "graphcomm/lpa/pregel.hpp"
#include "graphcomm/store/graph_store.hpp"
#include "graphcomm/store/graph_view.hpp"

namespace graphcomm::lpa {

enum class TieBreak { kMinId, kRandom };

std::string_view to_string(TieBreak tie_break);
TieBreak parse_tie_break(std::string_view text);  // "min_id" | "random"

struct LpaParams {
  std::size_t max_gss = 500;
  std::string result_field = std::string(kDefaultCommunityField);
  TieBreak tie_break = TieBreak::kMinId;
  std::optional<std::uint64_t> rng_seed;  // required for kRandom and random_initial_labels
  // Handle → initial label. Vertices not listed start from their ordinal.
  std::map<std::string, CommunityId, std::less<>> seed_labels;
  bool include_self = true;
  // Initial labels drawn from (rng_seed, ordinal) instead of the ordinal.
  bool random_initial_labels = false;
  std::size_t workers = 1;
  bool halt_on_convergence = true;
  std::function<void(const PregelStatus&)> on_status;
};

// Throws kInvalidArgument for an unusable parameter set.
void validate(const LpaParams& params);

// Vertex → community assignment over a fixed vertex list (canonical order).
class Partition {
 public:
  Partition() = default;
  Partition(std::vector<std::string> handles, std::vector<CommunityId> labels,
            std::size_t supersteps_run = 0, bool converged = true);
  Partition(const Partition& other);
  Partition& operator=(const Partition& other);
  Partition(Partition&&) noexcept = default;
  Partition& operator=(Partition&&) noexcept = default;

  std::size_t size() const { return handles_.size(); }
  bool empty() const { return handles_.empty(); }
  const std::vector<std::string>& handles() const { return handles_; }
  const std::vector<CommunityId>& labels() const { return labels_; }

  std::optional<CommunityId> find(std::string_view handle) const;
  CommunityId at(std::string_view handle) const;  // kNotFound if absent

  std::size_t community_count() const;
  // Community → member handles, both in ascending order of community and
  // canonical order of members.
  std::map<CommunityId, std::vector<std::string>> communities() const;

  std::size_t supersteps_run() const { return supersteps_run_; }
  bool converged() const { return converged_; }

  // Compares assignments only.
  bool same_assignment(const Partition& other) const {
    return handles_ == other.handles_ && labels_ == other.labels_;
  }

 private:
  std::vector<std::string> handles_;
  std::vector<CommunityId> labels_;
  std::unordered_map<std::string_view, std::size_t> index_;
  std::size_t supersteps_run_ = 0;
  bool converged_ = true;

  void build_index();
};

// Label Propagation as a vertex program. Exposed for tests and custom runs.
class LabelPropagation {
 public:
  using Value = CommunityId;

  LabelPropagation(const GraphView& view, const LpaParams& params);

  Value initial_value(VertexId v) const { return initial_[v]; }
  Value compute(VertexId v, std::size_t step, const Value& own,
                std::span<const Incoming<Value>> messages) const;

 private:
  std::vector<CommunityId> initial_;
  TieBreak tie_break_;
  std::uint64_t seed_;
  bool include_self_;
};

Partition detect_communities(const GraphView& view, const LpaParams& params = {});
Partition detect_communities(const GraphStore& store, std::string_view graph_name,
                             const LpaParams& params = {});

// Writes each graph vertex's community to `result_field`. All vertices of the
// graph must be covered; nothing is written otherwise. Returns the number of
// vertices annotated.
std::size_t annotate_graph(GraphStore& store, std::string_view graph_name,
                           const Partition& partition, std::string_view result_field);

// Reads back a partition from vertex attributes over a graph's vertices.
// Vertices lacking the field are skipped.
Partition partition_from_store(const GraphStore& store, std::string_view graph_name,
                               std::string_view result_field = kDefaultCommunityField);

struct PartitionRow {
  std::string type;
  std::size_t vertices = 0;
  std::size_t communities = 0;
  bool operator==(const PartitionRow&) const = default;
};

inline constexpr std::string_view kAllTypesRow = "all types";

// One row per vertex collection present in the partition (sorted by name),
// then the "all types" row counting distinct communities globally.
std::vector<PartitionRow> partition_stats(const Partition& partition,
                                          const GraphStore& store);

// Tab-separated layout with a header line.
std::string format_partition_table(const std::vector<PartitionRow>& rows);
std::vector<PartitionRow> parse_partition_table(std::string_view text);

}  // namespace graphcomm::lpa
