#include "graphcomm/analytics/report.hpp"

#include "graphcomm/analytics/components.hpp"
#include "graphcomm/analytics/metrics.hpp"
#include "graphcomm/lpa/label_propagation.hpp"

namespace graphcomm::analytics {

Json graph_statistics(const GraphStore& store, std::string_view graph_name,
                      std::string_view community_field) {
  const GraphView view = GraphView::of_graph(store, graph_name);
  const SimpleGraph simple(view);
  const auto partition = lpa::partition_from_store(store, graph_name, community_field);

  Json out = Json::object();
  out["graph"] = std::string(graph_name);
  out["vertices"] = view.vertex_count();
  out["edges"] = view.edge_count();
  out["triangles"] = triangle_count(simple);
  out["avg_cc"] = average_clustering(simple);
  out["modularity_M"] = nullptr;
  out["modularity_Q"] = nullptr;
  if (partition.size() == view.vertex_count() && simple.edge_count() > 0) {
    const auto labels = labels_for(view, partition);
    out["modularity_M"] = modularity_M(simple, labels);
    out["modularity_Q"] = modularity_Q(simple, labels);
  }
  out["wcc_count"] = component_count(weak_component_ids(view));
  out["scc_count"] = component_count(strong_component_ids(view));

  Json table = Json::array();
  for (const auto& row : lpa::partition_stats(partition, store)) {
    table.push_back({{"type", row.type},
                     {"vertices", row.vertices},
                     {"communities", row.communities}});
  }
  out["per_type_table"] = std::move(table);
  return out;
}

}  // namespace graphcomm::analytics
