#pragma once

#include <string_view>

#include "graphcomm/store/graph_store.hpp"

namespace graphcomm::analytics {

// {triangles, avg_cc, modularity_M, modularity_Q, wcc_count, scc_count,
//  per_type_table}. Modularity is null unless every vertex carries
// `community_field` and the graph has edges; per_type_table covers the
// annotated vertices.
Json graph_statistics(const GraphStore& store, std::string_view graph_name,
                      std::string_view community_field = kDefaultCommunityField);

}  // namespace graphcomm::analytics
