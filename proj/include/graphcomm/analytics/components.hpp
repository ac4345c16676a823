#pragma once

#include <cstddef>
#include <vector>

#include "graphcomm/lpa/label_propagation.hpp"
#include "graphcomm/store/graph_view.hpp"

namespace graphcomm::analytics {

// Component id per vertex ordinal; the id is the smallest ordinal in the
// component.
std::vector<VertexId> weak_component_ids(const GraphView& view);
// Follows stored edge direction.
std::vector<VertexId> strong_component_ids(const GraphView& view);

std::size_t component_count(const std::vector<VertexId>& ids);

// Same assignments as partitions keyed by vertex handle.
lpa::Partition weakly_connected_components(const GraphView& view);
lpa::Partition strongly_connected_components(const GraphView& view);

}  // namespace graphcomm::analytics
