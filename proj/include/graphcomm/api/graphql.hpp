#pragma once

#include <string_view>

#include "graphcomm/store/records.hpp"

namespace graphcomm::api {

class QueryService;

// Runs a GraphQL query document restricted to the two root fields
// (nodesID, optionally suffixed with digits, and nodeGraph) and projects the
// results onto the requested selection. Supports aliases, variables with
// defaults, named and inline fragments and __typename. Returns the `data`
// object; syntax and validation problems throw ValidationError, resolver
// errors propagate unchanged.
Json execute_graphql(const QueryService& service, std::string_view document,
                     const Json& variables, bool& truncated,
                     std::string_view operation_name = {});

}  // namespace graphcomm::api
