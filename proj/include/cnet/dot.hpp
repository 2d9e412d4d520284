#pragma once

#include <string>
#include <vector>

#include "cnet/routing.hpp"
#include "cnet/topology.hpp"

namespace cnet {

// Graphviz rendering: stages as columns, nodes top-down by label, output links
// annotated 0/1 (or the module index). Routes, when given, color their edges;
// the output is fully deterministic.
std::string render_dot(const NetworkTopology& topology, const std::vector<Route>& routes = {});

}  // namespace cnet
