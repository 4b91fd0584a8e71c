#pragma once

#include <string>
#include <vector>

#include "canon/graph.hpp"
#include "canon/kinematics.hpp"

namespace canon {

// bubble, triangle, banana-N (N >= 2), box, dunce, double-bubble, box-triangle, pentagon,
// hexagon, wheel-3, wheel-3-legs.
Graph builtin_graph(const std::string& name);
std::vector<std::string> builtin_names();
// Fixed generic kinematics shipped alongside each built-in graph.
Kinematics reference_kinematics(const std::string& name);

// One-loop graph with n edges, e_i running from vertex i-1 to vertex i (cyclically), leg i at
// vertex i and mass label i on e_i.
Graph cycle_graph(int n);
Graph banana(int n);

}  // namespace canon
