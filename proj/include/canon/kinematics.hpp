#pragma once

#include <map>
#include <random>
#include <vector>

#include "canon/graph.hpp"
#include "canon/scalar.hpp"

namespace canon {

struct Kinematics {
  int dim = 2;                          // 2: complex momenta, 4: quaternionic
  std::map<int, Quaternion> momenta;    // leg index -> momentum
  std::map<int, Rational> masses;       // mass label -> m^2; label 0 is massless

  Rational mass2(int label) const;
};

// Edge id -> momentum.
using Routing = std::map<int, Quaternion>;

void validate(const Graph& g, const Kinematics& k);
// Total external momentum entering at a vertex.
Quaternion vertex_momentum(const Graph& g, const Kinematics& k, int vertex);
// No proper nonempty subset of legs has null total momentum.
bool is_generic(const Graph& g, const Kinematics& k);

// Solves out-flow minus in-flow = injected momentum at every vertex, with zero momentum on the
// edges outside a spanning tree grown from the highest edge ids.
Routing route(const Graph& g, const Kinematics& k);
// Same, per connected component; every component must conserve momentum.
Routing route_forest(const Graph& g, const Kinematics& k);
bool satisfies_conservation(const Graph& g, const Kinematics& k, const Routing& r);

// Kinematics for a contracted or sub-graph: legs keep their momenta, masses are copied.
Kinematics restrict_kinematics(const Graph& g, const Kinematics& k);

struct SubgraphClass {
  bool mass_spanning = false;
  bool momentum_spanning = false;
  bool mm = false;
  bool core = false;
  bool motic = false;
  int loops = 0;
};

SubgraphClass classify_subgraph(const Graph& g, const Kinematics& k, const EdgeSet& s);
// Strict subgraphs with at least two edges that are motic.
std::vector<EdgeSet> motic_subgraphs(const Graph& g, const Kinematics& k);

// Random generic kinematics with small rational entries; every mass label of g gets a mass.
Kinematics random_kinematics(const Graph& g, int dim, std::mt19937_64& rng, bool massive = true);
Rational random_rational(std::mt19937_64& rng, int range = 5, int den = 3);
Quaternion random_momentum(std::mt19937_64& rng, int dim);

}  // namespace canon
