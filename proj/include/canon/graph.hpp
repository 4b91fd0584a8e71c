#pragma once

#include <string>
#include <vector>

namespace canon {

struct Vertex {
  int id = 0;
  int weight = 0;
};

struct Edge {
  int id = 0;
  int source = 0;
  int target = 0;
  int mass_label = 0;  // 0 means massless
  bool is_tadpole() const { return source == target; }
};

struct Leg {
  int index = 0;
  int vertex = 0;
};

// Sorted list of edge ids.
using EdgeSet = std::vector<int>;

struct Graph {
  std::vector<Vertex> vertices;  // sorted by id
  std::vector<Edge> edges;       // sorted by id
  std::vector<Leg> legs;         // sorted by index
  std::vector<int> orientation;  // edge ids in the order e_1 ^ ... ^ e_N
  int orientation_sign = 1;

  int num_vertices() const { return int(vertices.size()); }
  int num_edges() const { return int(edges.size()); }
  bool has_vertex(int id) const;
  bool has_edge(int id) const;
  const Edge& edge(int id) const;
  int edge_index(int id) const;
  EdgeSet edge_ids() const;
  std::vector<int> vertex_ids() const;

  int components() const;
  bool connected() const { return components() == 1; }
  int loop_number() const;
  int genus() const;
  // Sign of e_1 ^ ... ^ e_N relative to increasing edge ids.
  int orientation_parity() const;

  // Sorts containers, fills a default orientation and checks referential integrity.
  void normalize();
  void validate() const;
};

EdgeSet sorted_edge_set(std::vector<int> ids);
EdgeSet complement(const Graph& g, const EdgeSet& s);

// Loop number of the subgraph spanned by the given edges.
int loop_number(const Graph& g, const EdgeSet& s);
// Number of connected components of (V(G), s).
int components_with(const Graph& g, const EdgeSet& s);

Graph contract(const Graph& g, int edge_id);
// Contracts edge by edge in increasing id order.
Graph contract(const Graph& g, const EdgeSet& s);
Graph delete_edges(const Graph& g, const EdgeSet& s);
// The subgraph on the given edges with their endpoints, legs at those endpoints kept,
// orientation inherited from g.
Graph edge_subgraph(const Graph& g, const EdgeSet& s);

std::vector<EdgeSet> spanning_trees(const Graph& g);
// Spanning forests with one tree per block, each tree meeting the marked vertices in exactly
// its block.
std::vector<EdgeSet> spanning_forests(const Graph& g, const std::vector<std::vector<int>>& blocks);

struct CycleBasis {
  EdgeSet edge_ids;                        // columns are cycles, rows follow edge_ids
  std::vector<std::vector<int>> cycles;    // cycles[k][i] is the coefficient of edge_ids[i]
  std::vector<int> marked;

  int size() const { return int(cycles.size()); }
  int coefficient(int k, int edge_id) const;
};

// Fundamental cycles of a spanning tree of G minus the marked edges. Marked edges come
// first, each occurring only in its own cycle with coefficient +1.
CycleBasis cycle_basis(const Graph& g, const std::vector<int>& marked = {});
// Fundamental cycles of the given spanning tree (or forest), one per edge of `order`.
CycleBasis fundamental_cycles(const Graph& g, const EdgeSet& tree, const std::vector<int>& order);
// Same construction as cycle_basis over a spanning forest; accepts disconnected graphs.
CycleBasis forest_cycle_basis(const Graph& g, const std::vector<int>& marked = {});

std::string describe(const Graph& g);

}  // namespace canon
