#include "canon/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace canon {

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

std::map<int, int> vertex_index(const Graph& g) {
  std::map<int, int> idx;
  for (int i = 0; i < g.num_vertices(); ++i) idx[g.vertices[i].id] = i;
  return idx;
}

int permutation_sign(std::vector<int> v) {
  int s = 1;
  for (std::size_t i = 0; i < v.size(); ++i)
    while (v[i] != int(i)) {
      std::swap(v[i], v[v[i]]);
      s = -s;
    }
  return s;
}

}  // namespace

bool Graph::has_vertex(int id) const {
  return std::any_of(vertices.begin(), vertices.end(), [&](const Vertex& v) { return v.id == id; });
}

bool Graph::has_edge(int id) const {
  return std::any_of(edges.begin(), edges.end(), [&](const Edge& e) { return e.id == id; });
}

int Graph::edge_index(int id) const {
  for (int i = 0; i < num_edges(); ++i)
    if (edges[i].id == id) return i;
  throw std::invalid_argument("no edge with id " + std::to_string(id));
}

const Edge& Graph::edge(int id) const { return edges[edge_index(id)]; }

EdgeSet Graph::edge_ids() const {
  EdgeSet r;
  for (const auto& e : edges) r.push_back(e.id);
  return r;
}

std::vector<int> Graph::vertex_ids() const {
  std::vector<int> r;
  for (const auto& v : vertices) r.push_back(v.id);
  return r;
}

int Graph::components() const { return components_with(*this, edge_ids()); }

int Graph::loop_number() const { return num_edges() - num_vertices() + components(); }

int Graph::genus() const {
  int w = 0;
  for (const auto& v : vertices) w += v.weight;
  return loop_number() + w;
}

int Graph::orientation_parity() const {
  auto ids = edge_ids();
  std::vector<int> perm;
  for (int id : orientation)
    perm.push_back(int(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin()));
  return orientation_sign * permutation_sign(perm);
}

void Graph::normalize() {
  std::sort(vertices.begin(), vertices.end(), [](auto& a, auto& b) { return a.id < b.id; });
  std::sort(edges.begin(), edges.end(), [](auto& a, auto& b) { return a.id < b.id; });
  std::sort(legs.begin(), legs.end(), [](auto& a, auto& b) { return a.index < b.index; });
  if (orientation.empty()) orientation = edge_ids();
  validate();
}

void Graph::validate() const {
  if (vertices.empty()) throw std::invalid_argument("graph has no vertices");
  std::set<int> vids, eids, lids;
  for (const auto& v : vertices) {
    if (!vids.insert(v.id).second) throw std::invalid_argument("duplicate vertex id " + std::to_string(v.id));
    if (v.weight < 0) throw std::invalid_argument("negative vertex weight");
  }
  for (const auto& e : edges) {
    if (e.id < 1 || e.id >= 20) throw std::invalid_argument("edge id out of range 1..19: " + std::to_string(e.id));
    if (!eids.insert(e.id).second) throw std::invalid_argument("duplicate edge id " + std::to_string(e.id));
    if (!vids.count(e.source) || !vids.count(e.target))
      throw std::invalid_argument("edge " + std::to_string(e.id) + " references unknown vertex");
    if (e.mass_label < 0) throw std::invalid_argument("negative mass label");
  }
  for (const auto& l : legs) {
    if (!lids.insert(l.index).second) throw std::invalid_argument("duplicate leg index " + std::to_string(l.index));
    if (!vids.count(l.vertex)) throw std::invalid_argument("leg references unknown vertex");
  }
  std::vector<int> o = orientation;
  std::sort(o.begin(), o.end());
  if (o != std::vector<int>(eids.begin(), eids.end()))
    throw std::invalid_argument("orientation is not a permutation of the edge ids");
  if (orientation_sign != 1 && orientation_sign != -1)
    throw std::invalid_argument("orientation sign must be +1 or -1");
}

EdgeSet sorted_edge_set(std::vector<int> ids) {
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    throw std::invalid_argument("repeated edge in edge set");
  return ids;
}

EdgeSet complement(const Graph& g, const EdgeSet& s) {
  EdgeSet r;
  for (const auto& e : g.edges)
    if (!std::binary_search(s.begin(), s.end(), e.id)) r.push_back(e.id);
  return r;
}

int components_with(const Graph& g, const EdgeSet& s) {
  auto idx = vertex_index(g);
  UnionFind uf(g.num_vertices());
  int c = g.num_vertices();
  for (int id : s) {
    const auto& e = g.edge(id);
    if (uf.unite(idx.at(e.source), idx.at(e.target))) --c;
  }
  return c;
}

int loop_number(const Graph& g, const EdgeSet& s) {
  auto idx = vertex_index(g);
  UnionFind uf(g.num_vertices());
  int h = 0;
  for (int id : s) {
    const auto& e = g.edge(id);
    if (!uf.unite(idx.at(e.source), idx.at(e.target))) ++h;
  }
  return h;
}

Graph contract(const Graph& g, int edge_id) {
  Graph r = g;
  int pos = int(std::find(g.orientation.begin(), g.orientation.end(), edge_id) - g.orientation.begin());
  const Edge e = g.edge(edge_id);
  r.edges.erase(r.edges.begin() + g.edge_index(edge_id));
  r.orientation.erase(r.orientation.begin() + pos);
  if (pos % 2) r.orientation_sign = -r.orientation_sign;
  if (e.is_tadpole()) {
    for (auto& v : r.vertices)
      if (v.id == e.source) v.weight += 1;
    return r;
  }
  int keep = std::min(e.source, e.target), drop = std::max(e.source, e.target);
  int dropped_weight = 0;
  for (const auto& v : r.vertices)
    if (v.id == drop) dropped_weight = v.weight;
  r.vertices.erase(std::remove_if(r.vertices.begin(), r.vertices.end(),
                                  [&](const Vertex& v) { return v.id == drop; }),
                   r.vertices.end());
  for (auto& v : r.vertices)
    if (v.id == keep) v.weight += dropped_weight;
  for (auto& f : r.edges) {
    if (f.source == drop) f.source = keep;
    if (f.target == drop) f.target = keep;
  }
  for (auto& l : r.legs)
    if (l.vertex == drop) l.vertex = keep;
  return r;
}

Graph contract(const Graph& g, const EdgeSet& s) {
  Graph r = g;
  for (int id : sorted_edge_set(s)) r = contract(r, id);
  return r;
}

Graph delete_edges(const Graph& g, const EdgeSet& s) {
  Graph r = g;
  for (int id : s) {
    if (!g.has_edge(id)) throw std::invalid_argument("no edge with id " + std::to_string(id));
    r.edges.erase(r.edges.begin() + r.edge_index(id));
    r.orientation.erase(std::find(r.orientation.begin(), r.orientation.end(), id));
  }
  return r;
}

Graph edge_subgraph(const Graph& g, const EdgeSet& s) {
  Graph r;
  std::set<int> vs;
  for (int id : s) {
    const auto& e = g.edge(id);
    r.edges.push_back(e);
    vs.insert(e.source);
    vs.insert(e.target);
  }
  for (const auto& v : g.vertices)
    if (vs.count(v.id)) r.vertices.push_back({v.id, 0});
  for (const auto& l : g.legs)
    if (vs.count(l.vertex)) r.legs.push_back(l);
  for (int id : g.orientation)
    if (std::binary_search(s.begin(), s.end(), id)) r.orientation.push_back(id);
  r.normalize();
  return r;
}

namespace {

struct LightEdge {
  int id, u, v;
};

void trees_rec(std::vector<LightEdge> es, int nverts, EdgeSet& cur, std::vector<EdgeSet>& out) {
  if (nverts == 1) {
    out.push_back(cur);
    return;
  }
  auto it = std::find_if(es.begin(), es.end(), [](const LightEdge& e) { return e.u != e.v; });
  if (it == es.end()) return;
  LightEdge e = *it;
  es.erase(it);
  // Trees avoiding e.
  trees_rec(es, nverts, cur, out);
  // Trees through e: contract it.
  std::vector<LightEdge> con;
  for (auto f : es) {
    if (f.u == e.v) f.u = e.u;
    if (f.v == e.v) f.v = e.u;
    if (f.u != f.v) con.push_back(f);
  }
  cur.push_back(e.id);
  trees_rec(con, nverts - 1, cur, out);
  cur.pop_back();
}

}  // namespace

std::vector<EdgeSet> spanning_trees(const Graph& g) {
  if (!g.connected()) throw std::invalid_argument("graph is disconnected");
  std::vector<LightEdge> es;
  for (const auto& e : g.edges)
    if (!e.is_tadpole()) es.push_back({e.id, e.source, e.target});
  std::vector<EdgeSet> out;
  EdgeSet cur;
  trees_rec(es, g.num_vertices(), cur, out);
  for (auto& t : out) std::sort(t.begin(), t.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<EdgeSet> spanning_forests(const Graph& g, const std::vector<std::vector<int>>& blocks) {
  auto idx = vertex_index(g);
  std::set<int> seen;
  for (const auto& b : blocks) {
    if (b.empty()) throw std::invalid_argument("empty block in vertex partition");
    for (int v : b) {
      if (!idx.count(v)) throw std::invalid_argument("block references unknown vertex " + std::to_string(v));
      if (!seen.insert(v).second) return {};
    }
  }
  int r = int(blocks.size());
  int n = g.num_vertices(), m = g.num_edges();
  int k = n - r;
  std::vector<EdgeSet> out;
  if (r == 0 || k < 0 || k > m) return out;
  std::vector<int> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    UnionFind uf(n);
    bool forest = true;
    for (int i : pick) {
      const auto& e = g.edges[i];
      if (!uf.unite(idx.at(e.source), idx.at(e.target))) {
        forest = false;
        break;
      }
    }
    if (forest) {
      std::vector<int> roots;
      bool ok = true;
      for (const auto& b : blocks) {
        int root = uf.find(idx.at(b[0]));
        for (int v : b) ok = ok && uf.find(idx.at(v)) == root;
        if (std::find(roots.begin(), roots.end(), root) != roots.end()) ok = false;
        roots.push_back(root);
      }
      if (ok) {
        EdgeSet f;
        for (int i : pick) f.push_back(g.edges[i].id);
        out.push_back(f);
      }
    }
    int i = k - 1;
    while (i >= 0 && pick[i] == m - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

CycleBasis fundamental_cycles(const Graph& g, const EdgeSet& tree, const std::vector<int>& order) {
  CycleBasis cb;
  cb.edge_ids = g.edge_ids();
  for (int id : order) {
    const auto& e = g.edge(id);
    std::vector<int> coeff(cb.edge_ids.size(), 0);
    coeff[g.edge_index(id)] = 1;
    // Tree path from target back to source.
    std::map<int, std::pair<int, int>> prev;  // vertex -> (edge id, sign)
    std::queue<int> q;
    q.push(e.target);
    prev[e.target] = {0, 0};
    while (!q.empty() && !prev.count(e.source)) {
      int x = q.front();
      q.pop();
      for (int t : tree) {
        const auto& f = g.edge(t);
        if (f.source == x && !prev.count(f.target)) {
          prev[f.target] = {t, 1};
          q.push(f.target);
        } else if (f.target == x && !prev.count(f.source)) {
          prev[f.source] = {t, -1};
          q.push(f.source);
        }
      }
    }
    for (int x = e.source; x != e.target;) {
      auto [t, s] = prev.at(x);
      coeff[g.edge_index(t)] += s;
      const auto& f = g.edge(t);
      x = s > 0 ? f.source : f.target;
    }
    cb.cycles.push_back(coeff);
  }
  return cb;
}

int CycleBasis::coefficient(int k, int edge_id) const {
  auto it = std::lower_bound(edge_ids.begin(), edge_ids.end(), edge_id);
  if (it == edge_ids.end() || *it != edge_id) return 0;
  return cycles[k][it - edge_ids.begin()];
}

namespace {

CycleBasis build_cycle_basis(const Graph& g, const std::vector<int>& marked, bool require_connected) {
  std::set<int> mk;
  for (int id : marked) {
    if (!g.has_edge(id)) throw std::invalid_argument("marked edge " + std::to_string(id) + " not in graph");
    if (!mk.insert(id).second) throw std::invalid_argument("marked edge repeated");
  }
  if (require_connected && !g.connected()) throw std::invalid_argument("graph is disconnected");
  EdgeSet rest;
  for (const auto& e : g.edges)
    if (!mk.count(e.id)) rest.push_back(e.id);
  if (components_with(g, rest) != g.components())
    throw std::invalid_argument("removing the marked edges disconnects the graph");

  auto idx = vertex_index(g);
  UnionFind uf(g.num_vertices());
  std::vector<int> tree;
  for (auto it = rest.rbegin(); it != rest.rend(); ++it) {
    const auto& e = g.edge(*it);
    if (uf.unite(idx.at(e.source), idx.at(e.target))) tree.push_back(e.id);
  }
  std::vector<int> order(marked.begin(), marked.end());
  for (int id : rest)
    if (std::find(tree.begin(), tree.end(), id) == tree.end()) order.push_back(id);

  CycleBasis cb = fundamental_cycles(g, tree, order);
  cb.marked = marked;
  return cb;
}

}  // namespace

CycleBasis cycle_basis(const Graph& g, const std::vector<int>& marked) {
  return build_cycle_basis(g, marked, true);
}

CycleBasis forest_cycle_basis(const Graph& g, const std::vector<int>& marked) {
  return build_cycle_basis(g, marked, false);
}

std::string describe(const Graph& g) {
  std::ostringstream os;
  os << "V=" << g.num_vertices() << " E=" << g.num_edges() << " h=" << g.loop_number() << " [";
  for (const auto& e : g.edges) os << " e" << e.id << ":" << e.source << "->" << e.target;
  os << " ]";
  return os.str();
}

}  // namespace canon
