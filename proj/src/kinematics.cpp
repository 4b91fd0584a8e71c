#include "canon/kinematics.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace canon {

Rational Kinematics::mass2(int label) const {
  if (label == 0) return Rational(0);
  auto it = masses.find(label);
  if (it == masses.end()) throw std::invalid_argument("no mass for label " + std::to_string(label));
  return it->second;
}

void validate(const Graph& g, const Kinematics& k) {
  if (k.dim != 2 && k.dim != 4) throw std::invalid_argument("dimension must be 2 or 4");
  Quaternion total;
  for (const auto& l : g.legs) {
    auto it = k.momenta.find(l.index);
    if (it == k.momenta.end()) throw std::invalid_argument("no momentum for leg " + std::to_string(l.index));
    if (k.dim == 2 && !it->second.is_complex())
      throw std::invalid_argument("quaternionic momentum in dimension 2");
    total += it->second;
  }
  for (const auto& [leg, q] : k.momenta) {
    bool found = std::any_of(g.legs.begin(), g.legs.end(), [&](const Leg& l) { return l.index == leg; });
    if (!found) throw std::invalid_argument("momentum for unknown leg " + std::to_string(leg));
  }
  if (!is_zero(total)) throw std::invalid_argument("external momenta do not sum to zero");
  for (const auto& [label, m2] : k.masses)
    if (sgn(m2) < 0) throw std::invalid_argument("negative squared mass");
  for (const auto& e : g.edges) (void)k.mass2(e.mass_label);
}

Quaternion vertex_momentum(const Graph& g, const Kinematics& k, int vertex) {
  Quaternion q;
  for (const auto& l : g.legs)
    if (l.vertex == vertex) q += k.momenta.at(l.index);
  return q;
}

bool is_generic(const Graph& g, const Kinematics& k) {
  int n = int(g.legs.size());
  if (n > 20) throw std::invalid_argument("too many legs for the genericity check");
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    Quaternion s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s += k.momenta.at(g.legs[i].index);
    if (sgn(norm2(s)) == 0) return false;
  }
  return true;
}

namespace {

Routing route_impl(const Graph& g, const Kinematics& k) {
  std::map<int, int> idx;
  for (int i = 0; i < g.num_vertices(); ++i) idx[g.vertices[i].id] = i;
  std::vector<int> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::vector<int> tree;
  for (auto it = g.edges.rbegin(); it != g.edges.rend(); ++it) {
    int a = find(idx[it->source]), b = find(idx[it->target]);
    if (a != b) {
      parent[std::max(a, b)] = std::min(a, b);
      tree.push_back(it->id);
    }
  }
  Routing r;
  for (const auto& e : g.edges) r[e.id] = Quaternion();
  // Flow through a tree edge equals the momentum injected on the source side of the cut.
  for (int t : tree) {
    const auto& e = g.edge(t);
    std::set<int> side{e.source};
    std::vector<int> stack{e.source};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int u : tree) {
        if (u == t) continue;
        const auto& f = g.edge(u);
        int y = f.source == x ? f.target : f.target == x ? f.source : -1;
        if (y >= 0 && side.insert(y).second) stack.push_back(y);
      }
    }
    Quaternion q;
    for (int v : side) q += vertex_momentum(g, k, v);
    r[t] = q;
  }
  return r;
}

}  // namespace

Routing route(const Graph& g, const Kinematics& k) {
  if (!g.connected()) throw std::invalid_argument("graph is disconnected");
  validate(g, k);
  return route_impl(g, k);
}

Routing route_forest(const Graph& g, const Kinematics& k) {
  Routing r = route_impl(g, k);
  if (!satisfies_conservation(g, k, r))
    throw std::invalid_argument("momentum is not conserved on every component");
  return r;
}

bool satisfies_conservation(const Graph& g, const Kinematics& k, const Routing& r) {
  for (const auto& v : g.vertices) {
    Quaternion flow;
    for (const auto& e : g.edges) {
      if (e.source == v.id) flow += r.at(e.id);
      if (e.target == v.id) flow -= r.at(e.id);
    }
    if (flow != vertex_momentum(g, k, v.id)) return false;
  }
  return true;
}

Kinematics restrict_kinematics(const Graph& g, const Kinematics& k) {
  Kinematics r;
  r.dim = k.dim;
  r.masses = k.masses;
  for (const auto& l : g.legs) r.momenta[l.index] = k.momenta.at(l.index);
  return r;
}

SubgraphClass classify_subgraph(const Graph& g, const Kinematics& k, const EdgeSet& s_in) {
  EdgeSet s = sorted_edge_set(s_in);
  for (int id : s)
    if (!g.has_edge(id)) throw std::invalid_argument("edge " + std::to_string(id) + " not in graph");

  auto mm_of = [&](const EdgeSet& t, bool& mass, bool& mom) {
    mass = true;
    for (const auto& e : g.edges)
      if (sgn(k.mass2(e.mass_label)) != 0 && !std::binary_search(t.begin(), t.end(), e.id)) mass = false;
    // Vertices carrying momentum must end up in one component.
    std::map<int, int> idx;
    for (int i = 0; i < g.num_vertices(); ++i) idx[g.vertices[i].id] = i;
    std::vector<int> p(g.num_vertices());
    std::iota(p.begin(), p.end(), 0);
    std::function<int(int)> find = [&](int x) { return p[x] == x ? x : p[x] = find(p[x]); };
    for (int id : t) {
      const auto& e = g.edge(id);
      p[find(idx[e.source])] = find(idx[e.target]);
    }
    int root = -1;
    mom = true;
    for (const auto& v : g.vertices) {
      if (is_zero(vertex_momentum(g, k, v.id))) continue;
      int r = find(idx[v.id]);
      if (root < 0) root = r;
      if (r != root) mom = false;
    }
  };

  SubgraphClass c;
  mm_of(s, c.mass_spanning, c.momentum_spanning);
  c.mm = c.mass_spanning && c.momentum_spanning;
  c.loops = loop_number(g, s);
  c.core = true;
  bool bridges_essential = true;
  for (int id : s) {
    EdgeSet t;
    for (int x : s)
      if (x != id) t.push_back(x);
    bool in_loop = loop_number(g, t) < c.loops;
    if (!in_loop) {
      c.core = false;
      bool ms, ps;
      mm_of(t, ms, ps);
      if (ms && ps) bridges_essential = false;
    }
  }
  bool strict = int(s.size()) < g.num_edges();
  c.motic = strict && s.size() >= 2 && (c.core || (c.mm && bridges_essential));
  return c;
}

std::vector<EdgeSet> motic_subgraphs(const Graph& g, const Kinematics& k) {
  if (!is_generic(g, k)) throw std::invalid_argument("kinematics are not generic");
  int n = g.num_edges();
  if (n > 20) throw std::invalid_argument("too many edges");
  std::vector<EdgeSet> out;
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    if (__builtin_popcount(mask) < 2) continue;
    EdgeSet s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(g.edges[i].id);
    if (classify_subgraph(g, k, s).motic) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](const EdgeSet& a, const EdgeSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

Rational random_rational(std::mt19937_64& rng, int range, int den) {
  std::uniform_int_distribution<int> num(-range * den, range * den);
  std::uniform_int_distribution<int> d(1, den);
  Rational r(num(rng), d(rng));
  r.canonicalize();
  return r;
}

Quaternion random_momentum(std::mt19937_64& rng, int dim) {
  Quaternion q(random_rational(rng), random_rational(rng), Rational(0), Rational(0));
  if (dim == 4) {
    q.y = random_rational(rng);
    q.z = random_rational(rng);
  }
  return q;
}

Kinematics random_kinematics(const Graph& g, int dim, std::mt19937_64& rng, bool massive) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Kinematics k;
    k.dim = dim;
    Quaternion total;
    for (std::size_t i = 0; i < g.legs.size(); ++i) {
      int leg = g.legs[i].index;
      if (i + 1 == g.legs.size()) {
        k.momenta[leg] = -total;
      } else {
        k.momenta[leg] = random_momentum(rng, dim);
        total += k.momenta[leg];
      }
    }
    std::uniform_int_distribution<int> m(1, 9);
    std::uniform_int_distribution<int> d(1, 4);
    for (const auto& e : g.edges)
      if (e.mass_label != 0 && !k.masses.count(e.mass_label)) {
        Rational r = massive ? Rational(m(rng), d(rng)) : Rational(0);
        r.canonicalize();
        k.masses[e.mass_label] = r;
      }
    if (g.legs.empty() || is_generic(g, k)) return k;
  }
  throw std::runtime_error("could not draw generic kinematics");
}

}  // namespace canon
