#pragma once

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "canon/graph.hpp"
#include "canon/kinematics.hpp"
#include "canon/laplacian.hpp"

namespace testkit {

using namespace canon;

// Edges given as (source, target); edge i+1 gets mass label i+1 when massive.
inline Graph make_graph(int nv, const std::vector<std::pair<int, int>>& edges, const std::vector<int>& leg_vertices,
                        bool massive = true) {
  Graph g;
  for (int v = 1; v <= nv; ++v) g.vertices.push_back({v, 0});
  int id = 1;
  for (const auto& [s, t] : edges) {
    g.edges.push_back({id, s, t, massive ? id : 0});
    ++id;
  }
  int li = 1;
  for (int v : leg_vertices) g.legs.push_back({li++, v});
  g.normalize();
  return g;
}

// Every connected multigraph (loops allowed) with 1..max_edges edges on exactly nv vertices,
// nv <= max_vertices, one leg per vertex. Edges are drawn as a multiset of vertex pairs.
inline std::vector<Graph> small_graphs(int max_edges = 5, int max_vertices = 4) {
  std::vector<Graph> out;
  for (int nv = 1; nv <= max_vertices; ++nv) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 1; a <= nv; ++a)
      for (int b = a; b <= nv; ++b) pairs.push_back({a, b});
    std::vector<int> legs;
    for (int v = 1; v <= nv; ++v) legs.push_back(v);
    std::vector<std::pair<int, int>> cur;
    auto rec = [&](auto&& self, std::size_t from) -> void {
      if (!cur.empty()) {
        Graph g = make_graph(nv, cur, legs);
        if (g.connected()) out.push_back(g);
      }
      if (int(cur.size()) == max_edges) return;
      for (std::size_t p = from; p < pairs.size(); ++p) {
        cur.push_back(pairs[p]);
        self(self, p);
        cur.pop_back();
      }
    };
    rec(rec, 0);
  }
  return out;
}

// Random connected graph: a random spanning tree plus extra edges (loops and multi-edges allowed).
inline Graph random_graph(std::mt19937_64& rng, int nv, int ne, int nlegs, bool massive = true) {
  std::vector<std::pair<int, int>> e;
  for (int v = 2; v <= nv; ++v) {
    std::uniform_int_distribution<int> pick(1, v - 1);
    if (rng() % 2)
      e.push_back({pick(rng), v});
    else
      e.push_back({v, pick(rng)});
  }
  std::uniform_int_distribution<int> any(1, nv);
  while (int(e.size()) < ne) e.push_back({any(rng), any(rng)});
  std::shuffle(e.begin(), e.end(), rng);
  std::vector<int> legs;
  for (int i = 0; i < nlegs; ++i) legs.push_back(i < nv ? i + 1 : any(rng));
  return make_graph(nv, e, legs, massive);
}

// route() shifted by a random element of the cycle space.
inline Routing random_routing(const Graph& g, const Kinematics& k, std::mt19937_64& rng) {
  Routing r = route(g, k);
  CycleBasis b = cycle_basis(g);
  for (int c = 0; c < b.size(); ++c) {
    Quaternion s = random_momentum(rng, k.dim);
    for (auto& [id, mu] : r) {
      int x = b.coefficient(c, id);
      if (x) mu += Quaternion(Rational(x)) * s;
    }
  }
  return r;
}

inline std::vector<Quaternion> random_shift(int h, int dim, std::mt19937_64& rng) {
  std::vector<Quaternion> s;
  for (int i = 0; i < h; ++i) s.push_back(random_momentum(rng, dim));
  return s;
}

inline CPoly var(int i) { return CPoly::var(i); }

inline Gaussian gq(const Quaternion& q) { return Gaussian(q.w, q.x); }

inline Gaussian det_n(std::vector<std::vector<Gaussian>> m) {
  int n = int(m.size());
  Gaussian d(1);
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && is_zero(m[p][c])) ++p;
    if (p == n) return Gaussian(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      d = -d;
    }
    d = d * m[c][c];
    for (int r = c + 1; r < n; ++r) {
      Gaussian f = m[r][c] / m[c][c];
      for (int j = c; j < n; ++j) m[r][j] = m[r][j] - f * m[c][j];
    }
  }
  return d;
}

// N with p3 = 3 N Omega / Xi^2 on a one-loop graph with four edges, from the routing.
inline Gaussian box_numerator(const LaplacianBundle& b, const Kinematics& k) {
  std::vector<std::vector<Gaussian>> m(4, std::vector<Gaussian>(4));
  for (int i = 0; i < 4; ++i) {
    const auto& e = b.graph.edges[i];
    Gaussian mu = gq(b.routing.at(e.id));
    m[0][i] = Gaussian(1);
    m[1][i] = mu;
    m[2][i] = conj(mu);
    m[3][i] = Gaussian(k.mass2(e.mass_label) + norm2(b.routing.at(e.id)));
  }
  return det_n(m);
}

}  // namespace testkit
