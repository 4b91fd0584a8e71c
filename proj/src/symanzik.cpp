#include "canon/symanzik.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace canon {

CPoly complement_monomial(const Graph& g, const EdgeSet& s) {
  Monomial m;
  for (const auto& e : g.edges)
    if (!std::binary_search(s.begin(), s.end(), e.id)) m.e[e.id] += 1;
  return CPoly::monomial(m, Gaussian(1));
}

CPoly psi(const Graph& g) {
  if (!g.connected()) throw std::invalid_argument("graph is disconnected");
  std::vector<CPoly::Term> ts;
  for (const auto& t : spanning_trees(g)) ts.push_back(complement_monomial(g, t).lead());
  return CPoly::from_terms(std::move(ts));
}

CPoly phi(const Graph& g, const Kinematics& k) {
  if (!g.connected()) throw std::invalid_argument("graph is disconnected");
  validate(g, k);
  // Each two-tree forest contributes |q(T1)|^2, the squared momentum entering one side.
  std::vector<CPoly::Term> ts;
  int n = g.num_vertices(), m = g.num_edges();
  int kk = n - 2;
  if (kk < 0) return CPoly();
  std::vector<int> pick(kk);
  for (int i = 0; i < kk; ++i) pick[i] = i;
  std::map<int, int> idx;
  for (int i = 0; i < n; ++i) idx[g.vertices[i].id] = i;
  while (kk <= m) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    auto find = [&](int x) {
      while (p[x] != x) x = p[x] = p[p[x]];
      return x;
    };
    bool forest = true;
    for (int i : pick) {
      int a = find(idx[g.edges[i].source]), b = find(idx[g.edges[i].target]);
      if (a == b) {
        forest = false;
        break;
      }
      p[a] = b;
    }
    if (forest) {
      int r0 = find(0);
      Quaternion q;
      for (const auto& v : g.vertices)
        if (find(idx[v.id]) == r0) q += vertex_momentum(g, k, v.id);
      Rational w = norm2(q);
      if (sgn(w) != 0) {
        EdgeSet f;
        for (int i : pick) f.push_back(g.edges[i].id);
        ts.push_back({complement_monomial(g, f).lead().m, Gaussian(w)});
      }
    }
    int i = kk - 1;
    while (i >= 0 && pick[i] == m - kk + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < kk; ++j) pick[j] = pick[j - 1] + 1;
  }
  return CPoly::from_terms(std::move(ts));
}

CPoly mass_form(const Graph& g, const Kinematics& k) {
  CPoly s;
  for (const auto& e : g.edges) s += Gaussian(k.mass2(e.mass_label)) * CPoly::var(e.id);
  return s;
}

CPoly xi(const Graph& g, const Kinematics& k) { return phi(g, k) + mass_form(g, k) * psi(g); }

CPoly forest_poly(const Graph& g, const std::vector<std::vector<int>>& blocks) {
  CPoly s;
  for (const auto& f : spanning_forests(g, blocks)) s += complement_monomial(g, f);
  return s;
}

CPoly phi_from_forests(const Graph& g, const Kinematics& k, const Routing& r) {
  if (!g.connected()) throw std::invalid_argument("graph is disconnected");
  validate(g, k);
  if (!satisfies_conservation(g, k, r)) throw std::invalid_argument("routing violates momentum conservation");
  CPoly s;
  for (const auto& e : g.edges) {
    if (e.is_tadpole()) continue;
    Rational w = norm2(r.at(e.id));
    if (sgn(w) == 0) continue;
    // Psi of G/e carries no a_e, so multiplying by a_e restores the variable set of G.
    s += Gaussian(w) * CPoly::var(e.id) * psi(contract(g, e.id));
  }
  for (const auto& e : g.edges)
    for (const auto& f : g.edges) {
      if (e.id == f.id || e.is_tadpole() || f.is_tadpole()) continue;
      Rational w = dot(r.at(e.id), r.at(f.id));
      if (sgn(w) == 0) continue;
      auto block = [](int a, int b) {
        std::vector<int> v{a};
        if (b != a) v.push_back(b);
        return v;
      };
      // Forests on G minus {e, f}: the prefactor a_e a_f then keeps the degree at h + 1.
      Graph d = delete_edges(g, sorted_edge_set({e.id, f.id}));
      CPoly plus = forest_poly(d, {block(e.source, f.source), block(e.target, f.target)});
      CPoly minus = forest_poly(d, {block(e.source, f.target), block(f.source, e.target)});
      s += Gaussian(w) * CPoly::var(e.id) * CPoly::var(f.id) * (plus - minus);
    }
  return s;
}

}  // namespace canon
