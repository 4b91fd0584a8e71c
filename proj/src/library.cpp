#include "canon/library.hpp"

#include <array>
#include <stdexcept>

namespace canon {

namespace {

Graph make(int nv, const std::vector<std::array<int, 3>>& edges, const std::vector<std::pair<int, int>>& legs,
           bool massive = true) {
  Graph g;
  for (int v = 1; v <= nv; ++v) g.vertices.push_back({v, 0});
  for (const auto& [id, s, t] : edges) g.edges.push_back({id, s, t, massive ? id : 0});
  for (const auto& [i, v] : legs) g.legs.push_back({i, v});
  g.normalize();
  return g;
}

Quaternion q(const char* a, const char* b, const char* c = "0", const char* d = "0") {
  return Quaternion(parse_rational(a), parse_rational(b), parse_rational(c), parse_rational(d));
}

// Fixed momenta for n legs; the last one balances the others.
std::vector<Quaternion> momenta(int n, int dim) {
  std::vector<Quaternion> m;
  if (dim == 4) {
    m = {q("1", "1/2", "0", "1/3"), q("-1/2", "1", "1/3", "0"), q("0", "-1", "1/2", "1"),
         q("1", "0", "-1", "1/2"), q("-1", "1/3", "1/2", "-1")};
  } else {
    switch (n) {
      case 2: m = {q("3/2", "1/2")}; break;
      case 3: m = {q("1", "1/2"), q("-1/3", "1")}; break;
      case 4: m = {q("1", "1/3"), q("-1/2", "1"), q("-1", "-1/2")}; break;
      default: m = {q("1", "1/2"), q("-1/3", "1"), q("-1", "-1/4"), q("1/2", "-1"), q("-2/3", "1/5")};
    }
  }
  m.resize(n - 1);
  Quaternion total;
  for (const auto& x : m) total += x;
  m.push_back(-total);
  return m;
}

}  // namespace

Graph cycle_graph(int n) {
  if (n < 1) throw std::invalid_argument("cycle needs at least one edge");
  std::vector<std::array<int, 3>> e;
  std::vector<std::pair<int, int>> l;
  for (int i = 1; i <= n; ++i) {
    e.push_back({i, i == 1 ? n : i - 1, i});
    l.push_back({i, i});
  }
  return make(n, e, l);
}

Graph banana(int n) {
  if (n < 2) throw std::invalid_argument("banana needs at least two edges");
  std::vector<std::array<int, 3>> e;
  for (int i = 1; i < n; ++i) e.push_back({i, 1, 2});
  e.push_back({n, 2, 1});
  return make(2, e, {{1, 1}, {2, 2}});
}

Graph builtin_graph(const std::string& name) {
  if (name == "bubble") return make(2, {{1, 1, 2}, {2, 2, 1}}, {{1, 2}, {2, 1}});
  if (name == "triangle") return cycle_graph(3);
  if (name == "box") return cycle_graph(4);
  if (name == "pentagon") return cycle_graph(5);
  if (name == "hexagon") return cycle_graph(6);
  if (name.rfind("banana-", 0) == 0) {
    int n = 0;
    try {
      n = std::stoi(name.substr(7));
    } catch (...) {
      throw std::invalid_argument("unknown graph '" + name + "'");
    }
    return banana(n);
  }
  if (name == "dunce") return make(3, {{1, 1, 2}, {2, 3, 1}, {3, 2, 3}, {4, 2, 3}}, {{1, 1}, {2, 2}, {3, 3}});
  if (name == "double-bubble")
    return make(3, {{1, 1, 2}, {2, 2, 1}, {3, 2, 3}, {4, 3, 2}}, {{1, 1}, {2, 2}, {3, 3}});
  if (name == "box-triangle")
    // 1 top left, 2 bottom left, 3 bottom middle, 4 top middle, 5 right.
    return make(5, {{1, 1, 4}, {2, 2, 1}, {3, 3, 2}, {4, 4, 3}, {5, 4, 5}, {6, 5, 3}},
                {{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}});
  if (name == "wheel-3" || name == "wheel-3-legs") {
    std::vector<std::array<int, 3>> e = {{1, 1, 2}, {2, 2, 3}, {3, 3, 1}, {4, 4, 1}, {5, 4, 2}, {6, 4, 3}};
    if (name == "wheel-3") return make(4, e, {}, false);
    return make(4, e, {{1, 1}, {2, 2}, {3, 3}});
  }
  throw std::invalid_argument("unknown graph '" + name + "'");
}

std::vector<std::string> builtin_names() {
  return {"bubble", "triangle", "banana-3", "banana-4", "box",     "dunce",       "double-bubble",
          "box-triangle", "pentagon", "hexagon", "wheel-3", "wheel-3-legs"};
}

Kinematics reference_kinematics(const std::string& name) {
  Graph g = builtin_graph(name);
  Kinematics k;
  k.dim = name == "hexagon" ? 4 : 2;
  if (!g.legs.empty()) {
    auto m = momenta(int(g.legs.size()), k.dim);
    for (std::size_t i = 0; i < g.legs.size(); ++i) k.momenta[g.legs[i].index] = m[i];
  }
  for (const auto& e : g.edges)
    if (e.mass_label) {
      Rational m2(2 + e.mass_label, 2);
      m2.canonicalize();
      k.masses[e.mass_label] = m2;
    }
  validate(g, k);
  return k;
}

}  // namespace canon
