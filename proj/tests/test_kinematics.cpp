#include <doctest.h>

#include <set>

#include "canon/library.hpp"
#include "canon/symanzik.hpp"
#include "helpers.hpp"

using namespace canon;
using testkit::make_graph;

namespace {

Quaternion cq(long re, long im) { return Quaternion(Rational(re), Rational(im), 0, 0); }

Kinematics two_legs(const Quaternion& q) {
  Kinematics k;
  k.momenta = {{1, q}, {2, -q}};
  k.masses = {{1, Rational(1)}, {2, Rational(2)}};
  return k;
}

bool zero_boundary(const Graph& g, const Routing& a, const Routing& b) {
  for (const auto& v : g.vertices) {
    Quaternion s;
    for (const auto& e : g.edges) {
      Quaternion d = a.at(e.id) - b.at(e.id);
      if (e.source == v.id) s += d;
      if (e.target == v.id) s -= d;
    }
    if (!is_zero(s)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("genericity") {
  Graph b = builtin_graph("bubble");
  CHECK(is_generic(b, two_legs(cq(1, 2))));
  Graph box = builtin_graph("box");
  Kinematics k;
  k.momenta = {{1, cq(1, 0)}, {2, cq(-1, 0)}, {3, cq(0, 1)}, {4, cq(0, -1)}};
  CHECK_FALSE(is_generic(box, k));
  k.momenta = {{1, cq(0, 0)}, {2, cq(1, 0)}, {3, cq(0, 1)}, {4, cq(-1, -1)}};
  CHECK_FALSE(is_generic(box, k));
  k.momenta = {{1, cq(1, 0)}, {2, cq(0, 1)}, {3, cq(2, 3)}, {4, cq(-3, -4)}};
  CHECK(is_generic(box, k));
  for (const auto& name : builtin_names())
    if (!builtin_graph(name).legs.empty()) CHECK(is_generic(builtin_graph(name), reference_kinematics(name)));
}

TEST_CASE("validation of kinematics") {
  Graph b = builtin_graph("bubble");
  Kinematics k = two_legs(cq(1, 1));
  CHECK_NOTHROW(validate(b, k));
  Kinematics bad = k;
  bad.momenta[2] = cq(0, 1);
  CHECK_THROWS(validate(b, bad));
  bad = k;
  bad.masses[1] = Rational(-1);
  CHECK_THROWS(validate(b, bad));
  bad = k;
  bad.momenta[1] = Quaternion(1, 0, 1, 0);
  bad.momenta[2] = -bad.momenta[1];
  CHECK_THROWS(validate(b, bad));
  bad = k;
  bad.masses.erase(2);
  CHECK_THROWS(validate(b, bad));
}

TEST_CASE("bubble routing") {
  Graph b = builtin_graph("bubble");
  Quaternion q = cq(3, 1);
  // Leg 1 sits at the target of e1.
  Kinematics k = two_legs(q);
  Routing r = route(b, k);
  CHECK(is_zero(r.at(1)));
  CHECK(r.at(2) - r.at(1) == q);
  CHECK(satisfies_conservation(b, k, r));
}

TEST_CASE("box routing") {
  Graph box = builtin_graph("box");
  Kinematics k = reference_kinematics("box");
  Routing r = route(box, k);
  CHECK(is_zero(r.at(1)));
  for (int i = 1; i <= 3; ++i) CHECK(r.at(i + 1) - r.at(i) == k.momenta.at(i));
  CHECK(r.at(1) - r.at(4) == k.momenta.at(4));
}

TEST_CASE("tadpoles carry no momentum") {
  Graph g = make_graph(2, {{1, 2}, {2, 2}, {2, 1}}, {1, 2});
  Kinematics k = two_legs(cq(1, 2));
  k.masses[3] = Rational(3);
  Routing r = route(g, k);
  CHECK(is_zero(r.at(2)));
  CHECK(satisfies_conservation(g, k, r));
}

TEST_CASE("routing rejects disconnected graphs") {
  Graph g = make_graph(4, {{1, 2}, {3, 4}}, {1, 2});
  CHECK_THROWS(route(g, two_legs(cq(1, 0))));
}

TEST_CASE("routings conserve momentum and differ by cycles") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 200; ++t) {
    int nv = 2 + int(rng() % 4);
    Graph g = testkit::random_graph(rng, nv, nv + int(rng() % 4), nv);
    int dim = t % 2 ? 4 : 2;
    Kinematics k = random_kinematics(g, dim, rng);
    Routing a = route(g, k);
    Routing b = testkit::random_routing(g, k, rng);
    CHECK(satisfies_conservation(g, k, a));
    CHECK(satisfies_conservation(g, k, b));
    CHECK(zero_boundary(g, a, b));
    for (const auto& e : g.edges)
      if (!e.is_tadpole()) {
        Routing c = b;
        c.at(e.id) += Quaternion(1);
        CHECK_FALSE(satisfies_conservation(g, k, c));
        break;
      }
  }
}

TEST_CASE("classification on the dunce cap") {
  Graph d = builtin_graph("dunce");
  Kinematics k = reference_kinematics("dunce");
  auto c = classify_subgraph(d, k, {3, 4});
  CHECK(c.core);
  CHECK_FALSE(c.mm);
  CHECK_FALSE(c.mass_spanning);
  CHECK(c.loops == 1);
  auto all = classify_subgraph(d, k, d.edge_ids());
  CHECK(all.mm);
  CHECK(all.core);
}

TEST_CASE("bubble with a massless edge") {
  Graph b = builtin_graph("bubble");
  b.edges[1].mass_label = 0;
  Kinematics k = two_legs(cq(1, 1));
  k.masses.erase(2);
  auto c = classify_subgraph(b, k, {1});
  CHECK(c.mass_spanning);
  CHECK(c.momentum_spanning);
  CHECK(c.mm);
  CHECK_FALSE(c.core);
}

TEST_CASE("motic subgraphs of the examples") {
  CHECK(motic_subgraphs(builtin_graph("pentagon"), reference_kinematics("pentagon")).empty());
  CHECK(motic_subgraphs(builtin_graph("bubble"), reference_kinematics("bubble")).empty());
  auto d = motic_subgraphs(builtin_graph("dunce"), reference_kinematics("dunce"));
  CHECK(std::find(d.begin(), d.end(), EdgeSet{3, 4}) != d.end());
  Graph box = builtin_graph("box");
  Kinematics k = reference_kinematics("box");
  k.momenta.at(1) = Quaternion(0);
  CHECK_THROWS(motic_subgraphs(box, k));
}

TEST_CASE("motic predicate by brute force and idempotence") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 80; ++t) {
    int nv = 2 + int(rng() % 3);
    Graph g = testkit::random_graph(rng, nv, nv + 1 + int(rng() % 3), nv);
    // Some massless edges.
    for (auto& e : g.edges)
      if (rng() % 3 == 0) e.mass_label = 0;
    Kinematics k = random_kinematics(g, 2, rng);
    auto m = motic_subgraphs(g, k);
    std::set<EdgeSet> got(m.begin(), m.end());
    auto ids = g.edge_ids();
    int n = int(ids.size());
    for (int mask = 1; mask + 1 < (1 << n); ++mask) {
      EdgeSet s;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) s.push_back(ids[i]);
      auto c = classify_subgraph(g, k, s);
      bool want = s.size() >= 2 && c.motic;
      CHECK(got.count(s) == (want ? 1u : 0u));
      if (c.core && s.size() >= 2) CHECK(c.motic);
      if (want) {
        // Every edge lies in a loop of s or its removal loses m.m. content.
        for (int e : s) {
          EdgeSet r;
          for (int x : s)
            if (x != e) r.push_back(x);
          bool in_loop = loop_number(g, r) < loop_number(g, s);
          bool loses = c.mm && !classify_subgraph(g, k, r).mm;
          CHECK((in_loop || loses || !c.mm));
        }
      }
    }
    for (const auto& s : m) CHECK(classify_subgraph(g, k, s).motic);
  }
}

TEST_CASE("restricted kinematics follow the legs") {
  Graph box = builtin_graph("box");
  Kinematics k = reference_kinematics("box");
  Graph c = contract(box, 2);
  Kinematics r = restrict_kinematics(c, k);
  CHECK(r.momenta.size() == 4);
  CHECK_NOTHROW(validate(c, r));
  Graph s = edge_subgraph(box, {1, 2});
  Kinematics rs = restrict_kinematics(s, k);
  CHECK(rs.masses.count(1));
}

TEST_CASE("random kinematics are generic and valid") {
  std::mt19937_64 rng(43);
  for (const auto& name : builtin_names()) {
    Graph g = builtin_graph(name);
    for (int t = 0; t < 5; ++t) {
      Kinematics k = random_kinematics(g, name == "hexagon" ? 4 : 2, rng);
      CHECK_NOTHROW(validate(g, k));
      if (!g.legs.empty()) CHECK(is_generic(g, k));
    }
  }
}
