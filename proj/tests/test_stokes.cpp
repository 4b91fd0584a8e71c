#include <doctest.h>

#include <set>

#include "canon/library.hpp"
#include "canon/stokes.hpp"
#include "helpers.hpp"

using namespace canon;
using testkit::make_graph;

namespace {

IntegralConfig config(long samples, std::uint64_t seed = 1) {
  IntegralConfig c;
  c.samples = samples;
  c.seed = seed;
  c.batches = 40;
  return c;
}

std::complex<double> signed_value(const StokesTerm& t) { return double(t.sign) * to_double(t.coeff) * t.value; }

// Sum of the edge terms minus the product terms, i.e. the total with the product signs reversed.
std::complex<double> flipped_total(const StokesReport& r) {
  std::complex<double> s = 0;
  for (const auto& t : r.terms) s += (t.kind == StokesTerm::EdgeContraction ? 1.0 : -1.0) * signed_value(t);
  return s;
}

Graph with_massless(Graph g, std::initializer_list<int> ids) {
  for (auto& e : g.edges)
    for (int id : ids)
      if (e.id == id) e.mass_label = 0;
  return g;
}

}  // namespace

TEST_CASE("product face signs") {
  Graph d = builtin_graph("dunce");
  CHECK(product_face_sign(d, {1}) == 1);
  CHECK(product_face_sign(d, {2}) == -1);
  CHECK(product_face_sign(d, {1, 2}) == -1);
  CHECK(product_face_sign(d, {3, 4}) == -1);
  CHECK(product_face_sign(d, {2, 4}) == 1);
  CHECK(product_face_sign(d, {1, 2, 3}) == 1);
  CHECK(product_face_sign(d, {2, 3, 4}) == -1);
  Graph r = d;
  r.orientation = {4, 3, 2, 1};
  CHECK(product_face_sign(r, {3, 4}) == -1);
  CHECK(product_face_sign(r, {1, 2}) == -1);
}

TEST_CASE("errors") {
  Graph p = builtin_graph("pentagon");
  Kinematics k = reference_kinematics("pentagon");
  CHECK_THROWS(stokes_residual(p, k, parse_form_spec("p1"), config(100)));
  CHECK_THROWS(stokes_residual(p, k, parse_form_spec("p5"), config(100)));
  Kinematics bad = k;
  bad.momenta.at(2) = -bad.momenta.at(1);
  bad.momenta.at(4) = -bad.momenta.at(3) - bad.momenta.at(5);
  CHECK_THROWS(stokes_residual(p, bad, parse_form_spec("p3"), config(100)));
  CHECK_THROWS(five_term_box(with_massless(p, {3}), k, config(100)));
  CHECK_THROWS(five_term_box(builtin_graph("box"), reference_kinematics("box"), config(100)));
  CHECK_THROWS(box_constant(p, k));
}

TEST_CASE("box constant") {
  std::mt19937_64 rng(91);
  Graph box = builtin_graph("box");
  for (int t = 0; t < 5; ++t) {
    Kinematics k = t ? random_kinematics(box, 2, rng) : reference_kinematics("box");
    Gaussian c = box_constant(box, k);
    CHECK(c == Gaussian(3) * testkit::box_numerator(make_bundle(box, k), k));
    CHECK(is_zero(c.re));
  }
}

TEST_CASE("term coverage") {
  std::mt19937_64 rng(92);
  int covered = 0;
  for (int t = 0; t < 12; ++t) {
    Graph g = testkit::random_graph(rng, 3 + t % 2, 5, 3 + t % 2);
    for (auto& e : g.edges)
      if (rng() % 3 == 0) e.mass_label = 0;
    Kinematics k = random_kinematics(g, 2, rng);
    StokesReport r;
    try {
      r = stokes_residual(g, k, parse_form_spec("p3"), config(400));
    } catch (const std::runtime_error&) {
      // Divergent contractions abort the sampling; coverage is checked elsewhere.
      continue;
    }
    std::vector<int> edges;
    std::set<EdgeSet> gammas;
    for (const auto& term : r.terms) {
      if (term.kind == StokesTerm::EdgeContraction) {
        REQUIRE(term.edges.size() == 1);
        edges.push_back(term.edges.front());
      } else {
        CHECK(term.edges.size() >= 2);
        CHECK(int(term.edges.size()) < g.num_edges());
        CHECK(term.left == "p3");
        CHECK(term.right == "1");
        CHECK(term.sign == product_face_sign(g, term.edges));
        CHECK((term.kind == StokesTerm::MMProduct) == classify_subgraph(g, k, term.edges).mm);
        gammas.insert(term.edges);
      }
    }
    CHECK(edges == g.orientation);
    std::set<EdgeSet> want;
    for (const auto& s : motic_subgraphs(g, k))
      if (s.size() == 4) want.insert(s);
    CHECK(gammas == want);
    ++covered;
  }
  CHECK(covered >= 4);
}

TEST_CASE("compact type: product terms vanish symbolically on one-loop graphs") {
  Graph p = with_massless(builtin_graph("pentagon"), {2, 4});
  Kinematics k = reference_kinematics("pentagon");
  k.masses.erase(2);
  k.masses.erase(4);
  StokesReport r = stokes_residual(p, k, parse_form_spec("p3"), config(400));
  int products = 0;
  for (const auto& t : r.terms)
    if (t.kind != StokesTerm::EdgeContraction) {
      ++products;
      CHECK(t.symbolic_zero);
      CHECK(t.value == std::complex<double>(0));
    }
  CHECK(products > 0);
}

TEST_CASE("pentagon: five edge terms, no motic terms, residual within the errors") {
  Graph p = builtin_graph("pentagon");
  Kinematics k = reference_kinematics("pentagon");
  CHECK(motic_subgraphs(p, k).empty());
  StokesReport r = five_term_box(p, k, config(200000, 7));
  REQUIRE(r.terms.size() == 5);
  for (const auto& t : r.terms) {
    CHECK(t.kind == StokesTerm::EdgeContraction);
    CHECK(t.has_oracle);
    CHECK(std::abs(t.value - t.oracle) <= 3 * std::hypot(t.stderr_, t.oracle_stderr));
    CHECK(std::abs(t.value.real()) <= 3 * t.stderr_);
  }
  CHECK(r.within_sigma(3));
  CHECK(r.scale > 0);

  // Reversed orientation: every signed term flips, the ratio does not change.
  Graph q = p;
  q.orientation_sign = -1;
  StokesReport s = five_term_box(q, k, config(200000, 7));
  REQUIRE(s.terms.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(signed_value(s.terms[i]) == -signed_value(r.terms[i]));
  CHECK(s.total == -r.total);
  CHECK(s.residual_ratio == r.residual_ratio);
}

TEST_CASE("motic product terms cancel edge terms with the face sign") {
  // A tadpole whose contraction is balanced by a massive-momentum subgraph.
  Graph g = make_graph(4, {{1, 2}, {2, 3}, {2, 4}, {3, 4}, {2, 2}}, {1, 2, 3, 4});
  g = with_massless(g, {2, 4, 5});
  std::mt19937_64 rng(93);
  Kinematics k = random_kinematics(g, 2, rng);
  StokesReport r = stokes_residual(g, k, parse_form_spec("p3"), config(400000, 3));
  int live = 0;
  for (const auto& t : r.terms) live += t.kind != StokesTerm::EdgeContraction && !t.symbolic_zero;
  CHECK(live > 0);
  MESSAGE("total " << r.total << " +- " << r.total_stderr);
  CHECK(r.within_sigma(3));
  CHECK(std::abs(flipped_total(r)) > 10 * r.total_stderr);
}

TEST_CASE("two m.m. product terms cancel each other") {
  Graph g = make_graph(4, {{1, 2}, {2, 3}, {2, 4}, {2, 1}, {3, 4}}, {1, 2, 3, 4});
  g = with_massless(g, {1, 4});
  std::mt19937_64 rng(94);
  Kinematics k = random_kinematics(g, 2, rng);
  StokesReport r = stokes_residual(g, k, parse_form_spec("p3"), config(400000, 4));
  std::vector<std::complex<double>> mm;
  for (const auto& t : r.terms)
    if (t.kind == StokesTerm::MMProduct && !t.symbolic_zero) mm.push_back(signed_value(t));
  REQUIRE(mm.size() == 2);
  MESSAGE("total " << r.total << " +- " << r.total_stderr);
  CHECK(r.within_sigma(3));
  CHECK(std::abs(mm[0] - mm[1]) > 10 * r.total_stderr);
}
