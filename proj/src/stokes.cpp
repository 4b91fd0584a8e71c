#include "canon/stokes.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "canon/library.hpp"
#include "canon/symanzik.hpp"

namespace canon {

std::string StokesTerm::kind_name() const {
  switch (kind) {
    case EdgeContraction: return "edge";
    case CoreProduct: return "core";
    case MMProduct: return "mm";
  }
  return "?";
}

namespace {

int shuffle_sign(const std::vector<int>& order, const EdgeSet& front) {
  // Number of transpositions bringing the edges of `front` to the front, keeping relative order.
  int inv = 0, seen_back = 0;
  for (int id : order) {
    if (std::binary_search(front.begin(), front.end(), id))
      inv += seen_back;
    else
      ++seen_back;
  }
  return inv % 2 ? -1 : 1;
}

Graph without_legs(Graph g) {
  g.legs.clear();
  return g;
}

Kinematics bare_kinematics(const Kinematics& k) {
  Kinematics r;
  r.dim = k.dim;
  r.masses = k.masses;
  return r;
}

struct Piece {
  Graph graph;
  Kinematics kin;
  FormSpec spec;
};

std::complex<double> combine(const IntegralResult& a, const IntegralResult& b, double& err) {
  err = std::hypot(std::abs(a.estimate) * b.stderr_, std::abs(b.estimate) * a.stderr_);
  return a.estimate * b.estimate;
}

IntegralResult integrate_piece(const Piece& p, const IntegralConfig& cfg) {
  LaplacianBundle b = p.graph.connected() ? make_bundle(p.graph, p.kin) : make_forest_bundle(p.graph, p.kin);
  return integrate(p.spec, b, cfg);
}

bool symbolically_zero(const Piece& p) {
  if (p.spec.is_zero()) return true;
  LaplacianBundle b = p.graph.connected() ? make_bundle(p.graph, p.kin) : make_forest_bundle(p.graph, p.kin);
  return realize(p.spec, b).is_zero();
}

void finalize(StokesReport& r) {
  r.total = 0;
  double var = 0;
  r.scale = 0;
  for (const auto& t : r.terms) {
    std::complex<double> v = double(t.sign) * to_double(t.coeff) * t.value;
    r.total += v;
    var += std::pow(to_double(t.coeff) * t.stderr_, 2);
    r.scale = std::max(r.scale, std::abs(v));
  }
  r.total_stderr = std::sqrt(var);
  r.residual_ratio = r.scale > 0 ? std::abs(r.total) / r.scale : 0;
}

}  // namespace

int product_face_sign(const Graph& g, const EdgeSet& gamma) {
  int k = int(gamma.size());
  return shuffle_sign(g.orientation, gamma) * (k % 2 ? 1 : -1);
}

StokesReport stokes_residual(const Graph& g, const Kinematics& k, const FormSpec& spec, const IntegralConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  if (!g.connected()) throw std::invalid_argument("graph is not connected");
  if (spec.degree() + 2 != g.num_edges())
    throw std::invalid_argument("form degree must be two less than the number of edges");
  if (!is_generic(g, k)) throw std::invalid_argument("kinematics are not generic");
  check_spec_kinds(spec, k.dim);

  StokesReport rep;
  std::uint64_t term_index = 0;
  auto sub = [&](IntegralConfig c) {
    c.seed = batch_seed(cfg.seed, 0x5707e5ULL + term_index++);
    return c;
  };

  for (int pos = 0; pos < g.num_edges(); ++pos) {
    int e = g.orientation[pos];
    StokesTerm t;
    t.kind = StokesTerm::EdgeContraction;
    t.edges = {e};
    Graph ge = contract(g, e);
    t.sign = ge.orientation_sign;
    ge.orientation_sign = 1;
    auto r = integrate(spec, ge, restrict_kinematics(ge, k), sub(cfg));
    t.value = r.estimate;
    t.stderr_ = r.stderr_;
    rep.terms.push_back(t);
  }

  for (const auto& gamma : motic_subgraphs(g, k)) {
    auto cls = classify_subgraph(g, k, gamma);
    Graph sg = edge_subgraph(g, gamma);
    sg.orientation_sign = 1;
    Graph qg = contract(g, gamma);
    qg.orientation_sign = 1;
    int eg = int(gamma.size());
    for (const auto& cp : coproduct(spec)) {
      if (cp.left.is_zero() || cp.right.is_zero()) continue;
      if (cp.left.degree() != eg - 1) continue;
      StokesTerm t;
      t.edges = gamma;
      t.coeff = cp.coeff;
      t.left = cp.left.str();
      t.right = cp.right.str();
      t.sign = product_face_sign(g, gamma);
      Piece a, b;
      if (cls.mm) {
        t.kind = StokesTerm::MMProduct;
        a = {sg, restrict_kinematics(sg, k), cp.left};
        b = {without_legs(qg), bare_kinematics(k), to_first_kind(cp.right)};
      } else {
        t.kind = StokesTerm::CoreProduct;
        a = {without_legs(sg), bare_kinematics(k), to_first_kind(cp.left)};
        b = {qg, restrict_kinematics(qg, k), cp.right};
      }
      t.symbolic_zero = symbolically_zero(a) || symbolically_zero(b);
      if (!t.symbolic_zero) {
        auto ra = integrate_piece(a, sub(cfg));
        auto rb = integrate_piece(b, sub(cfg));
        t.value = combine(ra, rb, t.stderr_);
      } else {
        term_index += 2;
      }
      rep.terms.push_back(t);
    }
  }
  finalize(rep);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

Gaussian box_constant(const Graph& g, const Kinematics& k) {
  if (g.num_edges() != 4 || g.loop_number() != 1) throw std::invalid_argument("not a one-loop graph with four edges");
  SymbolicForm f = realize(parse_form_spec("p3"), g, k);
  auto ids = g.edge_ids();
  RatFn r = f.coefficient({ids[1], ids[2], ids[3]});
  CPoly x = xi(g, k);
  auto q = divide_exact(r.num * x * x, r.den * CPoly::var(ids[0]));
  if (!q || !q->is_constant()) throw std::logic_error("p3 is not proportional to Omega / Xi^2");
  return -q->constant_term();
}

StokesReport five_term_box(const Graph& p, const Kinematics& k, const IntegralConfig& cfg) {
  if (p.num_edges() != 5 || p.loop_number() != 1 || p.num_vertices() != 5 || p.legs.size() != 5)
    throw std::invalid_argument("expected a pentagon with five legs");
  for (const auto& e : p.edges)
    if (sgn(k.mass2(e.mass_label)) == 0) throw std::invalid_argument("every pentagon edge must be massive");
  StokesReport rep = stokes_residual(p, k, parse_form_spec("p3"), cfg);
  std::uint64_t idx = 0;
  for (auto& t : rep.terms) {
    if (t.kind != StokesTerm::EdgeContraction) continue;
    Graph box = contract(p, t.edges.front());
    box.orientation_sign = 1;
    Kinematics bk = restrict_kinematics(box, k);
    Gaussian c = box_constant(box, bk);
    IntegralConfig oc = cfg;
    oc.seed = batch_seed(cfg.seed, 0x0ac1eULL + idx++);
    auto r = integrate_parametric(box, bk, 0, 2, CPoly(Gaussian(1)), oc);
    auto cc = to_complex(c);
    t.has_oracle = true;
    t.oracle = cc * r.estimate;
    t.oracle_stderr = std::abs(cc) * r.stderr_;
  }
  return rep;
}

StokesReport five_term_box(const Kinematics& k, const IntegralConfig& cfg) {
  return five_term_box(builtin_graph("pentagon"), k, cfg);
}

}  // namespace canon
