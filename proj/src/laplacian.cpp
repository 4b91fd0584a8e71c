#include "canon/laplacian.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "canon/symanzik.hpp"

namespace canon {

CMatrix LaplacianBundle::lambda_tilde_matrix() const {
  return kin.dim == 4 ? chi(lambda_tilde) : to_complex(lambda_tilde);
}

CMatrix build_laplacian(const Graph& g, const CycleBasis& b) {
  int h = b.size();
  CMatrix m(h, h);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < h; ++j) {
      CPoly s;
      for (const auto& e : g.edges) {
        int c = b.coefficient(i, e.id) * b.coefficient(j, e.id);
        if (c) s += Gaussian(c) * CPoly::var(e.id);
      }
      m(i, j) = s;
    }
  return m;
}

HMatrix build_gen_laplacian(const Graph& g, const Kinematics& k, const CycleBasis& b, const Routing& r) {
  int h = b.size();
  HMatrix m = to_quaternion(build_laplacian(g, b));
  HMatrix t(h + 1, h + 1);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < h; ++j) t(i, j) = m(i, j);
  for (int i = 0; i < h; ++i) {
    HPoly col, row;
    for (const auto& e : g.edges) {
      int c = b.coefficient(i, e.id);
      if (!c) continue;
      const Quaternion& mu = r.at(e.id);
      col += HPoly::monomial(HPoly::var(e.id).lead().m, Quaternion(Rational(c)) * mu);
      row += HPoly::monomial(HPoly::var(e.id).lead().m, Quaternion(Rational(c)) * conj(mu));
    }
    t(i, h) = col;
    t(h, i) = row;
  }
  HPoly corner;
  for (const auto& e : g.edges) {
    Rational w = norm2(r.at(e.id)) + k.mass2(e.mass_label);
    corner += HPoly::monomial(HPoly::var(e.id).lead().m, Quaternion(w));
  }
  t(h, h) = corner;
  return t;
}

LaplacianBundle make_bundle(const Graph& g, const Kinematics& k, const std::vector<int>& marked) {
  LaplacianBundle b;
  b.graph = g;
  b.kin = k;
  b.basis = cycle_basis(g, marked);
  b.routing = route(g, k);
  b.lambda = build_laplacian(g, b.basis);
  b.lambda_tilde = build_gen_laplacian(g, k, b.basis, b.routing);
  return b;
}

LaplacianBundle make_forest_bundle(const Graph& g, const Kinematics& k) {
  validate(g, k);
  LaplacianBundle b;
  b.graph = g;
  b.kin = k;
  b.basis = forest_cycle_basis(g);
  b.routing = route_forest(g, k);
  b.lambda = build_laplacian(g, b.basis);
  b.lambda_tilde = build_gen_laplacian(g, k, b.basis, b.routing);
  return b;
}

CPoly det_gen(const LaplacianBundle& b) { return det_cofactor(b.lambda_tilde_matrix()); }

bool verify_det_identity(const LaplacianBundle& b) {
  CPoly x = xi(b.graph, b.kin);
  CPoly d = det_gen(b);
  return b.kin.dim == 4 ? d == x * x : d == x;
}

namespace {

long long int_det(std::vector<std::vector<long long>> a) {
  int n = int(a.size());
  long long sign = 1;
  // Bareiss over the integers.
  long long prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return n == 0 ? 1 : sign * a[n - 1][n - 1];
}

}  // namespace

LaplacianBundle transform(const LaplacianBundle& b, const std::vector<std::vector<int>>& p,
                          const std::vector<Quaternion>& s) {
  int h = b.loops();
  if (int(p.size()) != h || int(s.size()) != h) throw std::invalid_argument("transform size mismatch");
  std::vector<std::vector<long long>> pl(h, std::vector<long long>(h));
  for (int i = 0; i < h; ++i) {
    if (int(p[i].size()) != h) throw std::invalid_argument("transform size mismatch");
    for (int j = 0; j < h; ++j) pl[i][j] = p[i][j];
  }
  long long d = int_det(pl);
  if (d != 1 && d != -1) throw std::invalid_argument("basis change is not unimodular");

  LaplacianBundle r = b;
  for (int j = 0; j < h; ++j)
    for (std::size_t e = 0; e < b.basis.edge_ids.size(); ++e) {
      int c = 0;
      for (int i = 0; i < h; ++i) c += b.basis.cycles[i][e] * p[i][j];
      r.basis.cycles[j][e] = c;
    }
  r.basis.marked.clear();
  for (auto& [id, mu] : r.routing)
    for (int k = 0; k < h; ++k) {
      int c = r.basis.coefficient(k, id);
      if (c) mu += Quaternion(Rational(c)) * s[k];
    }

  HMatrix pt(h + 1, h + 1), st = HMatrix::identity(h + 1);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < h; ++j) pt(i, j) = HPoly(Quaternion(Rational(p[i][j])));
  pt(h, h) = HPoly(Quaternion(1));
  for (int k = 0; k < h; ++k) st(k, h) = HPoly(s[k]);
  HMatrix q = pt * st;
  r.lambda_tilde = q.adjoint() * b.lambda_tilde * q;
  r.lambda = build_laplacian(r.graph, r.basis);
  return r;
}

std::vector<std::vector<int>> random_unimodular(int n, std::mt19937_64& rng) {
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  std::uniform_int_distribution<int> pick(0, std::max(0, n - 1));
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int step = 0; step < 3 * n; ++step) {
    int i = pick(rng), j = pick(rng);
    if (i == j) {
      for (int c = 0; c < n; ++c) m[c][i] = -m[c][i];
    } else {
      int a = coef(rng);
      for (int c = 0; c < n; ++c) m[c][j] += a * m[c][i];
    }
  }
  if (n > 1 && pick(rng) % 2) std::swap(m[0], m[n - 1]);
  return m;
}

namespace {

CPoly psi_components(const Graph& g) {
  CPoly r(Gaussian(1));
  std::vector<int> seen;
  for (const auto& v : g.vertices) {
    if (std::find(seen.begin(), seen.end(), v.id) != seen.end()) continue;
    // Collect the component of v.
    std::vector<int> comp{v.id}, stack{v.id};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (const auto& e : g.edges) {
        int y = e.source == x ? e.target : e.target == x ? e.source : -1;
        if (y >= 0 && std::find(comp.begin(), comp.end(), y) == comp.end()) {
          comp.push_back(y);
          stack.push_back(y);
        }
      }
    }
    seen.insert(seen.end(), comp.begin(), comp.end());
    EdgeSet es;
    for (const auto& e : g.edges)
      if (std::find(comp.begin(), comp.end(), e.source) != comp.end()) es.push_back(e.id);
    if (!es.empty()) r *= psi(edge_subgraph(g, es));
  }
  return r;
}

bool z_divisible(const HPoly& p) {
  for (const auto& t : p.terms())
    if (t.m.e[kZ] == 0) return false;
  return true;
}

HPoly z_reduce(const HPoly& p) { return p.coefficient(kZ, 0); }

}  // namespace

RescaledBlocks rescaled_blocks(const Graph& g, const Kinematics& k, const EdgeSet& gamma_in) {
  EdgeSet gamma = sorted_edge_set(gamma_in);
  if (gamma.empty() || int(gamma.size()) == g.num_edges())
    throw std::invalid_argument("subgraph must be a nonempty strict subgraph");
  validate(g, k);
  SubgraphClass cls = classify_subgraph(g, k, gamma);
  RescaledBlocks out;
  out.mm = cls.mm;
  out.h_gamma = cls.loops;
  int h = g.loop_number(), hg = cls.loops;

  // Spanning tree extending a spanning forest of gamma.
  EdgeSet rest = complement(g, gamma);
  std::vector<int> order_ids;
  for (auto it = gamma.rbegin(); it != gamma.rend(); ++it) order_ids.push_back(*it);
  for (auto it = rest.rbegin(); it != rest.rend(); ++it) order_ids.push_back(*it);
  std::vector<int> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  std::map<int, int> idx;
  for (int i = 0; i < g.num_vertices(); ++i) idx[g.vertices[i].id] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  EdgeSet tree;
  std::vector<int> gamma_cycles, other_cycles;
  for (int id : order_ids) {
    const auto& e = g.edge(id);
    int a = find(idx[e.source]), b = find(idx[e.target]);
    if (a != b) {
      parent[std::max(a, b)] = std::min(a, b);
      tree.push_back(id);
    } else if (std::binary_search(gamma.begin(), gamma.end(), id)) {
      gamma_cycles.push_back(id);
    } else {
      other_cycles.push_back(id);
    }
  }
  std::sort(gamma_cycles.begin(), gamma_cycles.end());
  std::sort(other_cycles.begin(), other_cycles.end());
  std::vector<int> order = cls.mm ? other_cycles : gamma_cycles;
  const auto& second = cls.mm ? gamma_cycles : other_cycles;
  order.insert(order.end(), second.begin(), second.end());
  CycleBasis basis = fundamental_cycles(g, tree, order);

  Graph gg = edge_subgraph(g, gamma);
  Kinematics kg = restrict_kinematics(gg, k);
  Routing mu;
  if (cls.mm) {
    if (!gg.connected()) throw std::invalid_argument("disconnected mass-momentum spanning subgraph");
    Routing rg = route_forest(gg, kg);
    for (const auto& e : g.edges) mu[e.id] = rg.count(e.id) ? rg[e.id] : Quaternion();
  } else {
    mu = route(g, k);
  }

  HMatrix lt = build_gen_laplacian(g, k, basis, mu);
  HMatrix z = lt.map([&](const HPoly& p) { return p.rescale(gamma); });
  out.rescaled = z;

  // Gamma's own cycle basis and Laplacians.
  auto gamma_basis = [&](const std::vector<int>& which) {
    CycleBasis cb;
    cb.edge_ids = gg.edge_ids();
    for (int id : which) {
      int pos = int(std::find(order.begin(), order.end(), id) - order.begin());
      std::vector<int> c;
      for (int e : cb.edge_ids) c.push_back(basis.coefficient(pos, e));
      cb.cycles.push_back(c);
    }
    return cb;
  };
  Graph gq = contract(g, gamma);
  Kinematics kq = restrict_kinematics(gq, k);
  auto quotient_basis = [&](const std::vector<int>& which) {
    CycleBasis cb;
    cb.edge_ids = gq.edge_ids();
    for (int id : which) {
      int pos = int(std::find(order.begin(), order.end(), id) - order.begin());
      std::vector<int> c;
      for (int e : cb.edge_ids) c.push_back(basis.coefficient(pos, e));
      cb.cycles.push_back(c);
    }
    return cb;
  };
  Routing muq;
  for (const auto& e : gq.edges) muq[e.id] = mu.at(e.id);

  HPoly zvar = HPoly::var(kZ);
  bool pattern = true;
  int n = h + 1;
  if (!cls.mm) {
    HMatrix lg = to_quaternion(build_laplacian(gg, gamma_basis(gamma_cycles)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i < hg && j < hg) {
          pattern = pattern && z(i, j) == zvar * lg(i, j);
        } else if (i < hg || j < hg) {
          pattern = pattern && z_divisible(z(i, j));
        }
      }
    HMatrix d(n - hg, n - hg);
    for (int i = hg; i < n; ++i)
      for (int j = hg; j < n; ++j) d(i - hg, j - hg) = z_reduce(z(i, j));
    out.reduced = d;
    out.reduction_ok = d == build_gen_laplacian(gq, kq, quotient_basis(other_cycles), muq);
  } else {
    int off = h - hg;
    HMatrix lg = build_gen_laplacian(gg, kg, gamma_basis(gamma_cycles), mu);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i >= off && j >= off) {
          pattern = pattern && z(i, j) == zvar * lg(i - off, j - off);
        } else if (i >= off || j >= off) {
          pattern = pattern && z_divisible(z(i, j));
        }
      }
    HMatrix a(off, off);
    for (int i = 0; i < off; ++i)
      for (int j = 0; j < off; ++j) a(i, j) = z_reduce(z(i, j));
    out.reduced = a;
    out.reduction_ok = a == to_quaternion(build_laplacian(gq, quotient_basis(other_cycles)));
  }
  out.pattern_ok = pattern;

  CMatrix zc = k.dim == 4 ? chi(z) : to_complex(z);
  out.det = det_cofactor(zc);
  int mult = k.dim == 4 ? 2 : 1;
  int low = mult * (cls.mm ? hg + 1 : hg);
  CPoly expected;
  if (!cls.mm) {
    expected = psi_components(gg) * xi(gq, kq);
  } else {
    expected = xi(gg, kg) * psi(gq);
  }
  if (mult == 2) expected = expected * expected;
  bool lower_vanish = true;
  for (int j = 0; j < low; ++j) lower_vanish = lower_vanish && out.det.coefficient(kZ, j).is_zero();
  out.leading_coefficient = out.det.coefficient(kZ, low);
  out.expected_leading = expected;
  out.leading_ok = lower_vanish && out.leading_coefficient == expected;
  return out;
}

}  // namespace canon
