#include "canon/forms.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace canon {

namespace {

// Sorts generators in place, returning the sign of the sort, or 0 when a generator repeats.
int normalize_gens(std::vector<Generator>& g) {
  int sign = 1;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j + 1 < g.size() - i; ++j) {
      if (g[j + 1] < g[j]) {
        std::swap(g[j], g[j + 1]);
        if ((g[j].degree * g[j + 1].degree) % 2) sign = -sign;
      }
    }
  for (std::size_t i = 0; i + 1 < g.size(); ++i)
    if (g[i] == g[i + 1] && g[i].degree % 2) return 0;
  return sign;
}

FormSpec collect(std::vector<FormMonomial> ms) {
  FormSpec r;
  for (auto& m : ms) {
    int s = normalize_gens(m.gens);
    if (s == 0 || sgn(m.coeff) == 0) continue;
    m.coeff *= s;
    auto it = std::find_if(r.terms.begin(), r.terms.end(),
                           [&](const FormMonomial& x) { return x.gens == m.gens; });
    if (it == r.terms.end()) {
      r.terms.push_back(m);
    } else {
      it->coeff += m.coeff;
      if (sgn(it->coeff) == 0) r.terms.erase(it);
    }
  }
  std::sort(r.terms.begin(), r.terms.end(),
            [](const FormMonomial& a, const FormMonomial& b) { return a.gens < b.gens; });
  return r;
}

int subset_sign(const std::vector<int>& s, const std::vector<int>& t) {
  int inv = 0;
  for (int a : s)
    for (int b : t)
      if (a > b) ++inv;
  return inv % 2 ? -1 : 1;
}

std::vector<int> merge_sets(const std::vector<int>& s, const std::vector<int>& t) {
  std::vector<int> r;
  std::merge(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(r));
  return r;
}

bool disjoint(const std::vector<int>& s, const std::vector<int>& t) {
  for (int a : s)
    if (std::binary_search(t.begin(), t.end(), a)) return false;
  return true;
}

}  // namespace

std::string Generator::str() const {
  switch (kind) {
    case GenKind::First:
      return "w" + std::to_string(degree);
    case GenKind::Second:
      return "p" + std::to_string(degree);
    case GenKind::SecondQuaternionic:
      return "pq" + std::to_string(degree);
    case GenKind::O1:
      return "o1";
  }
  return "?";
}

int FormMonomial::degree() const {
  int d = 0;
  for (const auto& g : gens) d += g.degree;
  return d;
}

FormSpec FormSpec::unit() {
  FormSpec s;
  s.terms.push_back(FormMonomial{});
  return s;
}

FormSpec FormSpec::generator(Generator g) {
  FormSpec s;
  s.terms.push_back(FormMonomial{Rational(1), {g}});
  return s;
}

int FormSpec::degree() const {
  if (terms.empty()) return 0;
  int d = terms.front().degree();
  for (const auto& t : terms)
    if (t.degree() != d) throw std::invalid_argument("form spec is not homogeneous");
  return d;
}

std::string FormSpec::str() const {
  if (terms.empty()) return "0";
  std::string s;
  for (const auto& t : terms) {
    std::string body;
    for (const auto& g : t.gens) body += (body.empty() ? "" : "^") + g.str();
    if (body.empty()) body = "1";
    std::string c = to_string(t.coeff);
    if (!s.empty()) s += sgn(t.coeff) < 0 ? " - " : " + ";
    else if (sgn(t.coeff) < 0) s += "-";
    if (c[0] == '-') c = c.substr(1);
    s += c == "1" ? body : c + "*" + body;
  }
  return s;
}

FormSpec parse_form_spec(const std::string& s) {
  if (s == "1") return FormSpec::unit();
  FormMonomial m;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t end = s.find('^', pos);
    if (end == std::string::npos) end = s.size();
    std::string tok = s.substr(pos, end - pos);
    if (tok.empty()) throw std::invalid_argument("empty factor in form spec '" + s + "'");
    Generator g;
    std::string digits;
    if (tok == "o1") {
      g = {GenKind::O1, 1};
    } else {
      if (tok.rfind("pq", 0) == 0) {
        g.kind = GenKind::SecondQuaternionic;
        digits = tok.substr(2);
      } else if (tok[0] == 'p') {
        g.kind = GenKind::Second;
        digits = tok.substr(1);
      } else if (tok[0] == 'w') {
        g.kind = GenKind::First;
        digits = tok.substr(1);
      } else {
        throw std::invalid_argument("unknown generator '" + tok + "'");
      }
      if (digits.empty() || digits.size() > 3 ||
          !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(c); }))
        throw std::invalid_argument("bad degree in generator '" + tok + "'");
      g.degree = std::stoi(digits);
      bool ok = g.kind == GenKind::Second ? g.degree % 2 == 1 : g.degree % 4 == 1;
      if (!ok) throw std::invalid_argument("generator '" + tok + "' has a disallowed degree");
    }
    m.gens.push_back(g);
    pos = end + 1;
  }
  bool has_o1 = std::any_of(m.gens.begin(), m.gens.end(), [](auto& g) { return g.kind == GenKind::O1; });
  if (has_o1 && m.gens.size() > 1) throw std::invalid_argument("o1 must stand alone");
  FormSpec r = collect({m});
  if (r.is_zero()) throw std::invalid_argument("form spec '" + s + "' is identically zero");
  return r;
}

FormSpec wedge(const FormSpec& a, const FormSpec& b) {
  std::vector<FormMonomial> ms;
  for (const auto& x : a.terms)
    for (const auto& y : b.terms) {
      FormMonomial m;
      m.coeff = x.coeff * y.coeff;
      m.gens = x.gens;
      m.gens.insert(m.gens.end(), y.gens.begin(), y.gens.end());
      ms.push_back(m);
    }
  return collect(ms);
}

FormSpec add(const FormSpec& a, const FormSpec& b) {
  std::vector<FormMonomial> ms = a.terms;
  ms.insert(ms.end(), b.terms.begin(), b.terms.end());
  return collect(ms);
}

FormSpec scale(const Rational& c, const FormSpec& a) {
  FormSpec r = a;
  for (auto& t : r.terms) t.coeff *= c;
  return collect(r.terms);
}

FormSpec to_first_kind(const FormSpec& a) {
  std::vector<FormMonomial> ms = a.terms;
  for (auto& m : ms)
    for (auto& g : m.gens) {
      if (g.kind == GenKind::O1) throw std::invalid_argument("o1 has no first-kind counterpart");
      g.kind = GenKind::First;
    }
  return collect(ms);
}

std::vector<CoproductTerm> coproduct(const FormSpec& a) {
  std::vector<CoproductTerm> out;
  for (const auto& t : a.terms) {
    int m = int(t.gens.size());
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      FormMonomial l, r;
      int inv = 0;
      for (int i = 0; i < m; ++i) {
        if (mask & (1u << i)) {
          l.gens.push_back(t.gens[i]);
          // Moving this generator left past every earlier right-hand generator.
          for (int j = 0; j < i; ++j)
            if (!(mask & (1u << j))) inv += t.gens[i].degree * t.gens[j].degree;
        } else {
          r.gens.push_back(t.gens[i]);
        }
      }
      Rational c = t.coeff * (inv % 2 ? -1 : 1);
      out.push_back({c, collect({l}), collect({r})});
    }
  }
  return out;
}

bool SymbolicForm::is_zero() const {
  for (const auto& [s, f] : coeffs)
    if (!f.is_zero()) return false;
  return true;
}

RatFn SymbolicForm::coefficient(const std::vector<int>& s) const {
  auto it = coeffs.find(s);
  return it == coeffs.end() ? RatFn() : it->second;
}

std::complex<double> SymbolicForm::evaluate(const std::array<std::complex<double>, kMaxVars>& point,
                                            const std::vector<std::array<double, kMaxVars>>& frame) const {
  if (int(frame.size()) != degree) throw std::invalid_argument("frame size differs from form degree");
  std::complex<double> total = 0;
  for (const auto& [s, f] : coeffs) {
    if (f.is_zero()) continue;
    Eigen::MatrixXd m(degree, degree);
    for (int i = 0; i < degree; ++i)
      for (int j = 0; j < degree; ++j) m(i, j) = frame[j][s[i]];
    double d = degree == 0 ? 1.0 : m.determinant();
    if (d == 0.0) continue;
    total += eval_complex(f.num, point) / eval_complex(f.den, point) * d;
  }
  return total;
}

bool equal(const SymbolicForm& a, const SymbolicForm& b) {
  if (a.degree != b.degree) return false;
  for (const auto& [s, f] : a.coeffs)
    if (!f.equals(b.coefficient(s))) return false;
  for (const auto& [s, f] : b.coeffs)
    if (!f.equals(a.coefficient(s))) return false;
  return true;
}

SymbolicForm operator+(const SymbolicForm& a, const SymbolicForm& b) {
  if (a.degree != b.degree) throw std::invalid_argument("adding forms of different degree");
  SymbolicForm r = a;
  std::vector<int> vars = merge_sets(a.vars, b.vars);
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  r.vars = vars;
  for (const auto& [s, f] : b.coeffs) {
    auto it = r.coeffs.find(s);
    if (it == r.coeffs.end()) {
      r.coeffs.emplace(s, f);
    } else {
      it->second = it->second + f;
      if (it->second.is_zero()) r.coeffs.erase(it);
    }
  }
  return r;
}

SymbolicForm operator*(const Gaussian& c, const SymbolicForm& a) {
  SymbolicForm r = a;
  r.coeffs.clear();
  if (is_zero(c)) return r;
  for (const auto& [s, f] : a.coeffs) r.coeffs.emplace(s, c * f);
  return r;
}

SymbolicForm wedge(const SymbolicForm& a, const SymbolicForm& b) {
  SymbolicForm r;
  r.degree = a.degree + b.degree;
  r.vars = merge_sets(a.vars, b.vars);
  r.vars.erase(std::unique(r.vars.begin(), r.vars.end()), r.vars.end());
  for (const auto& [s, f] : a.coeffs)
    for (const auto& [t, g] : b.coeffs) {
      if (!disjoint(s, t)) continue;
      RatFn p = f * g;
      if (p.is_zero()) continue;
      if (subset_sign(s, t) < 0) p = -p;
      auto u = merge_sets(s, t);
      auto it = r.coeffs.find(u);
      if (it == r.coeffs.end()) {
        r.coeffs.emplace(u, p);
      } else {
        it->second = it->second + p;
      }
    }
  for (auto it = r.coeffs.begin(); it != r.coeffs.end();)
    it = it->second.is_zero() ? r.coeffs.erase(it) : std::next(it);
  return r;
}

SymbolicForm exterior_derivative(const SymbolicForm& a) {
  SymbolicForm r;
  r.degree = a.degree + 1;
  r.vars = a.vars;
  for (const auto& [s, f] : a.coeffs)
    for (int v : a.vars) {
      if (std::binary_search(s.begin(), s.end(), v)) continue;
      RatFn g = f.derivative(v);
      if (g.is_zero()) continue;
      int below = int(std::lower_bound(s.begin(), s.end(), v) - s.begin());
      if (below % 2) g = -g;
      auto u = merge_sets(s, {v});
      auto it = r.coeffs.find(u);
      if (it == r.coeffs.end()) {
        r.coeffs.emplace(u, g);
      } else {
        it->second = it->second + g;
      }
    }
  for (auto it = r.coeffs.begin(); it != r.coeffs.end();)
    it = it->second.is_zero() ? r.coeffs.erase(it) : std::next(it);
  return r;
}

SymbolicForm restrict_face(const SymbolicForm& a, int e) {
  SymbolicForm r;
  r.degree = a.degree;
  for (int v : a.vars)
    if (v != e) r.vars.push_back(v);
  for (const auto& [s, f] : a.coeffs) {
    if (std::binary_search(s.begin(), s.end(), e)) continue;
    RatFn g = f.set_zero(e);
    if (g.den.is_zero()) throw std::domain_error("denominator vanishes on the face");
    if (!g.is_zero()) r.coeffs.emplace(s, g);
  }
  return r;
}

SymbolicForm unit_form(const std::vector<int>& vars) {
  SymbolicForm r;
  r.degree = 0;
  r.vars = vars;
  r.coeffs.emplace(std::vector<int>{}, RatFn(CPoly(Gaussian(1))));
  return r;
}

SymbolicForm primitive_on_matrix(const CMatrix& x, int k, const std::vector<int>& vars_in,
                                 bool reduce_by_root) {
  if (x.rows() != x.cols()) throw std::invalid_argument("matrix is not square");
  if (k < 0) throw std::invalid_argument("negative degree index");
  std::vector<int> vars = vars_in;
  std::sort(vars.begin(), vars.end());
  int nv = int(vars.size());
  if (nv > 30) throw std::invalid_argument("too many variables");
  int n = x.rows();
  // Constant slopes dX/da_v.
  std::vector<CMatrix> slope(nv, CMatrix(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& t : x(i, j).terms()) {
        int deg = t.m.degree();
        if (deg == 0) continue;
        int p = -1;
        for (int q = 0; q < nv; ++q)
          if (t.m.e[vars[q]] == 1) p = q;
        if (deg != 1 || p < 0) throw std::invalid_argument("matrix is not affine-linear in the variables");
        slope[p](i, j) = CPoly(t.c);
      }

  CPoly det = det_cofactor(x);
  if (det.is_zero()) throw std::invalid_argument("matrix is singular");
  CMatrix adj = adjugate(x);
  CPoly den = det;
  if (reduce_by_root) {
    if (auto root = sqrt_exact(det)) {
      CMatrix reduced(n, n);
      bool ok = true;
      for (int i = 0; i < n && ok; ++i)
        for (int j = 0; j < n && ok; ++j) {
          auto q = divide_exact(adj(i, j), *root);
          if (q) {
            reduced(i, j) = *q;
          } else {
            ok = false;
          }
        }
      if (ok) {
        adj = reduced;
        den = *root;
      }
    }
  }

  SymbolicForm out;
  int deg = 2 * k + 1;
  out.degree = deg;
  out.vars = vars;
  if (deg > nv) return out;

  std::vector<CMatrix> m(nv);
  for (int p = 0; p < nv; ++p) m[p] = adj * slope[p];

  // Antisymmetrised products over variable subsets.
  std::unordered_map<unsigned, CMatrix> memo;
  memo.emplace(0u, CMatrix::identity(n));
  std::function<const CMatrix&(unsigned)> F = [&](unsigned mask) -> const CMatrix& {
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    CMatrix acc(n, n);
    int j = 0;
    for (int p = 0; p < nv; ++p) {
      if (!(mask & (1u << p))) continue;
      CMatrix t = m[p] * F(mask & ~(1u << p));
      acc = j % 2 ? acc - t : acc + t;
      ++j;
    }
    return memo.emplace(mask, std::move(acc)).first->second;
  };

  CPoly den_k = den.pow(k);
  std::vector<int> pick(deg);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    unsigned rest = 0;
    for (int i = 1; i < deg; ++i) rest |= 1u << pick[i];
    const CMatrix& f = F(rest);
    const CMatrix& a = m[pick[0]];
    CPoly tr;
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l)
        if (!a(i, l).is_zero() && !f(l, i).is_zero()) tr += a(i, l) * f(l, i);
    if (!tr.is_zero()) {
      tr = Gaussian(deg) * tr;
      auto q = divide_exact(tr, den_k);
      if (!q) throw std::logic_error("primitive form numerator not divisible by det^k");
      std::vector<int> s;
      for (int i : pick) s.push_back(vars[i]);
      out.coeffs.emplace(s, RatFn(*q, den_k * den));
    }
    int i = deg - 1;
    while (i >= 0 && pick[i] == nv - deg + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < deg; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

void check_spec_kinds(const FormSpec& spec, int dim) {
  for (const auto& t : spec.terms)
    for (const auto& g : t.gens) {
      if (g.kind == GenKind::Second && dim != 2)
        throw std::invalid_argument("generator " + g.str() + " needs complex (dim 2) kinematics");
      if (g.kind == GenKind::SecondQuaternionic && dim != 4)
        throw std::invalid_argument("generator " + g.str() + " needs quaternionic (dim 4) kinematics");
    }
}

namespace {

CPoly xi_from_bundle(const LaplacianBundle& b) {
  if (b.kin.dim == 2) return det_cofactor(b.lambda_tilde_complex());
  auto r = sqrt_exact(det_cofactor(chi(b.lambda_tilde)));
  if (!r) throw std::logic_error("det chi(lambda_tilde) is not a perfect square");
  return *r;
}

}  // namespace

SymbolicForm o1_form(const LaplacianBundle& b) {
  CPoly x = xi_from_bundle(b);
  CPoly p = det_cofactor(b.lambda);
  int h = b.loops();
  SymbolicForm out;
  out.degree = 1;
  out.vars = b.graph.edge_ids();
  CPoly den = p * x;
  for (int v : out.vars) {
    CPoly num = Gaussian(h) * p * x.derivative(v) - Gaussian(h + 1) * x * p.derivative(v);
    if (!num.is_zero()) out.coeffs.emplace(std::vector<int>{v}, RatFn(num, den));
  }
  return out;
}

SymbolicForm omega_form(const std::vector<int>& vars_in) {
  std::vector<int> vars = vars_in;
  std::sort(vars.begin(), vars.end());
  SymbolicForm out;
  out.degree = int(vars.size()) - 1;
  out.vars = vars;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    std::vector<int> s;
    for (std::size_t j = 0; j < vars.size(); ++j)
      if (j != i) s.push_back(vars[j]);
    CPoly c = CPoly::var(vars[i]);
    if ((i + 1) % 2) c = -c;
    out.coeffs.emplace(s, RatFn(c));
  }
  return out;
}

SymbolicForm realize(const FormSpec& spec, const LaplacianBundle& b) {
  check_spec_kinds(spec, b.kin.dim);
  std::vector<int> vars = b.graph.edge_ids();
  std::map<Generator, SymbolicForm> cache;
  auto gen = [&](const Generator& g) -> const SymbolicForm& {
    auto it = cache.find(g);
    if (it != cache.end()) return it->second;
    SymbolicForm f;
    int k = (g.degree - 1) / 2;
    switch (g.kind) {
      case GenKind::First:
        f = primitive_on_matrix(b.lambda, k, vars);
        break;
      case GenKind::Second:
        f = primitive_on_matrix(b.lambda_tilde_complex(), k, vars);
        break;
      case GenKind::SecondQuaternionic:
        f = primitive_on_matrix(chi(b.lambda_tilde), k, vars, true);
        break;
      case GenKind::O1:
        f = o1_form(b);
        break;
    }
    return cache.emplace(g, f).first->second;
  };
  SymbolicForm out;
  out.degree = spec.degree();
  out.vars = vars;
  for (const auto& t : spec.terms) {
    SymbolicForm w = unit_form(vars);
    for (const auto& g : t.gens) w = wedge(w, gen(g));
    out = out + Gaussian(t.coeff) * w;
  }
  return out;
}

SymbolicForm realize(const FormSpec& spec, const Graph& g, const Kinematics& k) {
  return realize(spec, make_bundle(g, k));
}

NumericForm::NumericForm(const FormSpec& spec, const LaplacianBundle& b) : spec_(spec) {
  check_spec_kinds(spec, b.kin.dim);
  degree_ = spec.degree();
  loops_ = b.loops();
  vars_ = b.graph.edge_ids();
  fam_.resize(3);
  auto build = [&](const CMatrix& x) {
    Family f;
    int n = x.rows();
    f.offset = Eigen::MatrixXcd::Zero(n, n);
    f.slope.assign(vars_.size(), Eigen::MatrixXcd::Zero(n, n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (const auto& t : x(i, j).terms()) {
          if (t.m.degree() == 0) {
            f.offset(i, j) += to_complex(t.c);
            continue;
          }
          int p = -1;
          for (std::size_t q = 0; q < vars_.size(); ++q)
            if (t.m.e[vars_[q]] == 1) p = int(q);
          if (t.m.degree() != 1 || p < 0) throw std::invalid_argument("matrix is not affine-linear");
          f.slope[p](i, j) += to_complex(t.c);
        }
    return f;
  };
  fam_[kFirst] = build(b.lambda);
  if (b.kin.dim == 2) {
    fam_[kSecond] = build(b.lambda_tilde_complex());
  } else {
    fam_[kChi] = build(chi(b.lambda_tilde));
  }
  chi_ = b.kin.dim == 4;
}

int NumericForm::slot(GenKind k) const {
  switch (k) {
    case GenKind::First:
      return kFirst;
    case GenKind::Second:
      return kSecond;
    case GenKind::SecondQuaternionic:
      return kChi;
    case GenKind::O1:
      return -1;
  }
  return -1;
}

std::complex<double> NumericForm::primitive(const Eigen::MatrixXcd& xinv, const Family& f, int n,
                                            const std::vector<const std::vector<double>*>& vecs) const {
  std::vector<Eigen::MatrixXcd> y;
  for (const auto* v : vecs) {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(xinv.rows(), xinv.cols());
    for (std::size_t p = 0; p < f.slope.size(); ++p)
      if ((*v)[p] != 0.0) d += (*v)[p] * f.slope[p];
    y.push_back(xinv * d);
  }
  if (n == 1) return y[0].trace();
  // Cyclic symmetry of the trace: fix the first factor and scale by n.
  std::vector<int> rest(n - 1);
  std::iota(rest.begin(), rest.end(), 1);
  std::complex<double> s = 0;
  do {
    int inv = 0;
    for (int i = 0; i < n - 1; ++i)
      for (int j = i + 1; j < n - 1; ++j)
        if (rest[i] > rest[j]) ++inv;
    Eigen::MatrixXcd p = y[0];
    for (int i : rest) p = p * y[i];
    s += (inv % 2 ? -1.0 : 1.0) * p.trace();
  } while (std::next_permutation(rest.begin(), rest.end()));
  return double(n) * s;
}

std::complex<double> NumericForm::monomial(const std::vector<Generator>& gens, std::size_t pos,
                                           const std::vector<int>& idx, const std::vector<double>& alpha,
                                           const std::vector<std::vector<double>>& frame,
                                           const std::vector<Eigen::MatrixXcd>& inv) const {
  if (pos == gens.size()) return 1.0;
  const Generator& g = gens[pos];
  int n = g.degree, m = int(idx.size());
  std::complex<double> total = 0;
  std::vector<int> pick(n);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    std::vector<const std::vector<double>*> vecs;
    std::vector<int> rest;
    int inv_count = 0, taken = 0;
    for (int i = 0; i < m; ++i) {
      if (taken < n && pick[taken] == i) {
        vecs.push_back(&frame[idx[i]]);
        inv_count += i - taken;
        ++taken;
      } else {
        rest.push_back(idx[i]);
      }
    }
    std::complex<double> head;
    if (g.kind == GenKind::O1) {
      const Family& t = fam_[chi_ ? kChi : kSecond];
      std::complex<double> a = primitive(inv[chi_ ? kChi : kSecond], t, 1, vecs);
      std::complex<double> b = primitive(inv[kFirst], fam_[kFirst], 1, vecs);
      head = double(loops_) * (chi_ ? 0.5 : 1.0) * a - double(loops_ + 1) * b;
    } else {
      int s = slot(g.kind);
      head = primitive(inv[s], fam_[s], n, vecs);
    }
    if (head != 0.0) {
      std::complex<double> tail = monomial(gens, pos + 1, rest, alpha, frame, inv);
      total += (inv_count % 2 ? -1.0 : 1.0) * head * tail;
    }
    int i = n - 1;
    while (i >= 0 && pick[i] == m - n + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  return total;
}

std::complex<double> NumericForm::evaluate(const std::vector<double>& alpha,
                                           const std::vector<std::vector<double>>& frame) const {
  if (int(frame.size()) != degree_) throw std::invalid_argument("frame size differs from form degree");
  std::vector<Eigen::MatrixXcd> inv(3);
  for (int s = 0; s < 3; ++s) {
    const Family& f = fam_[s];
    if (f.slope.empty()) continue;
    Eigen::MatrixXcd x = f.offset;
    for (std::size_t p = 0; p < f.slope.size(); ++p) x += alpha[p] * f.slope[p];
    if (x.rows() == 0) continue;
    inv[s] = x.partialPivLu().inverse();
  }
  std::vector<int> idx(degree_);
  std::iota(idx.begin(), idx.end(), 0);
  std::complex<double> total = 0;
  for (const auto& t : spec_.terms)
    total += to_double(t.coeff) * monomial(t.gens, 0, idx, alpha, frame, inv);
  return total;
}

}  // namespace canon
