#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <cstring>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "canon/scalar.hpp"

namespace canon {

// Variable 0 is the rescaling parameter z; variable e >= 1 is the Schwinger parameter of edge e.
constexpr int kMaxVars = 20;
constexpr int kZ = 0;

struct Monomial {
  std::array<std::uint8_t, kMaxVars> e{};

  int degree() const {
    int d = 0;
    for (auto x : e) d += x;
    return d;
  }
  bool operator==(const Monomial& o) const { return e == o.e; }
  bool operator!=(const Monomial& o) const { return e != o.e; }
};

// Graded reverse lexicographic order; returns >0 when a > b.
inline int compare(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da > db ? 1 : -1;
  for (int i = kMaxVars - 1; i >= 0; --i) {
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
  }
  return 0;
}

struct MonomialGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : m.e) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

inline Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) {
    int s = a.e[i] + b.e[i];
    if (s > 255) throw std::overflow_error("monomial exponent overflow");
    r.e[i] = static_cast<std::uint8_t>(s);
  }
  return r;
}

inline bool divides(const Monomial& a, const Monomial& b) {
  for (int i = 0; i < kMaxVars; ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}

inline Monomial quotient(const Monomial& b, const Monomial& a) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint8_t>(b.e[i] - a.e[i]);
  return r;
}

inline std::string var_name(int i) { return i == kZ ? "z" : "a" + std::to_string(i); }

template <class C>
class Poly {
 public:
  struct Term {
    Monomial m;
    C c;
  };

  Poly() = default;
  Poly(const C& c) {
    if (!canon::is_zero(c)) terms_.push_back({Monomial{}, c});
  }
  Poly(long c) : Poly(C(c)) {}

  static Poly var(int i) {
    Monomial m;
    m.e.at(i) = 1;
    return monomial(m, C(1));
  }
  static Poly monomial(const Monomial& m, const C& c) {
    Poly p;
    if (!canon::is_zero(c)) p.terms_.push_back({m, c});
    return p;
  }
  // Builds from unsorted terms, merging duplicates.
  static Poly from_terms(std::vector<Term> ts) {
    std::sort(ts.begin(), ts.end(),
              [](const Term& a, const Term& b) { return compare(a.m, b.m) > 0; });
    Poly p;
    for (auto& t : ts) {
      if (!p.terms_.empty() && p.terms_.back().m == t.m) {
        p.terms_.back().c += t.c;
      } else {
        p.terms_.push_back(std::move(t));
      }
    }
    p.prune();
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  const Term& lead() const { return terms_.front(); }

  bool operator==(const Poly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].m != o.terms_[i].m || terms_[i].c != o.terms_[i].c) return false;
    return true;
  }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
  }

  Poly& operator+=(const Poly& o) { return *this = merge(*this, o, false); }
  Poly& operator-=(const Poly& o) { return *this = merge(*this, o, true); }
  friend Poly operator+(const Poly& a, const Poly& b) { return merge(a, b, false); }
  friend Poly operator-(const Poly& a, const Poly& b) { return merge(a, b, true); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    if (a.size() == 1 && b.size() == 1) {
      return monomial(a.terms_[0].m * b.terms_[0].m, a.terms_[0].c * b.terms_[0].c);
    }
    std::unordered_map<Monomial, C, MonomialHash> acc;
    acc.reserve(std::min<std::size_t>(a.size() * b.size(), 1u << 20));
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) {
        auto [it, fresh] = acc.try_emplace(s.m * t.m);
        if (fresh) {
          it->second = s.c * t.c;
        } else {
          it->second += s.c * t.c;
        }
      }
    std::vector<Term> ts;
    ts.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (!canon::is_zero(c)) ts.push_back({m, std::move(c)});
    std::sort(ts.begin(), ts.end(),
              [](const Term& x, const Term& y) { return compare(x.m, y.m) > 0; });
    Poly r;
    r.terms_ = std::move(ts);
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator*(const C& c, const Poly& p) {
    Poly r;
    for (const auto& t : p.terms_) {
      C v = c * t.c;
      if (!canon::is_zero(v)) r.terms_.push_back({t.m, v});
    }
    return r;
  }
  friend Poly operator*(const Poly& p, const C& c) {
    Poly r;
    for (const auto& t : p.terms_) {
      C v = t.c * c;
      if (!canon::is_zero(v)) r.terms_.push_back({t.m, v});
    }
    return r;
  }

  Poly pow(int n) const {
    Poly r(C(1));
    for (int i = 0; i < n; ++i) r *= *this;
    return r;
  }

  int total_degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, t.m.degree());
    return d;
  }
  int degree_in(int v) const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, int(t.m.e[v]));
    return d;
  }
  bool is_homogeneous() const {
    for (const auto& t : terms_)
      if (t.m.degree() != terms_.front().m.degree()) return false;
    return true;
  }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].m.degree() == 0);
  }
  C constant_term() const {
    if (!terms_.empty() && terms_.back().m.degree() == 0) return terms_.back().c;
    return C(0);
  }
  bool uses_var(int v) const {
    for (const auto& t : terms_)
      if (t.m.e[v]) return true;
    return false;
  }

  // Coefficient of v^k, as a polynomial free of v.
  Poly coefficient(int v, int k) const {
    std::vector<Term> ts;
    for (const auto& t : terms_)
      if (t.m.e[v] == k) {
        Term u = t;
        u.m.e[v] = 0;
        ts.push_back(u);
      }
    return from_terms(std::move(ts));
  }

  Poly derivative(int v) const {
    std::vector<Term> ts;
    for (const auto& t : terms_)
      if (t.m.e[v]) {
        Term u = t;
        u.c = C(long(t.m.e[v])) * t.c;
        u.m.e[v] -= 1;
        ts.push_back(u);
      }
    return from_terms(std::move(ts));
  }

  Poly set_zero(int v) const {
    Poly r;
    for (const auto& t : terms_)
      if (!t.m.e[v]) r.terms_.push_back(t);
    return r;
  }

  // Multiplies every monomial by z^(total degree in the given variables).
  Poly rescale(const std::vector<int>& vars) const {
    std::vector<Term> ts;
    for (auto t : terms_) {
      int s = 0;
      for (int v : vars) s += t.m.e[v];
      t.m.e[kZ] = static_cast<std::uint8_t>(t.m.e[kZ] + s);
      ts.push_back(t);
    }
    return from_terms(std::move(ts));
  }

  // Renames variables: variable i becomes map[i] (map[i] < 0 means unchanged).
  Poly relabel(const std::array<int, kMaxVars>& map) const {
    std::vector<Term> ts;
    for (const auto& t : terms_) {
      Term u{Monomial{}, t.c};
      for (int i = 0; i < kMaxVars; ++i) {
        int j = map[i] < 0 ? i : map[i];
        u.m.e[j] = static_cast<std::uint8_t>(u.m.e[j] + t.m.e[i]);
      }
      ts.push_back(u);
    }
    return from_terms(std::move(ts));
  }

  Poly conjugate() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.c = conj(t.c);
    return r;
  }

  template <class T>
  T evaluate(const std::array<T, kMaxVars>& x, T (*cvt)(const C&)) const {
    T s{};
    for (const auto& t : terms_) {
      T v = cvt(t.c);
      for (int i = 0; i < kMaxVars; ++i)
        for (int k = 0; k < t.m.e[i]; ++k) v *= x[i];
      s += v;
    }
    return s;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& t : terms_) {
      std::string mono;
      for (int i = 1; i <= kMaxVars; ++i) {
        int v = i % kMaxVars;  // edge variables first, z last
        if (!t.m.e[v]) continue;
        if (!mono.empty()) mono += "*";
        mono += var_name(v);
        if (t.m.e[v] > 1) mono += "^" + std::to_string(t.m.e[v]);
      }
      std::string cs = to_string(t.c);
      bool neg = !cs.empty() && cs[0] == '-' && cs.find_first_of("+-", 1) == std::string::npos;
      bool compound = cs.find_first_of("+-", 1) != std::string::npos;
      if (neg) cs = cs.substr(1);
      std::string piece;
      if (mono.empty()) {
        piece = compound ? "(" + cs + ")" : cs;
      } else if (cs == "1") {
        piece = mono;
      } else {
        piece = (compound ? "(" + cs + ")" : cs) + "*" + mono;
      }
      if (s.empty()) {
        s = neg ? "-" + piece : piece;
      } else {
        s += (neg ? "-" : "+") + piece;
      }
    }
    return s;
  }

 private:
  std::vector<Term> terms_;

  void prune() {
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                [](const Term& t) { return canon::is_zero(t.c); }),
                 terms_.end());
  }

  static Poly merge(const Poly& a, const Poly& b, bool subtract) {
    Poly r;
    r.terms_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      int c = i == a.size() ? -1 : j == b.size() ? 1 : compare(a.terms_[i].m, b.terms_[j].m);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        r.terms_.push_back(b.terms_[j++]);
        if (subtract) r.terms_.back().c = -r.terms_.back().c;
      } else {
        C v = subtract ? a.terms_[i].c - b.terms_[j].c : a.terms_[i].c + b.terms_[j].c;
        if (!canon::is_zero(v)) r.terms_.push_back({a.terms_[i].m, std::move(v)});
        ++i;
        ++j;
      }
    }
    return r;
  }
};

using QPoly = Poly<Rational>;
using CPoly = Poly<Gaussian>;
using HPoly = Poly<Quaternion>;

inline std::complex<double> gaussian_to_complex(const Gaussian& g) { return to_complex(g); }

inline std::complex<double> eval_complex(const CPoly& p,
                                         const std::array<std::complex<double>, kMaxVars>& x) {
  return p.evaluate<std::complex<double>>(x, &gaussian_to_complex);
}

// Quotient a / b when b divides a exactly.
template <class C>
std::optional<Poly<C>> divide_exact(const Poly<C>& a, const Poly<C>& b) {
  static_assert(ring_traits<C>::commutative, "exact division needs commutative coefficients");
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  using Term = typename Poly<C>::Term;
  std::map<Monomial, C, MonomialGreater> rem;
  for (const auto& t : a.terms()) rem.emplace(t.m, t.c);
  const auto& lb = b.lead();
  std::vector<Term> q;
  while (!rem.empty()) {
    auto it = rem.begin();
    if (!divides(lb.m, it->first)) return std::nullopt;
    Term t{quotient(it->first, lb.m), it->second / lb.c};
    for (const auto& s : b.terms()) {
      Monomial m = t.m * s.m;
      C v = t.c * s.c;
      auto jt = rem.find(m);
      if (jt == rem.end()) {
        rem.emplace(m, -v);
      } else {
        jt->second -= v;
        if (is_zero(jt->second)) rem.erase(jt);
      }
    }
    q.push_back(std::move(t));
  }
  return Poly<C>::from_terms(std::move(q));
}

// Square root with positive leading coefficient, if the polynomial is a perfect square.
template <class C>
std::optional<Poly<C>> sqrt_exact(const Poly<C>& p) {
  static_assert(ring_traits<C>::commutative, "square root needs commutative coefficients");
  using Term = typename Poly<C>::Term;
  if (p.is_zero()) return Poly<C>();
  const auto& lt = p.lead();
  Term r0;
  for (int i = 0; i < kMaxVars; ++i) {
    if (lt.m.e[i] % 2) return std::nullopt;
    r0.m.e[i] = lt.m.e[i] / 2;
  }
  Rational lc;
  if constexpr (std::is_same_v<C, Gaussian>) {
    if (!lt.c.is_real() || !rational_sqrt(lt.c.re, lc)) return std::nullopt;
  } else {
    if (!rational_sqrt(lt.c, lc)) return std::nullopt;
  }
  r0.c = C(lc);
  std::vector<Term> root{r0};
  std::map<Monomial, C, MonomialGreater> rem;
  for (const auto& t : p.terms()) rem.emplace(t.m, t.c);
  auto sub = [&](const Monomial& m, const C& v) {
    auto jt = rem.find(m);
    if (jt == rem.end()) {
      rem.emplace(m, -v);
    } else {
      jt->second -= v;
      if (is_zero(jt->second)) rem.erase(jt);
    }
  };
  sub(r0.m * r0.m, r0.c * r0.c);
  C two_r0 = C(2) * r0.c;
  while (!rem.empty()) {
    auto it = rem.begin();
    if (!divides(r0.m, it->first)) return std::nullopt;
    Term t{quotient(it->first, r0.m), it->second / two_r0};
    if (compare(t.m, r0.m) >= 0) return std::nullopt;
    for (const auto& s : root) sub(s.m * t.m, C(2) * s.c * t.c);
    sub(t.m * t.m, t.c * t.c);
    root.push_back(std::move(t));
  }
  return Poly<C>::from_terms(std::move(root));
}

template <class C>
struct RationalFn {
  Poly<C> num;
  Poly<C> den{C(1)};

  RationalFn() = default;
  RationalFn(Poly<C> n) : num(std::move(n)) {}
  RationalFn(Poly<C> n, Poly<C> d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw std::domain_error("zero denominator");
  }

  bool is_zero() const { return num.is_zero(); }

  friend RationalFn operator+(const RationalFn& a, const RationalFn& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den == b.den) return {a.num + b.num, a.den};
    return {a.num * b.den + b.num * a.den, a.den * b.den};
  }
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b) { return a + (-b); }
  RationalFn operator-() const { return {-num, den}; }
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b) {
    if (a.is_zero() || b.is_zero()) return RationalFn();
    return {a.num * b.num, a.den * b.den};
  }
  friend RationalFn operator*(const C& c, const RationalFn& a) { return {c * a.num, a.den}; }
  RationalFn& operator+=(const RationalFn& o) { return *this = *this + o; }

  // Equality as rational functions.
  bool equals(const RationalFn& o) const {
    if (den == o.den) return num == o.num;
    return num * o.den == o.num * den;
  }

  RationalFn derivative(int v) const {
    if (den.is_constant()) return {num.derivative(v), den};
    return {num.derivative(v) * den - num * den.derivative(v), den * den};
  }

  RationalFn set_zero(int v) const { return {num.set_zero(v), den.set_zero(v)}; }
};

template <class C>
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int r, int c) : rows_(r), cols_(c), a_(std::size_t(r) * c) {}

  static PolyMatrix identity(int n) {
    PolyMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Poly<C>(C(1));
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Poly<C>& operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
  const Poly<C>& operator()(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

  bool operator==(const PolyMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const PolyMatrix& o) const { return !(*this == o); }

  friend PolyMatrix operator*(const PolyMatrix& x, const PolyMatrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("matrix shape mismatch");
    PolyMatrix r(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int j = 0; j < y.cols_; ++j) {
        Poly<C> s;
        for (int k = 0; k < x.cols_; ++k) {
          if (x(i, k).is_zero() || y(k, j).is_zero()) continue;
          s += x(i, k) * y(k, j);
        }
        r(i, j) = std::move(s);
      }
    return r;
  }
  friend PolyMatrix operator+(const PolyMatrix& x, const PolyMatrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("matrix shape mismatch");
    PolyMatrix r = x;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += y.a_[i];
    return r;
  }
  friend PolyMatrix operator-(const PolyMatrix& x, const PolyMatrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("matrix shape mismatch");
    PolyMatrix r = x;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= y.a_[i];
    return r;
  }
  friend PolyMatrix operator*(const C& c, const PolyMatrix& x) {
    PolyMatrix r = x;
    for (auto& p : r.a_) p = c * p;
    return r;
  }

  PolyMatrix transpose() const {
    PolyMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }
  PolyMatrix adjoint() const {
    PolyMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j).conjugate();
    return r;
  }

  PolyMatrix submatrix(const std::vector<int>& rs, const std::vector<int>& cs) const {
    PolyMatrix r(int(rs.size()), int(cs.size()));
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) r(int(i), int(j)) = (*this)(rs[i], cs[j]);
    return r;
  }
  // Deletes the given rows and columns.
  PolyMatrix minor(const std::vector<int>& del_rows, const std::vector<int>& del_cols) const {
    std::vector<int> rs, cs;
    for (int i = 0; i < rows_; ++i)
      if (std::find(del_rows.begin(), del_rows.end(), i) == del_rows.end()) rs.push_back(i);
    for (int j = 0; j < cols_; ++j)
      if (std::find(del_cols.begin(), del_cols.end(), j) == del_cols.end()) cs.push_back(j);
    return submatrix(rs, cs);
  }

  template <class F>
  PolyMatrix map(F f) const {
    PolyMatrix r = *this;
    for (auto& p : r.a_) p = f(p);
    return r;
  }

  bool is_zero() const {
    for (const auto& p : a_)
      if (!p.is_zero()) return false;
    return true;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Poly<C>> a_;
};

using CMatrix = PolyMatrix<Gaussian>;
using HMatrix = PolyMatrix<Quaternion>;

// Laplace expansion along rows, memoised over column subsets.
template <class C>
Poly<C> det_cofactor(const PolyMatrix<C>& m) {
  if constexpr (!ring_traits<C>::commutative) {
    throw std::invalid_argument("determinant of a matrix with non-commuting entries");
  } else {
    int n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    if (n == 0) return Poly<C>(C(1));
    if (n > 20) throw std::invalid_argument("matrix too large for cofactor expansion");
    std::vector<Poly<C>> f(std::size_t(1) << n);
    std::vector<char> done(f.size(), 0);
    f[0] = Poly<C>(C(1));
    done[0] = 1;
    // Process masks in increasing popcount so that sub-results exist.
    std::vector<unsigned> masks(f.size());
    for (unsigned i = 0; i < masks.size(); ++i) masks[i] = i;
    std::stable_sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
      return __builtin_popcount(a) < __builtin_popcount(b);
    });
    for (unsigned mask : masks) {
      if (mask == 0) continue;
      int row = __builtin_popcount(mask) - 1;
      Poly<C> s;
      int above = __builtin_popcount(mask);
      for (int j = 0; j < n; ++j) {
        if (!(mask & (1u << j))) continue;
        --above;
        const auto& sub = f[mask & ~(1u << j)];
        if (m(row, j).is_zero() || sub.is_zero()) continue;
        Poly<C> t = m(row, j) * sub;
        if (above % 2) {
          s -= t;
        } else {
          s += t;
        }
      }
      f[mask] = std::move(s);
    }
    return f.back();
  }
}

// Fraction-free Gaussian elimination with exact polynomial division.
template <class C>
Poly<C> det_bareiss(PolyMatrix<C> m) {
  if constexpr (!ring_traits<C>::commutative) {
    throw std::invalid_argument("determinant of a matrix with non-commuting entries");
  } else {
    int n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    if (n == 0) return Poly<C>(C(1));
    bool neg = false;
    Poly<C> prev(C(1));
    for (int k = 0; k < n - 1; ++k) {
      if (m(k, k).is_zero()) {
        int p = k + 1;
        while (p < n && m(p, k).is_zero()) ++p;
        if (p == n) return Poly<C>();
        for (int j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
        neg = !neg;
      }
      for (int i = k + 1; i < n; ++i)
        for (int j = k + 1; j < n; ++j) {
          Poly<C> t = m(k, k) * m(i, j) - m(i, k) * m(k, j);
          auto q = divide_exact(t, prev);
          if (!q) throw std::logic_error("inexact division in fraction-free elimination");
          m(i, j) = std::move(*q);
        }
      prev = m(k, k);
    }
    return neg ? -m(n - 1, n - 1) : m(n - 1, n - 1);
  }
}

template <class C>
PolyMatrix<C> adjugate(const PolyMatrix<C>& m) {
  int n = m.rows();
  PolyMatrix<C> r(n, n);
  if (n == 1) {
    r(0, 0) = Poly<C>(C(1));
    return r;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Poly<C> d = det_cofactor(m.minor({j}, {i}));
      r(i, j) = (i + j) % 2 ? -d : d;
    }
  return r;
}

// Complex 2x2-block image of a quaternion matrix.
inline CMatrix chi(const HMatrix& m) {
  CMatrix r(2 * m.rows(), 2 * m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      std::vector<CPoly::Term> t00, t01, t10, t11;
      for (const auto& t : m(i, j).terms()) {
        Chi2 c = chi(t.c);
        t00.push_back({t.m, c.a00});
        t01.push_back({t.m, c.a01});
        t10.push_back({t.m, c.a10});
        t11.push_back({t.m, c.a11});
      }
      r(2 * i, 2 * j) = CPoly::from_terms(std::move(t00));
      r(2 * i, 2 * j + 1) = CPoly::from_terms(std::move(t01));
      r(2 * i + 1, 2 * j) = CPoly::from_terms(std::move(t10));
      r(2 * i + 1, 2 * j + 1) = CPoly::from_terms(std::move(t11));
    }
  return r;
}

// Embeds a matrix with complex coefficients in the quaternion ring.
inline HMatrix to_quaternion(const CMatrix& m) {
  HMatrix r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      std::vector<HPoly::Term> ts;
      for (const auto& t : m(i, j).terms()) ts.push_back({t.m, Quaternion(t.c)});
      r(i, j) = HPoly::from_terms(std::move(ts));
    }
  return r;
}

// Inverse of to_quaternion; throws if some coefficient has j or k parts.
inline CMatrix to_complex(const HMatrix& m) {
  CMatrix r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      std::vector<CPoly::Term> ts;
      for (const auto& t : m(i, j).terms()) {
        if (!t.c.is_complex()) throw std::invalid_argument("quaternionic entry in complex matrix");
        ts.push_back({t.m, Gaussian(t.c.w, t.c.x)});
      }
      r(i, j) = CPoly::from_terms(std::move(ts));
    }
  return r;
}

inline CPoly to_cpoly(const QPoly& p) {
  std::vector<CPoly::Term> ts;
  for (const auto& t : p.terms()) ts.push_back({t.m, Gaussian(t.c)});
  return CPoly::from_terms(std::move(ts));
}

}  // namespace canon
