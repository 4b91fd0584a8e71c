#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "canon/laplacian.hpp"
#include "canon/poly.hpp"

namespace canon {

enum class GenKind {
  First,               // on the graph Laplacian, degrees 4k+1
  Second,              // on the generalised Laplacian, complex kinematics, degrees 2k+1
  SecondQuaternionic,  // on chi of the generalised Laplacian, degrees 4k+1
  O1,                  // h dlog Xi - (h+1) dlog Psi
};

struct Generator {
  GenKind kind = GenKind::Second;
  int degree = 1;

  bool operator==(const Generator& o) const { return kind == o.kind && degree == o.degree; }
  bool operator<(const Generator& o) const {
    return kind != o.kind ? kind < o.kind : degree < o.degree;
  }
  std::string str() const;
};

struct FormMonomial {
  Rational coeff{1};
  std::vector<Generator> gens;  // strictly increasing
  int degree() const;
};

// Linear combination of wedge products of primitive generators.
struct FormSpec {
  std::vector<FormMonomial> terms;

  static FormSpec unit();
  static FormSpec generator(Generator g);
  int degree() const;  // throws if the terms have different degrees
  bool is_zero() const { return terms.empty(); }
  std::string str() const;
};

// Grammar: spec := "1" | factor ("^" factor)*, factor := "w" N | "p" N | "pq" N | "o1".
FormSpec parse_form_spec(const std::string& s);
FormSpec wedge(const FormSpec& a, const FormSpec& b);
FormSpec add(const FormSpec& a, const FormSpec& b);
FormSpec scale(const Rational& c, const FormSpec& a);
// Replaces every second-kind generator by its first-kind counterpart.
FormSpec to_first_kind(const FormSpec& a);

struct CoproductTerm {
  Rational coeff;
  FormSpec left, right;
};
// Each generator is primitive; the extension to products carries Koszul signs.
std::vector<CoproductTerm> coproduct(const FormSpec& a);

using RatFn = RationalFn<Gaussian>;

struct SymbolicForm {
  int degree = 0;
  std::vector<int> vars;                         // sorted variable indices
  std::map<std::vector<int>, RatFn> coeffs;      // sorted variable subsets

  bool is_zero() const;
  RatFn coefficient(const std::vector<int>& s) const;
  std::complex<double> evaluate(const std::array<std::complex<double>, kMaxVars>& point,
                                const std::vector<std::array<double, kMaxVars>>& frame) const;
};

bool equal(const SymbolicForm& a, const SymbolicForm& b);
SymbolicForm operator+(const SymbolicForm& a, const SymbolicForm& b);
SymbolicForm operator*(const Gaussian& c, const SymbolicForm& a);
SymbolicForm wedge(const SymbolicForm& a, const SymbolicForm& b);
SymbolicForm exterior_derivative(const SymbolicForm& a);
// Pull back to the face a_e = 0.
SymbolicForm restrict_face(const SymbolicForm& a, int e);
SymbolicForm unit_form(const std::vector<int>& vars);

// tr((X^-1 dX)^(2k+1)) for X affine-linear in the given variables, with denominator
// det(X)^(k+1). With reduce_by_root the inverse is taken over sqrt(det X) when det X is a
// perfect square dividing the adjugate, and the denominator is sqrt(det X)^(k+1).
SymbolicForm primitive_on_matrix(const CMatrix& x, int k, const std::vector<int>& vars,
                                 bool reduce_by_root = false);

SymbolicForm realize(const FormSpec& spec, const LaplacianBundle& b);
SymbolicForm realize(const FormSpec& spec, const Graph& g, const Kinematics& k);
SymbolicForm o1_form(const LaplacianBundle& b);
// sum_i (-1)^i a_i da_1 ^ .. (omit i) .. ^ da_N over the given variables.
SymbolicForm omega_form(const std::vector<int>& vars);

void check_spec_kinds(const FormSpec& spec, int dim);

// Fast floating-point evaluation of a realised form on tangent frames.
class NumericForm {
 public:
  NumericForm(const FormSpec& spec, const LaplacianBundle& b);

  int degree() const { return degree_; }
  const std::vector<int>& vars() const { return vars_; }
  // alpha and frame vectors are indexed by position in vars().
  std::complex<double> evaluate(const std::vector<double>& alpha,
                                const std::vector<std::vector<double>>& frame) const;

 private:
  struct Family {
    std::vector<Eigen::MatrixXcd> slope;  // dX/da_v per variable position
    Eigen::MatrixXcd offset;
  };
  enum Slot { kFirst = 0, kSecond = 1, kChi = 2 };

  std::complex<double> primitive(const Eigen::MatrixXcd& xinv, const Family& f, int n,
                                 const std::vector<const std::vector<double>*>& vecs) const;
  std::complex<double> monomial(const std::vector<Generator>& gens, std::size_t pos,
                                const std::vector<int>& idx, const std::vector<double>& alpha,
                                const std::vector<std::vector<double>>& frame,
                                const std::vector<Eigen::MatrixXcd>& inv) const;
  int slot(GenKind k) const;

  FormSpec spec_;
  int degree_ = 0;
  int loops_ = 0;
  bool chi_ = false;
  std::vector<int> vars_;
  std::vector<Family> fam_;  // indexed by Slot
};

}  // namespace canon
