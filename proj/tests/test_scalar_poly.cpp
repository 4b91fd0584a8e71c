#include <doctest.h>

#include <random>

#include "canon/library.hpp"
#include "canon/poly.hpp"
#include "canon/scalar.hpp"
#include "canon/symanzik.hpp"
#include "helpers.hpp"

using namespace canon;
using testkit::var;

namespace {

Quaternion rand_quat(std::mt19937_64& rng) {
  return Quaternion(random_rational(rng), random_rational(rng), random_rational(rng), random_rational(rng));
}

Gaussian rand_gauss(std::mt19937_64& rng) { return Gaussian(random_rational(rng), random_rational(rng)); }

// Random matrix with entries affine in a1..a3 and small Gaussian coefficients.
CMatrix rand_poly_matrix(int n, std::mt19937_64& rng) {
  CMatrix m(n, n);
  std::uniform_int_distribution<int> c(-2, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      CPoly p(Gaussian(Rational(c(rng)), Rational(c(rng))));
      for (int v = 1; v <= 3; ++v) p += CPoly(Gaussian(Rational(c(rng)))) * var(v);
      m(i, j) = p;
    }
  return m;
}

bool chi_equal(const Chi2& a, const Chi2& b) {
  return a.a00 == b.a00 && a.a01 == b.a01 && a.a10 == b.a10 && a.a11 == b.a11;
}

Chi2 chi_mul(const Chi2& a, const Chi2& b) {
  return {a.a00 * b.a00 + a.a01 * b.a10, a.a00 * b.a01 + a.a01 * b.a11, a.a10 * b.a00 + a.a11 * b.a10,
          a.a10 * b.a01 + a.a11 * b.a11};
}

}  // namespace

TEST_CASE("parse_rational accepts p/q and rejects junk") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational(" +2/4 ") == Rational(1, 2));
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("/3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
}

TEST_CASE("rational_sqrt") {
  Rational r;
  CHECK(rational_sqrt(Rational(9, 4), r));
  CHECK(r == Rational(3, 2));
  CHECK_FALSE(rational_sqrt(Rational(2), r));
  CHECK_FALSE(rational_sqrt(Rational(-4), r));
}

TEST_CASE("quaternion units") {
  Quaternion one(1), i(0, 1, 0, 0), j(0, 0, 1, 0), k(0, 0, 0, 1);
  CHECK(i * i == -one);
  CHECK(j * j == -one);
  CHECK(k * k == -one);
  CHECK(i * j == k);
  CHECK(j * i == -k);
  CHECK(k * i == j);
  CHECK(i * k == -j);
  CHECK(j * k == i);
  CHECK(k * j == -i);
}

TEST_CASE("conjugation is an anti-involution and the norm is rational") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    Quaternion x = rand_quat(rng), y = rand_quat(rng);
    CHECK(conj(x * y) == conj(y) * conj(x));
    CHECK(conj(conj(x)) == x);
    Quaternion n = x * conj(x);
    CHECK(n == Quaternion(norm2(x)));
    CHECK(sgn(norm2(x)) >= 0);
    CHECK(dot(x, y) == dot(y, x));
    CHECK(dot(x, x) == norm2(x));
  }
}

TEST_CASE("gaussian arithmetic") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    Gaussian a = rand_gauss(rng), b = rand_gauss(rng);
    CHECK(conj(a * b) == conj(a) * conj(b));
    CHECK(a * conj(a) == Gaussian(norm2(a)));
    if (!is_zero(b)) CHECK((a / b) * b == a);
    CHECK(Quaternion(a) * Quaternion(b) == Quaternion(a * b));
  }
}

TEST_CASE("chi on the units and as a homomorphism") {
  Chi2 cj = chi(Quaternion(0, 0, 1, 0));
  CHECK(cj.a00 == Gaussian(0));
  CHECK(cj.a01 == Gaussian(-1));
  CHECK(cj.a10 == Gaussian(1));
  CHECK(cj.a11 == Gaussian(0));
  std::mt19937_64 rng(13);
  for (int t = 0; t < 200; ++t) {
    Quaternion x = rand_quat(rng), y = rand_quat(rng);
    CHECK(chi_equal(chi(x * y), chi_mul(chi(x), chi(y))));
    Chi2 c = chi(x), cc = chi(conj(x));
    CHECK(cc.a00 == conj(c.a00));
    CHECK(cc.a01 == conj(c.a10));
    CHECK(cc.a10 == conj(c.a01));
    CHECK(cc.a11 == conj(c.a11));
  }
}

TEST_CASE("chi of matrices: Hermitian conjugation and products") {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 20; ++t) {
    HMatrix a(2, 2), b(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        a(i, j) = HPoly(rand_quat(rng));
        b(i, j) = HPoly(rand_quat(rng));
      }
    CHECK(chi(a * b) == chi(a) * chi(b));
    CHECK(chi(a.adjoint()) == chi(a).adjoint());
  }
}

TEST_CASE("det chi(M) = det(M)^2 for complex M") {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 10; ++t) {
    CMatrix m = rand_poly_matrix(2, rng);
    HMatrix h = to_quaternion(m);
    CPoly d = det_cofactor(m);
    CHECK(det_cofactor(chi(h)) == d * d.conjugate());
  }
}

TEST_CASE("det chi of a Hermitian quaternionic matrix is a rational square") {
  std::mt19937_64 rng(16);
  for (int n = 1; n <= 3; ++n)
    for (int t = 0; t < 20; ++t) {
      HMatrix m(n, n);
      for (int i = 0; i < n; ++i) {
        m(i, i) = HPoly(Quaternion(random_rational(rng)));
        for (int j = i + 1; j < n; ++j) {
          Quaternion q = rand_quat(rng);
          m(i, j) = HPoly(q);
          m(j, i) = HPoly(conj(q));
        }
      }
      CPoly d = det_cofactor(chi(m));
      REQUIRE(d.is_constant());
      Gaussian c = d.constant_term();
      CHECK(c.is_real());
      Rational r;
      CHECK(rational_sqrt(c.re, r));
    }
}

TEST_CASE("polynomial text is in degree-reverse-lexicographic order") {
  CPoly p = var(1) + var(2) + var(3) + var(4);
  CHECK(p.str() == "a1+a2+a3+a4");
  CPoly q = (var(1) + var(2)) * (var(1) + var(2));
  CHECK(q.str() == "a1^2+2*a1*a2+a2^2");
  CHECK(CPoly().str() == "0");
  CHECK((CPoly(Gaussian(1)) - var(2)).str() == "-a2+1");
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 20; ++t) {
    CMatrix m = rand_poly_matrix(3, rng);
    const CPoly &a = m(0, 0), &b = m(1, 1), &c = m(2, 2);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("divide_exact and sqrt_exact") {
  std::mt19937_64 rng(18);
  for (int t = 0; t < 20; ++t) {
    CMatrix m = rand_poly_matrix(2, rng);
    const CPoly &a = m(0, 0), &b = m(0, 1);
    if (b.is_zero()) continue;
    auto q = divide_exact(a * b, b);
    REQUIRE(q);
    CHECK(*q == a);
    auto r = sqrt_exact(a * a);
    REQUIRE(r);
    CHECK((*r == a || *r == -a));
  }
  CHECK_FALSE(divide_exact(var(1) + CPoly(Gaussian(1)), var(2)));
  CHECK_FALSE(sqrt_exact(var(1) * var(2)));
}

TEST_CASE("derivative, set_zero and rescale") {
  CPoly p = var(1) * var(1) * var(2);
  CHECK(p.derivative(1) == CPoly(Gaussian(2)) * var(1) * var(2));
  CHECK(p.set_zero(2).is_zero());
  CHECK((var(1) * var(2)).rescale({1}) == var(kZ) * var(1) * var(2));
  CHECK(p.rescale({}) == p);
  CPoly ps = psi(builtin_graph("dunce")).rescale({3, 4});
  CHECK(ps.coefficient(kZ, 0).is_zero());
  CHECK(ps.coefficient(kZ, 1) == (var(1) + var(2)) * (var(3) + var(4)));
  CHECK(ps.coefficient(kZ, 2) == var(3) * var(4));
}

TEST_CASE("cofactor and Bareiss determinants agree") {
  std::mt19937_64 rng(19);
  for (int n = 1; n <= 4; ++n)
    for (int t = 0; t < 5; ++t) {
      CMatrix m = rand_poly_matrix(n, rng);
      CHECK(det_cofactor(m) == det_bareiss(m));
    }
}

TEST_CASE("adjugate identity A adj(A) = det(A) I") {
  std::mt19937_64 rng(20);
  for (int n = 1; n <= 4; ++n) {
    CMatrix m = rand_poly_matrix(n, rng);
    CPoly d = det_cofactor(m);
    CMatrix p = m * adjugate(m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) CHECK(p(i, j) == (i == j ? d : CPoly()));
  }
}

TEST_CASE("determinants of small examples") {
  CMatrix one(1, 1);
  one(0, 0) = var(1) + var(2);
  CHECK(det_cofactor(one) == var(1) + var(2));
  CHECK(det_cofactor(one.minor({0}, {0})) == CPoly(Gaussian(1)));
  // Banana with three edges.
  CMatrix b(2, 2);
  b(0, 0) = var(1) + var(3);
  b(0, 1) = var(3);
  b(1, 0) = var(3);
  b(1, 1) = var(2) + var(3);
  CHECK(det_cofactor(b) == var(1) * var(2) + var(1) * var(3) + var(2) * var(3));
  HMatrix h(1, 1);
  CHECK_THROWS(det_cofactor(h));
}

TEST_CASE("det(P^T M P) = det(P)^2 det(M)") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 10; ++t) {
    CMatrix m = rand_poly_matrix(3, rng);
    auto u = random_unimodular(3, rng);
    CMatrix p(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) p(i, j) = CPoly(Gaussian(u[i][j]));
    CHECK(det_cofactor(p.transpose() * m * p) == det_cofactor(m));
    CMatrix d = CMatrix::identity(3);
    d(0, 0) = CPoly(Gaussian(2));
    CHECK(det_cofactor(d.transpose() * m * d) == CPoly(Gaussian(4)) * det_cofactor(m));
  }
}

TEST_CASE("Hermitian matrices have real determinants") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 10; ++t) {
    CMatrix m = rand_poly_matrix(3, rng);
    CMatrix h = m + m.adjoint();
    CPoly d = det_cofactor(h);
    CHECK(d == d.conjugate());
  }
}

TEST_CASE("rational functions compare by cross multiplication") {
  RationalFn<Gaussian> a(var(1), var(2)), b(var(1) * var(3), var(2) * var(3));
  CHECK(a.equals(b));
  CHECK((a - b).is_zero());
  CHECK((a + a).equals(RationalFn<Gaussian>(CPoly(Gaussian(2)) * var(1), var(2))));
  CHECK(a.derivative(2).equals(RationalFn<Gaussian>(-var(1), var(2) * var(2))));
}
