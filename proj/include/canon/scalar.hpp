#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>

namespace canon {

using Rational = mpq_class;

Rational parse_rational(std::string_view s);
std::string to_string(const Rational& r);
bool is_zero(const Rational& r);
inline Rational conj(const Rational& r) { return r; }
double to_double(const Rational& r);

// Returns false if r is not the square of a rational.
bool rational_sqrt(const Rational& r, Rational& out);

struct Gaussian {
  Rational re, im;

  Gaussian() = default;
  Gaussian(long v) : re(v), im(0) {}
  Gaussian(const Rational& r) : re(r), im(0) {}
  Gaussian(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  Gaussian& operator+=(const Gaussian& o);
  Gaussian& operator-=(const Gaussian& o);
  Gaussian& operator*=(const Gaussian& o);
  Gaussian operator-() const { return {-re, -im}; }
  bool operator==(const Gaussian& o) const { return re == o.re && im == o.im; }
  bool operator!=(const Gaussian& o) const { return !(*this == o); }
  bool is_real() const { return sgn(im) == 0; }
};

Gaussian operator+(Gaussian a, const Gaussian& b);
Gaussian operator-(Gaussian a, const Gaussian& b);
Gaussian operator*(const Gaussian& a, const Gaussian& b);
Gaussian operator/(const Gaussian& a, const Gaussian& b);
Gaussian conj(const Gaussian& a);
Rational norm2(const Gaussian& a);
bool is_zero(const Gaussian& a);
std::string to_string(const Gaussian& a);
std::complex<double> to_complex(const Gaussian& a);
const Gaussian kI{Rational(0), Rational(1)};

struct Quaternion {
  Rational w, x, y, z;  // w + x i + y j + z k

  Quaternion() = default;
  Quaternion(long v) : w(v) {}
  Quaternion(const Rational& r) : w(r) {}
  Quaternion(const Gaussian& g) : w(g.re), x(g.im) {}
  Quaternion(Rational a, Rational b, Rational c, Rational d)
      : w(std::move(a)), x(std::move(b)), y(std::move(c)), z(std::move(d)) {}

  Quaternion& operator+=(const Quaternion& o);
  Quaternion& operator-=(const Quaternion& o);
  Quaternion& operator*=(const Quaternion& o);
  Quaternion operator-() const { return {-w, -x, -y, -z}; }
  bool operator==(const Quaternion& o) const {
    return w == o.w && x == o.x && y == o.y && z == o.z;
  }
  bool operator!=(const Quaternion& o) const { return !(*this == o); }
  bool is_complex() const { return sgn(y) == 0 && sgn(z) == 0; }
};

Quaternion operator+(Quaternion a, const Quaternion& b);
Quaternion operator-(Quaternion a, const Quaternion& b);
Quaternion operator*(const Quaternion& a, const Quaternion& b);
Quaternion conj(const Quaternion& a);
Rational norm2(const Quaternion& a);
bool is_zero(const Quaternion& a);
std::string to_string(const Quaternion& a);
// Euclidean inner product Re(a conj(b)).
Rational dot(const Quaternion& a, const Quaternion& b);

// 2x2 complex image: 1 -> I, i -> diag(i,-i), j -> ((0,-1),(1,0)), k -> ((0,-i),(-i,0)).
struct Chi2 {
  Gaussian a00, a01, a10, a11;
};
Chi2 chi(const Quaternion& q);

template <class C>
struct ring_traits;
template <>
struct ring_traits<Rational> {
  static constexpr bool commutative = true;
};
template <>
struct ring_traits<Gaussian> {
  static constexpr bool commutative = true;
};
template <>
struct ring_traits<Quaternion> {
  static constexpr bool commutative = false;
};

}  // namespace canon
