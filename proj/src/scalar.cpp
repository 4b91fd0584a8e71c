#include "canon/scalar.hpp"

#include <cctype>
#include <stdexcept>

namespace canon {

Rational parse_rational(std::string_view s) {
  std::string t(s);
  auto b = t.find_first_not_of(" \t");
  auto e = t.find_last_not_of(" \t");
  if (b == std::string::npos) throw std::invalid_argument("empty rational");
  t = t.substr(b, e - b + 1);
  std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  auto slash = t.find('/');
  bool ok = start < t.size();
  for (std::size_t i = start; i < t.size() && ok; ++i) {
    if (i == slash) {
      ok = i > start && i + 1 < t.size();
    } else if (!std::isdigit(static_cast<unsigned char>(t[i]))) {
      ok = false;
    }
  }
  if (!ok) throw std::invalid_argument("malformed rational '" + t + "'");
  if (t[0] == '+') t = t.substr(1);
  Rational r;
  if (r.set_str(t, 10) != 0) throw std::invalid_argument("malformed rational '" + t + "'");
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + t + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

bool is_zero(const Rational& r) { return sgn(r) == 0; }

double to_double(const Rational& r) { return r.get_d(); }

bool rational_sqrt(const Rational& r, Rational& out) {
  if (sgn(r) < 0) return false;
  if (!mpz_perfect_square_p(r.get_num_mpz_t()) || !mpz_perfect_square_p(r.get_den_mpz_t()))
    return false;
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), r.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), r.get_den_mpz_t());
  out = Rational(n, d);
  out.canonicalize();
  return true;
}

Gaussian& Gaussian::operator+=(const Gaussian& o) {
  re += o.re;
  im += o.im;
  return *this;
}

Gaussian& Gaussian::operator-=(const Gaussian& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

Gaussian& Gaussian::operator*=(const Gaussian& o) {
  *this = *this * o;
  return *this;
}

Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }

Gaussian operator*(const Gaussian& a, const Gaussian& b) {
  bool ar = a.is_real(), br = b.is_real();
  if (ar && br) return Gaussian(a.re * b.re);
  if (ar) return {a.re * b.re, a.re * b.im};
  if (br) return {a.re * b.re, a.im * b.re};
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Gaussian operator/(const Gaussian& a, const Gaussian& b) {
  Rational n = norm2(b);
  if (sgn(n) == 0) throw std::domain_error("division by zero");
  Gaussian p = a * conj(b);
  return {p.re / n, p.im / n};
}

Gaussian conj(const Gaussian& a) { return {a.re, -a.im}; }
Rational norm2(const Gaussian& a) { return a.re * a.re + a.im * a.im; }
bool is_zero(const Gaussian& a) { return sgn(a.re) == 0 && sgn(a.im) == 0; }

std::string to_string(const Gaussian& a) {
  if (a.is_real()) return a.re.get_str();
  if (sgn(a.re) == 0) {
    if (a.im == 1) return "i";
    if (a.im == -1) return "-i";
    return a.im.get_str() + "i";
  }
  std::string s = a.re.get_str();
  if (sgn(a.im) > 0) s += "+";
  if (a.im == 1) return s + "i";
  if (a.im == -1) return s + "-i";
  return s + a.im.get_str() + "i";
}

std::complex<double> to_complex(const Gaussian& a) { return {a.re.get_d(), a.im.get_d()}; }

Quaternion& Quaternion::operator+=(const Quaternion& o) {
  w += o.w;
  x += o.x;
  y += o.y;
  z += o.z;
  return *this;
}

Quaternion& Quaternion::operator-=(const Quaternion& o) {
  w -= o.w;
  x -= o.x;
  y -= o.y;
  z -= o.z;
  return *this;
}

Quaternion& Quaternion::operator*=(const Quaternion& o) {
  *this = *this * o;
  return *this;
}

Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }

Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

Quaternion conj(const Quaternion& a) { return {a.w, -a.x, -a.y, -a.z}; }
Rational norm2(const Quaternion& a) { return a.w * a.w + a.x * a.x + a.y * a.y + a.z * a.z; }
bool is_zero(const Quaternion& a) {
  return sgn(a.w) == 0 && sgn(a.x) == 0 && sgn(a.y) == 0 && sgn(a.z) == 0;
}

std::string to_string(const Quaternion& a) {
  std::string s;
  auto part = [&](const Rational& c, const char* unit) {
    if (sgn(c) == 0) return;
    if (!s.empty() && sgn(c) > 0) s += "+";
    if (*unit && c == 1) {
      s += unit;
    } else if (*unit && c == -1) {
      s += "-";
      s += unit;
    } else {
      s += c.get_str() + unit;
    }
  };
  part(a.w, "");
  part(a.x, "i");
  part(a.y, "j");
  part(a.z, "k");
  return s.empty() ? "0" : s;
}

Rational dot(const Quaternion& a, const Quaternion& b) {
  return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

Chi2 chi(const Quaternion& q) {
  return {Gaussian(q.w, q.x), Gaussian(-q.y, -q.z), Gaussian(q.y, -q.z), Gaussian(q.w, -q.x)};
}

}  // namespace canon
