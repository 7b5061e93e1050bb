#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <vector>

namespace fftheta {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// dense univariate polynomial with rational coefficients, c[i] is the
// coefficient of q^i
struct Poly {
  std::vector<Rat> c;

  Poly() = default;
  explicit Poly(Rat constant) {
    if (constant != 0) c.push_back(std::move(constant));
  }
  static Poly monomial(int deg, Rat coeff = 1) {
    Poly p;
    if (coeff != 0) {
      p.c.assign(deg + 1, Rat(0));
      p.c[deg] = std::move(coeff);
    }
    return p;
  }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  Rat coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : Rat(0);
  }

  bool operator==(const Poly& o) const = default;

  Poly operator+(const Poly& o) const {
    Poly r;
    r.c.resize(std::max(c.size(), o.c.size()), Rat(0));
    for (size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
    r.trim();
    return r;
  }
  Poly operator-(const Poly& o) const {
    Poly r;
    r.c.resize(std::max(c.size(), o.c.size()), Rat(0));
    for (size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r.c[i] -= o.c[i];
    r.trim();
    return r;
  }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    Poly r;
    r.c.assign(c.size() + o.c.size() - 1, Rat(0));
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    r.trim();
    return r;
  }
  Poly operator*(const Rat& s) const {
    Poly r = *this;
    for (auto& x : r.c) x *= s;
    r.trim();
    return r;
  }

  // exact division; throws if the remainder is non-zero
  Poly div_exact(const Poly& d) const {
    if (d.is_zero()) throw std::invalid_argument("division by zero polynomial");
    Poly rem = *this, quot;
    if (rem.is_zero()) return quot;
    quot.c.assign(std::max<int>(0, rem.degree() - d.degree()) + 1, Rat(0));
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
      int k = rem.degree() - d.degree();
      Rat f = rem.c.back() / d.c.back();
      quot.c[k] = f;
      for (size_t i = 0; i < d.c.size(); ++i) rem.c[k + i] -= f * d.c[i];
      rem.trim();
    }
    if (!rem.is_zero()) throw std::runtime_error("inexact polynomial division");
    quot.trim();
    return quot;
  }

  Rat eval(const Rat& q) const {
    Rat v = 0;
    for (size_t i = c.size(); i-- > 0;) v = v * q + c[i];
    return v;
  }
};

// q^a - q^b and q^a + q^b
inline Poly q_diff(int a, int b) {
  return Poly::monomial(a) - Poly::monomial(b);
}
inline Poly q_sum(int a, int b) {
  return Poly::monomial(a) + Poly::monomial(b);
}

}  // namespace fftheta
