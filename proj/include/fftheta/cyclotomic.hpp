#pragma once

#include <string>
#include <vector>

#include "fftheta/poly.hpp"

namespace fftheta {

// Element of Q(zeta_L), stored as a polynomial in zeta_L of degree < phi(L)
// and kept reduced modulo the L-th cyclotomic polynomial.  Rationals live at
// conductor 1; mixed-conductor arithmetic promotes to the lcm.
class Cyc {
 public:
  Cyc() : cond_(1), c_(1, Rat(0)) {}
  explicit Cyc(Rat r) : cond_(1), c_(1, std::move(r)) {}
  explicit Cyc(long long n) : cond_(1), c_(1, Rat(n)) {}

  static Cyc zeta(int conductor, long long power = 1);
  // sqrt(p) for an odd prime, assembled from the quadratic Gauss sum;
  // lands in conductor 4p.
  static Cyc sqrt_prime(int p);

  int conductor() const { return cond_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  Rat rational_value() const;

  Cyc conj() const;
  Cyc inverse() const;
  Cyc pow(long long e) const;
  Cyc to_conductor(int L) const;

  Cyc operator-() const;
  Cyc operator+(const Cyc& o) const;
  Cyc operator-(const Cyc& o) const;
  Cyc operator*(const Cyc& o) const;
  Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
  Cyc& operator-=(const Cyc& o) { return *this = *this - o; }
  Cyc& operator*=(const Cyc& o) { return *this = *this * o; }
  bool operator==(const Cyc& o) const;
  bool operator!=(const Cyc& o) const { return !(*this == o); }

  // deterministic total order used to sort character rows reproducibly
  static bool lex_less(const Cyc& x, const Cyc& y);

  std::string to_string() const;

 private:
  int cond_;
  std::vector<Rat> c_;  // canonical coefficients, length phi(cond_)
};

int euler_phi(int n);
// coefficients of the L-th cyclotomic polynomial (monic, low degree first)
const std::vector<Rat>& cyclotomic_poly(int L);

// additive character of F_p at parameter a: psi_a(x) = zeta_p^{a x}
Cyc psi_value(int p, long long a, long long x);

std::string to_string(const Cyc& z);

}  // namespace fftheta
