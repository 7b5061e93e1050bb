#include "fftheta/cyclotomic.hpp"

#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fftheta {

namespace {

int poly_deg(const std::vector<Rat>& v) {
  for (int i = (int)v.size() - 1; i >= 0; --i)
    if (v[i] != 0) return i;
  return -1;
}

// remainder of v modulo the monic polynomial phi (low coefficients first)
void reduce_by(std::vector<Rat>& v, const std::vector<Rat>& phi) {
  int d = (int)phi.size() - 1;
  for (int i = (int)v.size() - 1; i >= d; --i) {
    Rat c = v[i];
    if (c == 0) continue;
    v[i] = 0;
    for (int j = 0; j < d; ++j) v[i - d + j] -= c * phi[j];
  }
  v.resize(d, Rat(0));
}

// division with remainder over Q[x]; b need not be monic
void divmod(std::vector<Rat> a, const std::vector<Rat>& b,
            std::vector<Rat>& q, std::vector<Rat>& r) {
  int db = poly_deg(b);
  if (db < 0) throw std::invalid_argument("cyclotomic: division by zero poly");
  int da = poly_deg(a);
  q.assign(std::max(da - db + 1, 1), Rat(0));
  for (int i = da; i >= db; --i) {
    if (a[i] == 0) continue;
    Rat c = a[i] / b[db];
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  r = std::move(a);
  r.resize(db > 0 ? db : 1, Rat(0));
}

std::vector<Rat> poly_mul_vec(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  std::vector<Rat> out(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<Rat> poly_sub_vec(std::vector<Rat> a, const std::vector<Rat>& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rat(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return a;
}

}  // namespace

int euler_phi(int n) {
  int r = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      r -= r / p;
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) r -= r / n;
  return r;
}

const std::vector<Rat>& cyclotomic_poly(int L) {
  static std::map<int, std::vector<Rat>> cache;
  auto it = cache.find(L);
  if (it != cache.end()) return it->second;

  Poly num;  // x^L - 1
  num.c.assign(L + 1, Rat(0));
  num.c[0] = Rat(-1);
  num.c[L] = Rat(1);
  Poly acc = num;
  for (int d = 1; d < L; ++d) {
    if (L % d != 0) continue;
    Poly phi_d;
    phi_d.c = cyclotomic_poly(d);
    acc = acc.div_exact(phi_d);
  }
  acc.trim();
  return cache.emplace(L, acc.c).first->second;
}

Cyc Cyc::zeta(int conductor, long long power) {
  if (conductor <= 0) throw std::invalid_argument("zeta: conductor must be positive");
  long long e = power % conductor;
  if (e < 0) e += conductor;
  Cyc z;
  z.cond_ = conductor;
  std::vector<Rat> v(e + 1, Rat(0));
  v[e] = Rat(1);
  reduce_by(v, cyclotomic_poly(conductor));
  z.c_ = std::move(v);
  return z;
}

Cyc Cyc::sqrt_prime(int p) {
  if (p < 3 || p % 2 == 0) throw std::invalid_argument("sqrt_prime: odd prime required");
  Cyc g;
  for (long long x = 0; x < p; ++x) g += zeta(p, x * x);
  if (p % 4 == 1) return g;
  // g = i*sqrt(p) here, so divide by i
  return (g * zeta(4, 3)).to_conductor(4 * p);
}

bool Cyc::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool Cyc::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rat Cyc::rational_value() const {
  if (!is_rational()) throw std::domain_error("rational_value: not rational");
  return c_[0];
}

Cyc Cyc::to_conductor(int L) const {
  if (L % cond_ != 0) throw std::invalid_argument("to_conductor: not a multiple");
  if (L == cond_) return *this;
  int m = L / cond_;
  std::vector<Rat> v((c_.size() - 1) * m + 1, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) v[i * m] = c_[i];
  reduce_by(v, cyclotomic_poly(L));
  Cyc z;
  z.cond_ = L;
  z.c_ = std::move(v);
  return z;
}

Cyc Cyc::conj() const {
  std::vector<Rat> v(cond_, Rat(0));
  if (cond_ == 1) return *this;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    v[(cond_ - (long long)i) % cond_] += c_[i];
  }
  reduce_by(v, cyclotomic_poly(cond_));
  Cyc z;
  z.cond_ = cond_;
  z.c_ = std::move(v);
  return z;
}

Cyc Cyc::inverse() const {
  if (is_zero()) throw std::domain_error("Cyc::inverse of zero");
  if (is_rational()) return Cyc(Rat(1) / c_[0]);
  // extended euclid against the conductor's cyclotomic polynomial; phi is
  // irreducible over Q so the gcd is a nonzero constant
  std::vector<Rat> r0 = cyclotomic_poly(cond_), r1 = c_;
  std::vector<Rat> t0{Rat(0)}, t1{Rat(1)};
  while (poly_deg(r1) > 0) {
    std::vector<Rat> q, r;
    divmod(r0, r1, q, r);
    std::vector<Rat> t2 = poly_sub_vec(t0, poly_mul_vec(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (poly_deg(r1) != 0) throw std::runtime_error("Cyc::inverse: gcd degenerated");
  Rat lead = r1[0];
  std::vector<Rat> v = t1;
  for (auto& x : v) x /= lead;
  reduce_by(v, cyclotomic_poly(cond_));
  Cyc z;
  z.cond_ = cond_;
  z.c_ = std::move(v);
  return z;
}

Cyc Cyc::pow(long long e) const {
  if (e < 0) return inverse().pow(-e);
  Cyc acc(Rat(1));
  Cyc base = *this;
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

Cyc Cyc::operator-() const {
  Cyc z = *this;
  for (auto& x : z.c_) x = -x;
  return z;
}

Cyc Cyc::operator+(const Cyc& o) const {
  int L = std::lcm(cond_, o.cond_);
  Cyc a = to_conductor(L), b = o.to_conductor(L);
  for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
  return a;
}

Cyc Cyc::operator-(const Cyc& o) const { return *this + (-o); }

Cyc Cyc::operator*(const Cyc& o) const {
  int L = std::lcm(cond_, o.cond_);
  Cyc a = to_conductor(L), b = o.to_conductor(L);
  std::vector<Rat> v = poly_mul_vec(a.c_, b.c_);
  reduce_by(v, cyclotomic_poly(L));
  Cyc z;
  z.cond_ = L;
  z.c_ = std::move(v);
  return z;
}

bool Cyc::operator==(const Cyc& o) const {
  int L = std::lcm(cond_, o.cond_);
  return to_conductor(L).c_ == o.to_conductor(L).c_;
}

bool Cyc::lex_less(const Cyc& x, const Cyc& y) {
  int L = std::lcm(x.cond_, y.cond_);
  const auto a = x.to_conductor(L).c_, b = y.to_conductor(L).c_;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

std::string Cyc::to_string() const {
  if (is_rational()) {
    std::ostringstream os;
    os << c_[0];
    return os.str();
  }
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[i] << ")";
    if (i == 1)
      os << "*z" << cond_;
    else if (i > 1)
      os << "*z" << cond_ << "^" << i;
  }
  return os.str();
}

Cyc psi_value(int p, long long a, long long x) {
  return Cyc::zeta(p, a * x);
}

std::string to_string(const Cyc& z) { return z.to_string(); }

}  // namespace fftheta
