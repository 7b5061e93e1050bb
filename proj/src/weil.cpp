#include "fftheta/weil.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

namespace fftheta {

namespace wdetail {

constexpr int MAXPHI = 8;
using FC = std::array<long long, MAXPHI>;  // cyclotomic integer coefficient block

struct FastCtx {
  int L = 1;
  int phi = 1;
  std::vector<FC> red;   // canonical form of x^{phi+j}, j = 0 .. phi-2
  std::vector<FC> zpow;  // canonical form of zeta_L^e, e = 0 .. L-1
};

long long rat_to_ll(const Rat& r) {
  if (denominator(r) != 1) throw std::runtime_error("fast layer: non-integer coefficient");
  return numerator(r).convert_to<long long>();
}

FastCtx make_ctx(int L) {
  FastCtx C;
  C.L = L;
  const auto& phi_poly = cyclotomic_poly(L);
  C.phi = (int)phi_poly.size() - 1;
  if (C.phi > MAXPHI) throw std::runtime_error("fast layer: conductor too large");
  std::vector<long long> low(C.phi);
  for (int i = 0; i < C.phi; ++i) low[i] = rat_to_ll(phi_poly[i]);
  C.red.assign(std::max(C.phi - 1, 0), FC{});
  FC cur{};
  for (int i = 0; i < C.phi; ++i) cur[i] = -low[i];
  for (int j = 0; j + 1 < C.phi; ++j) {
    C.red[j] = cur;
    if (j + 2 >= C.phi) break;
    FC nxt{};
    long long spill = cur[C.phi - 1];
    for (int i = C.phi - 1; i >= 1; --i) nxt[i] = cur[i - 1];
    nxt[0] = 0;
    for (int i = 0; i < C.phi; ++i) nxt[i] += spill * C.red[0][i];
    cur = nxt;
  }
  C.zpow.assign(L, FC{});
  FC z{};
  z[0] = 1;
  for (int e = 0; e < L; ++e) {
    C.zpow[e] = z;
    FC nxt{};
    long long spill = z[C.phi - 1];
    for (int i = C.phi - 1; i >= 1; --i) nxt[i] = z[i - 1];
    nxt[0] = 0;
    if (C.phi > 1) {
      for (int i = 0; i < C.phi; ++i) nxt[i] += spill * C.red[0][i];
    } else {
      // phi == 1 means L == 1 and zeta == 1
      nxt[0] = z[0] * (-low[0]);
    }
    z = nxt;
  }
  return C;
}

bool fc_zero(const FC& a) {
  for (long long x : a)
    if (x != 0) return false;
  return true;
}

void fc_addmul(const FastCtx& C, FC& acc, const FC& a, const FC& b) {
  std::array<long long, 2 * MAXPHI> tmp{};
  for (int i = 0; i < C.phi; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < C.phi; ++j) tmp[i + j] += a[i] * b[j];
  }
  for (int j = 2 * C.phi - 2; j >= C.phi; --j) {
    long long c = tmp[j];
    if (c == 0) continue;
    tmp[j] = 0;
    const FC& row = C.red[j - C.phi];
    for (int i = 0; i < C.phi; ++i) tmp[i] += c * row[i];
  }
  for (int i = 0; i < C.phi; ++i) acc[i] += tmp[i];
}

FC fc_mul(const FastCtx& C, const FC& a, const FC& b) {
  FC out{};
  fc_addmul(C, out, a, b);
  return out;
}

struct FastM {
  int n = 0;
  long long den = 1;
  std::vector<FC> e;
  FC& at(int i, int j) { return e[(size_t)i * n + j]; }
  const FC& at(int i, int j) const { return e[(size_t)i * n + j]; }
};

FastM fm_identity(int n) {
  FastM m;
  m.n = n;
  m.e.assign((size_t)n * n, FC{});
  for (int i = 0; i < n; ++i) m.at(i, i)[0] = 1;
  return m;
}

void fm_normalize(FastM& m) {
  long long g = m.den < 0 ? -m.den : m.den;
  for (const FC& c : m.e)
    for (long long x : c) g = std::gcd(g, x < 0 ? -x : x);
  if (g > 1) {
    m.den /= g;
    for (FC& c : m.e)
      for (long long& x : c) x /= g;
  }
  if (m.den < 0) {
    m.den = -m.den;
    for (FC& c : m.e)
      for (long long& x : c) x = -x;
  }
}

FastM fm_mul(const FastCtx& C, const FastM& A, const FastM& B) {
  FastM out;
  out.n = A.n;
  out.den = A.den * B.den;
  out.e.assign((size_t)A.n * A.n, FC{});
  for (int i = 0; i < A.n; ++i)
    for (int k = 0; k < A.n; ++k) {
      const FC& a = A.at(i, k);
      if (fc_zero(a)) continue;
      for (int j = 0; j < A.n; ++j) {
        const FC& b = B.at(k, j);
        if (fc_zero(b)) continue;
        fc_addmul(C, out.at(i, j), a, b);
      }
    }
  fm_normalize(out);
  return out;
}

bool fm_eq(FastM a, FastM b) {
  fm_normalize(a);
  fm_normalize(b);
  return a.den == b.den && a.e == b.e;
}

FastM fm_pow(const FastCtx& C, FastM base, long long k) {
  FastM acc = fm_identity(base.n);
  while (k > 0) {
    if (k & 1) acc = fm_mul(C, acc, base);
    base = fm_mul(C, base, base);
    k >>= 1;
  }
  return acc;
}

Cyc fc_to_cyc(const FastCtx& C, const FC& v, long long den) {
  Cyc out;
  for (int i = 0; i < C.phi; ++i) {
    if (v[i] == 0) continue;
    out += Cyc(Rat(v[i], den)) * Cyc::zeta(C.L, i);
  }
  return out;
}

std::pair<FC, long long> cyc_to_fc(const FastCtx& C, const Cyc& z) {
  Cyc w = z.to_conductor(C.L);
  Int den = 1;
  for (const Rat& r : w.coeffs()) den = lcm(den, denominator(r));
  long long d = den.convert_to<long long>();
  FC out{};
  for (size_t i = 0; i < w.coeffs().size(); ++i) {
    Rat scaled = w.coeffs()[i] * Rat(d);
    out[i] = rat_to_ll(scaled);
  }
  return {out, d};
}

FastM fm_scale_cyc(const FastCtx& C, const FastM& A, const Cyc& s) {
  auto [num, d] = cyc_to_fc(C, s);
  FastM out;
  out.n = A.n;
  out.den = A.den * d;
  out.e.assign(A.e.size(), FC{});
  for (size_t i = 0; i < A.e.size(); ++i)
    if (!fc_zero(A.e[i])) fc_addmul(C, out.e[i], A.e[i], num);
  fm_normalize(out);
  return out;
}

// monomial operator in fast form; row u reads column src[u] with phase
// zeta_L^{zexp[u]}
struct MonoFast {
  std::vector<int> src;
  std::vector<int> zexp;
};

FastM fm_mul_mono_right(const FastCtx& C, const FastM& A, const MonoFast& R) {
  int n = A.n;
  std::vector<int> srcinv(n, -1);
  for (int u = 0; u < n; ++u) srcinv[R.src[u]] = u;
  FastM out;
  out.n = n;
  out.den = A.den;
  out.e.assign((size_t)n * n, FC{});
  for (int v = 0; v < n; ++v) {
    int c = srcinv[v];
    const FC& ph = C.zpow[R.zexp[c]];
    for (int u = 0; u < n; ++u) {
      const FC& a = A.at(u, c);
      if (!fc_zero(a)) fc_addmul(C, out.at(u, v), a, ph);
    }
  }
  fm_normalize(out);
  return out;
}

FastM fm_mul_mono_left(const FastCtx& C, const MonoFast& Lop, const FastM& A) {
  int n = A.n;
  FastM out;
  out.n = n;
  out.den = A.den;
  out.e.assign((size_t)n * n, FC{});
  for (int u = 0; u < n; ++u) {
    const FC& ph = C.zpow[Lop.zexp[u]];
    int r = Lop.src[u];
    for (int v = 0; v < n; ++v) {
      const FC& a = A.at(r, v);
      if (!fc_zero(a)) fc_addmul(C, out.at(u, v), ph, a);
    }
  }
  fm_normalize(out);
  return out;
}

}  // namespace wdetail

using namespace wdetail;

struct PairModelFast {
  FastCtx ctx;
  std::vector<FastM> left, right;
};

namespace {

int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::vector<int> decode_digits(int idx, int p, int N) {
  std::vector<int> d(N);
  for (int i = 0; i < N; ++i) {
    d[i] = idx % p;
    idx /= p;
  }
  return d;
}

int encode_digits(const std::vector<int>& d, int p) {
  int idx = 0;
  for (int i = (int)d.size() - 1; i >= 0; --i) idx = idx * p + d[i];
  return idx;
}

int mod_dot(int p, const std::vector<int>& a, const std::vector<int>& b, int from_a, int from_b,
            int len) {
  long long s = 0;
  for (int i = 0; i < len; ++i) s += (long long)a[from_a + i] * b[from_b + i];
  return (int)(s % p);
}

std::vector<int> mat_apply(const PMat& g, int p, const std::vector<int>& w) {
  std::vector<int> out(g.n, 0);
  for (int i = 0; i < g.n; ++i) {
    long long s = 0;
    for (int j = 0; j < g.n; ++j) s += (long long)g.at(i, j) * w[j];
    out[i] = (int)(s % p);
  }
  return out;
}

// phase exponent of rho(w,t) on row u, in units of zeta_p
int rho_exponent(int p, int a, int N, const std::vector<int>& w, int t, const std::vector<int>& u) {
  int half = (p + 1) / 2;
  long long e = t;
  e += mod_dot(p, u, w, 0, N, N);                          // u . y
  e += (long long)half * mod_dot(p, w, w, 0, N, N) % p;    // (x . y)/2
  return (int)((long long)a * (e % p) % p);
}

MonoFast rho_fast(int p, int a, int N, int L, const HeisElement& h) {
  int d = ipow(p, N);
  MonoFast m;
  m.src.resize(d);
  m.zexp.resize(d);
  int unit = L / p;
  for (int u = 0; u < d; ++u) {
    std::vector<int> ud = decode_digits(u, p, N);
    int e = rho_exponent(p, a, N, h.w, h.t, ud);
    for (int i = 0; i < N; ++i) ud[i] = (ud[i] + h.w[i]) % p;
    m.src[u] = encode_digits(ud, p);
    m.zexp[u] = e * unit % L;
  }
  return m;
}

}  // namespace

int symplectic_form(int p, const std::vector<int>& w, const std::vector<int>& wp) {
  int N = (int)w.size() / 2;
  long long s = 0;
  for (int i = 0; i < N; ++i)
    s += (long long)w[i] * wp[N + i] - (long long)wp[i] * w[N + i];
  s %= p;
  if (s < 0) s += p;
  return (int)s;
}

HeisElement heis_mul(int p, const HeisElement& g, const HeisElement& h) {
  HeisElement out;
  out.w.resize(g.w.size());
  for (size_t i = 0; i < g.w.size(); ++i) out.w[i] = (g.w[i] + h.w[i]) % p;
  int half = (p + 1) / 2;
  out.t = (int)((g.t + h.t + (long long)half * symplectic_form(p, g.w, h.w)) % p);
  return out;
}

HeisElement heis_inverse(int p, const HeisElement& g) {
  HeisElement out;
  out.w.resize(g.w.size());
  for (size_t i = 0; i < g.w.size(); ++i) out.w[i] = (p - g.w[i]) % p;
  out.t = (p - g.t) % p;
  return out;
}

int SchrodingerModel::dim() const { return ipow(p, N); }

MonomialOp SchrodingerModel::rho(const HeisElement& h) const {
  int d = dim();
  MonomialOp op;
  op.dim = d;
  op.src.resize(d);
  op.phase.resize(d);
  MonoFast m = rho_fast(p, a, N, 4 * p, h);
  for (int u = 0; u < d; ++u) {
    op.src[u] = m.src[u];
    op.phase[u] = Cyc::zeta(4 * p, m.zexp[u]);
  }
  return op;
}

Cyc SchrodingerModel::rho_trace(const HeisElement& h) const {
  MonomialOp op = rho(h);
  Cyc t;
  for (int u = 0; u < op.dim; ++u)
    if (op.src[u] == u) t += op.phase[u];
  return t;
}

std::vector<HeisElement> SchrodingerModel::heisenberg_elements() const {
  std::vector<HeisElement> out;
  int total = ipow(p, 2 * N);
  for (int widx = 0; widx < total; ++widx)
    for (int t = 0; t < p; ++t) {
      HeisElement h;
      h.w = decode_digits(widx, p, 2 * N);
      h.t = t;
      out.push_back(std::move(h));
    }
  return out;
}

SchrodingerModel heisenberg_rep(int p, int N, int a) {
  if (p != 3 && p != 5) throw std::invalid_argument("heisenberg_rep: q must be 3 or 5");
  if (N < 1 || N > 2) throw std::invalid_argument("heisenberg_rep: N must be 1 or 2");
  if (a < 1 || a >= p) throw std::invalid_argument("heisenberg_rep: a must lie in [1, q)");
  SchrodingerModel m;
  m.p = p;
  m.N = N;
  m.a = a;
  return m;
}

CycMatrix CycMatrix::identity(int n) {
  CycMatrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Cyc(Rat(1));
  return m;
}

CycMatrix CycMatrix::mul(const CycMatrix& o) const {
  CycMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (at(i, k).is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        if (o.at(k, j).is_zero()) continue;
        out.at(i, j) += at(i, k) * o.at(k, j);
      }
    }
  return out;
}

CycMatrix CycMatrix::scaled(const Cyc& s) const {
  CycMatrix out(n);
  for (size_t i = 0; i < a.size(); ++i) out.a[i] = a[i] * s;
  return out;
}

Cyc CycMatrix::trace() const {
  Cyc t;
  for (int i = 0; i < n; ++i) t += at(i, i);
  return t;
}

bool CycMatrix::operator==(const CycMatrix& o) const {
  if (n != o.n) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == o.a[i])) return false;
  return true;
}

bool is_standard_symplectic(const PMat& g, int p) {
  int n2 = g.n;
  if (n2 % 2 != 0) return false;
  int N = n2 / 2;
  auto form = [&](int i, int j) {
    // J = [[0, I], [-I, 0]]
    if (i < N && j == i + N) return 1;
    if (i >= N && j == i - N) return p - 1;
    return 0;
  };
  for (int i = 0; i < n2; ++i)
    for (int j = 0; j < n2; ++j) {
      long long s = 0;
      for (int k = 0; k < n2; ++k)
        for (int l = 0; l < n2; ++l) s += (long long)g.at(k, i) * form(k, l) % p * g.at(l, j);
      if ((int)(((s % p) + p) % p) != form(i, j)) return false;
    }
  return true;
}

namespace {

// Transport solution of the intertwining system: node (u,v) carries entry
// M[u][v]; each Heisenberg generator links it to (u + x', v + x) with a
// root-of-unity multiplier.  Inconsistent cycles force a component to zero.
FastM solve_transport(const FastCtx& ctx, const SchrodingerModel& model, const PMat& g) {
  int p = model.p, N = model.N, a = model.a, d = model.dim();
  int half = (p + 1) / 2;
  int nodes = d * d;

  struct Gen {
    std::vector<int> x, y, xp, yp;
  };
  std::vector<Gen> gens;
  for (int k = 0; k < 2 * N; ++k) {
    Gen G;
    G.x.assign(N, 0);
    G.y.assign(N, 0);
    std::vector<int> w(2 * N, 0);
    w[k] = 1;
    if (k < N)
      G.x[k] = 1;
    else
      G.y[k - N] = 1;
    std::vector<int> wg = mat_apply(g, p, w);
    G.xp.assign(wg.begin(), wg.begin() + N);
    G.yp.assign(wg.begin() + N, wg.end());
    gens.push_back(std::move(G));
  }

  // multiplier exponent (units of zeta_p) on the edge out of (u, v)
  auto edge_exp = [&](const Gen& G, const std::vector<int>& ud, const std::vector<int>& vd) {
    long long e = mod_dot(p, vd, G.y, 0, 0, N);
    e += (long long)half * mod_dot(p, G.x, G.y, 0, 0, N) % p;
    e -= mod_dot(p, ud, G.yp, 0, 0, N);
    e -= (long long)half * mod_dot(p, G.xp, G.yp, 0, 0, N) % p;
    e = ((e % p) + p) % p;
    return (int)((long long)a * e % p);
  };
  auto shift_node = [&](int node, const Gen& G, int sign) {
    int u = node / d, v = node % d;
    std::vector<int> ud = decode_digits(u, p, N), vd = decode_digits(v, p, N);
    for (int i = 0; i < N; ++i) {
      ud[i] = ((ud[i] + sign * G.xp[i]) % p + p) % p;
      vd[i] = ((vd[i] + sign * G.x[i]) % p + p) % p;
    }
    return encode_digits(ud, p) * d + encode_digits(vd, p);
  };

  std::vector<int> val(nodes, -1);
  std::vector<int> comp(nodes, -1);
  std::vector<char> alive;
  int ncomp = 0;
  for (int start = 0; start < nodes; ++start) {
    if (comp[start] >= 0) continue;
    int c = ncomp++;
    alive.push_back(1);
    comp[start] = c;
    val[start] = 0;
    std::vector<int> queue{start};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int node = queue[qi];
      int u = node / d, v = node % d;
      std::vector<int> ud = decode_digits(u, p, N), vd = decode_digits(v, p, N);
      for (const Gen& G : gens) {
        int fwd = shift_node(node, G, +1);
        int e = edge_exp(G, ud, vd);
        if (comp[fwd] < 0) {
          comp[fwd] = c;
          val[fwd] = (val[node] + e) % p;
          queue.push_back(fwd);
        } else if ((val[node] + e) % p != val[fwd]) {
          alive[c] = 0;
        }
        int bwd = shift_node(node, G, -1);
        if (comp[bwd] < 0) {
          int bu = bwd / d, bv = bwd % d;
          std::vector<int> bud = decode_digits(bu, p, N), bvd = decode_digits(bv, p, N);
          int be = edge_exp(G, bud, bvd);
          comp[bwd] = c;
          val[bwd] = ((val[node] - be) % p + p) % p;
          queue.push_back(bwd);
        }
      }
    }
  }

  int live = -1;
  for (int c = 0; c < ncomp; ++c) {
    if (!alive[c]) continue;
    if (live >= 0) throw std::runtime_error("weil_operator: intertwining space is not a line");
    live = c;
  }
  if (live < 0) throw std::runtime_error("weil_operator: intertwining system has no solution");

  int base = -1;
  for (int node = 0; node < nodes; ++node)
    if (comp[node] == live) {
      base = node;
      break;
    }
  FastM M;
  M.n = d;
  M.den = 1;
  M.e.assign((size_t)d * d, FC{});
  int unit = ctx.L / p;
  for (int node = 0; node < nodes; ++node) {
    if (comp[node] != live) continue;
    int e = ((val[node] - val[base]) % p + p) % p;
    M.e[node] = ctx.zpow[e * unit % ctx.L];
  }
  return M;
}

void verify_intertwines(const FastCtx& ctx, const SchrodingerModel& model, const PMat& g,
                        const FastM& M) {
  int p = model.p, N = model.N, a = model.a;
  int L = ctx.L;
  auto check = [&](const HeisElement& h) {
    HeisElement gh;
    gh.w = mat_apply(g, p, h.w);
    gh.t = h.t;
    MonoFast r = rho_fast(p, a, N, L, h);
    MonoFast r2 = rho_fast(p, a, N, L, gh);
    if (!fm_eq(fm_mul_mono_right(ctx, M, r), fm_mul_mono_left(ctx, r2, M)))
      throw std::runtime_error("weil_operator: intertwining verification failed");
  };
  if (N == 1) {
    for (const HeisElement& h : model.heisenberg_elements()) check(h);
    return;
  }
  for (int k = 0; k < 2 * N; ++k) {
    HeisElement h;
    h.w.assign(2 * N, 0);
    h.w[k] = 1;
    check(h);
  }
  std::mt19937 rng(20240817u);
  std::uniform_int_distribution<int> digit(0, p - 1);
  for (int trial = 0; trial < 1000; ++trial) {
    HeisElement h;
    h.w.resize(2 * N);
    for (int& x : h.w) x = digit(rng);
    h.t = digit(rng);
    check(h);
  }
}

}  // namespace

CycMatrix weil_operator(const SchrodingerModel& model, const PMat& g) {
  if (g.n != 2 * model.N)
    throw std::invalid_argument("weil_operator: matrix size does not match the model");
  if (!is_standard_symplectic(g, model.p))
    throw std::invalid_argument("weil_operator: matrix is not symplectic");
  FastCtx ctx = make_ctx(4 * model.p);
  FastM M = solve_transport(ctx, model, g);
  verify_intertwines(ctx, model, g, M);
  CycMatrix out(M.n);
  for (int i = 0; i < M.n; ++i)
    for (int j = 0; j < M.n; ++j) out.at(i, j) = fc_to_cyc(ctx, M.at(i, j), M.den);
  return out;
}

namespace {

PMat kron(const Fq& F, const PMat& A, const PMat& B) {
  PMat C(A.n * B.n);
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j)
      for (int k = 0; k < B.n; ++k)
        for (int l = 0; l < B.n; ++l)
          C.at(i * B.n + k, j * B.n + l) = F.mul(A.at(i, j), B.at(k, l));
  return C;
}

}  // namespace

EmbeddedPair embed_pair(const DualPairSpec& pair, int q) {
  bool osp = (pair.left.family == GroupFamily::Oeven || pair.left.family == GroupFamily::Oodd) &&
             pair.right.family == GroupFamily::Sp;
  if (pair.pair_type == PairType::I && osp) {
    DualPairSpec flipped{pair.right, pair.left, PairType::I};
    EmbeddedPair E = embed_pair(flipped, q);
    E.pair = pair;
    std::swap(E.left, E.right);
    std::swap(E.emb_left, E.emb_right);
    return E;
  }
  bool spo = pair.left.family == GroupFamily::Sp &&
             (pair.right.family == GroupFamily::Oeven || pair.right.family == GroupFamily::Oodd);
  if (pair.pair_type != PairType::I || !spo)
    throw std::invalid_argument("embed_pair: expected a symplectic-orthogonal pair");
  EmbeddedPair E;
  E.pair = pair;
  E.q = q;
  E.left = build_group(pair.left, q);
  E.right = build_group(pair.right, q);
  const Fq& F = E.left.field;
  int mp = E.right.dim;
  int dm = 2 * mp;
  E.N = mp;

  // form on V (x) V' in the raw product basis: [[0, B], [-B, 0]]
  PMat J(dm);
  for (int i = 0; i < mp; ++i)
    for (int j = 0; j < mp; ++j) {
      J.at(i, mp + j) = E.right.gram.at(i, j);
      J.at(mp + i, j) = F.neg(E.right.gram.at(i, j));
    }

  auto form = [&](const std::vector<int>& u, const std::vector<int>& v) {
    int s = 0;
    for (int i = 0; i < dm; ++i) {
      if (u[i] == 0) continue;
      for (int j = 0; j < dm; ++j)
        s = F.add(s, F.mul(F.mul(u[i], J.at(i, j)), v[j]));
    }
    return s;
  };

  // symplectic Gram-Schmidt on the raw basis
  std::vector<std::vector<int>> rest;
  for (int i = 0; i < dm; ++i) {
    std::vector<int> e(dm, 0);
    e[i] = 1;
    rest.push_back(std::move(e));
  }
  std::vector<std::vector<int>> vs, fs;
  while (!rest.empty()) {
    std::vector<int> v = rest.front();
    rest.erase(rest.begin());
    bool zero = std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
    if (zero) continue;
    int wi = -1, pairing = 0;
    for (size_t i = 0; i < rest.size(); ++i) {
      pairing = form(v, rest[i]);
      if (pairing != 0) {
        wi = (int)i;
        break;
      }
    }
    if (wi < 0) throw std::runtime_error("embed_pair: degenerate symplectic form");
    std::vector<int> f = rest[wi];
    rest.erase(rest.begin() + wi);
    int scale = F.inv(pairing);
    for (int& x : f) x = F.mul(x, scale);
    for (auto& u : rest) {
      int cf = form(u, f), cv = form(u, v);
      for (int i = 0; i < dm; ++i)
        u[i] = F.add(F.sub(u[i], F.mul(cf, v[i])), F.mul(cv, f[i]));
    }
    vs.push_back(std::move(v));
    fs.push_back(std::move(f));
  }
  if ((int)vs.size() != mp) throw std::runtime_error("embed_pair: wrong symplectic rank");
  for (int i = 0; i < mp; ++i)
    for (int j = 0; j < mp; ++j) {
      bool good = form(vs[i], vs[j]) == 0 && form(fs[i], fs[j]) == 0 &&
                  form(vs[i], fs[j]) == (i == j ? 1 : 0);
      if (!good) throw std::runtime_error("embed_pair: basis is not symplectic");
    }

  PMat U(dm);
  for (int c = 0; c < mp; ++c)
    for (int r = 0; r < dm; ++r) {
      U.at(r, c) = vs[c][r];
      U.at(r, mp + c) = fs[c][r];
    }
  PMat Uinv = pm_inverse(F, U);

  PMat I2 = PMat::identity(2), Imp = PMat::identity(mp);
  auto standardize = [&](const PMat& raw) {
    PMat s = pm_mul(F, pm_mul(F, Uinv, raw), U);
    if (!is_standard_symplectic(s, q))
      throw std::runtime_error("embed_pair: image left the standard symplectic group");
    return s;
  };
  for (const PMat& gmat : E.left.elems) E.emb_left.push_back(standardize(kron(F, gmat, Imp)));
  for (const PMat& hmat : E.right.elems) E.emb_right.push_back(standardize(kron(F, I2, hmat)));

  for (const PMat& a : E.emb_left)
    for (const PMat& b : E.emb_right)
      if (!(pm_mul(F, a, b) == pm_mul(F, b, a)))
        throw std::runtime_error("embed_pair: images fail to centralize each other");
  return E;
}

namespace {

bool fm_is_one(const FastCtx& ctx, const FastM& m, int i, int j) {
  return fc_to_cyc(ctx, m.at(i, j), m.den) == Cyc(Rat(1));
}

// greedy generating set, largest element orders first so the set stays small
std::vector<int> pick_generators(const FiniteGroupTable& T) {
  int n = (int)T.elems.size();
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (T.elem_order[a] != T.elem_order[b]) return T.elem_order[a] > T.elem_order[b];
    return a < b;
  });
  std::vector<int> gens;
  std::vector<char> in_span(n, 0);
  in_span[0] = 1;
  int span = 1;
  auto grow = [&](int g) {
    std::vector<int> queue;
    if (!in_span[g]) {
      in_span[g] = 1;
      ++span;
      queue.push_back(g);
    }
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      // close the span under multiplication by everything already present
      int x = queue[qi];
      for (int y = 0; y < n; ++y) {
        if (!in_span[y]) continue;
        for (int z : {T.mul[x][y], T.mul[y][x]}) {
          if (!in_span[z]) {
            in_span[z] = 1;
            ++span;
            queue.push_back(z);
          }
        }
      }
    }
  };
  for (int cand : idx) {
    if (span == n) break;
    if (cand == 0 || in_span[cand]) continue;
    gens.push_back(cand);
    grow(cand);
  }
  if (span != n) throw std::runtime_error("generator search failed");
  return gens;
}

std::vector<Cyc> lambda_candidates(const FastCtx& ctx, const FastM& C, int m, int p, int dim) {
  FastM P = fm_pow(ctx, C, m);
  for (int i = 0; i < P.n; ++i)
    for (int j = 0; j < P.n; ++j) {
      if (i == j) {
        if (!(P.at(i, j) == P.at(0, 0)))
          throw std::runtime_error("normalization: power of operator is not scalar");
      } else if (!fc_zero(P.at(i, j))) {
        throw std::runtime_error("normalization: power of operator is not scalar");
      }
    }
  Cyc sigma = fc_to_cyc(ctx, P.at(0, 0), P.den);
  if (sigma.is_zero()) throw std::runtime_error("normalization: singular operator");

  auto admits = [&](const Cyc& lam) { return lam.pow(m) * sigma == Cyc(Rat(1)); };
  std::vector<Cyc> out;
  auto push = [&](const Cyc& lam) {
    if (!admits(lam)) return;
    for (const Cyc& x : out)
      if (x == lam) return;
    out.push_back(lam);
  };

  // scalars of the expected shape: root of unity times a power of sqrt(p)
  Cyc sq = Cyc::sqrt_prime(p);
  for (int u = 0; u < ctx.L; ++u) {
    Cyc zu = Cyc::zeta(ctx.L, u);
    for (int k = -2; k <= 2; ++k) push(zu * sq.pow(k));
  }

  // fall back on the trace: tr(lam*C) lies in Z[zeta_m] with coefficients
  // bounded by the dimension
  if (out.empty()) {
    Cyc t0;
    for (int i = 0; i < C.n; ++i) t0 += fc_to_cyc(ctx, C.at(i, i), C.den);
    bool basis2 = (m == 3 || m == 4 || m == 6) && ctx.L % m == 0;
    bool basis1 = (m == 2) || (m == 1);
    if (!t0.is_zero() && (basis1 || basis2)) {
      Cyc t0inv = t0.inverse();
      for (int al = -dim; al <= dim; ++al) {
        int brange = basis2 ? dim : 0;
        for (int be = -brange; be <= brange; ++be) {
          if (al == 0 && be == 0) continue;
          Cyc t{Rat(al)};
          if (be != 0) t += Cyc(Rat(be)) * Cyc::zeta(m);
          push(t * t0inv);
        }
      }
    }
  }
  if (out.empty()) throw std::runtime_error("normalization: no scalar candidates survive");
  std::sort(out.begin(), out.end(), Cyc::lex_less);
  return out;
}

// Rescale the solved operators into a genuine representation of T.  The
// scalar on each generator is searched among the candidates; a full pass
// over all (element, generator) products proves multiplicativity.  pins fix
// operators on selected elements, which is how the two factors are made to
// agree on shared central elements.  Valid systems differ by a linear
// character; the survivors are ranked canonically:
//   - a system acting with unit value at the origin on every lower
//     triangular transvection wins (in the position model those act as
//     pure quadratic-phase multiplications), and
//   - systems keeping more generators at scalar 1 win (orthogonal member,
//     where the solved operators are already geometric permutations).
std::vector<FastM> normalize_factor(const FastCtx& ctx, const FiniteGroupTable& T,
                                    const std::vector<FastM>& raw,
                                    const std::map<int, FastM>& pins) {
  int n = (int)T.elems.size();
  if (n == 1) return {fm_identity(raw.empty() ? 1 : raw[0].n)};
  std::vector<int> gens = pick_generators(T);
  int dim = raw[0].n;

  std::vector<int> transvections;
  if (T.dim == 2) {
    for (int i = 0; i < n; ++i) {
      const PMat& m = T.elems[i];
      if (m.at(0, 0) == 1 && m.at(1, 1) == 1 && m.at(0, 1) == 0 && m.at(1, 0) != 0)
        transvections.push_back(i);
    }
  }

  std::vector<std::vector<Cyc>> cands;
  long long combos = 1;
  for (int s : gens) {
    cands.push_back(lambda_candidates(ctx, raw[s], T.elem_order[s], T.field.p, dim));
    combos *= (long long)cands.back().size();
    if (combos > 512) throw std::runtime_error("normalization: candidate space blew up");
  }

  std::vector<FastM> best;
  long long best_score = -1;
  std::vector<size_t> pickv(gens.size(), 0);
  for (long long combo = 0; combo < combos; ++combo) {
    long long c = combo;
    for (size_t i = 0; i < gens.size(); ++i) {
      pickv[i] = c % cands[i].size();
      c /= cands[i].size();
    }
    std::vector<FastM> D;
    for (size_t i = 0; i < gens.size(); ++i)
      D.push_back(fm_scale_cyc(ctx, raw[gens[i]], cands[i][pickv[i]]));

    std::vector<FastM> table(n);
    std::vector<char> have(n, 0);
    table[0] = fm_identity(dim);
    have[0] = 1;
    std::vector<int> order{0};
    bool ok = true;
    for (size_t oi = 0; ok && oi < order.size(); ++oi) {
      int g = order[oi];
      for (size_t si = 0; ok && si < gens.size(); ++si) {
        int t = T.mul[g][gens[si]];
        FastM prod = fm_mul(ctx, table[g], D[si]);
        if (!have[t]) {
          table[t] = std::move(prod);
          have[t] = 1;
          order.push_back(t);
        } else if (!fm_eq(table[t], prod)) {
          ok = false;
        }
      }
    }
    if (!ok || (int)order.size() != n) continue;
    for (const auto& [idx, want] : pins)
      if (!fm_eq(table[idx], want)) {
        ok = false;
        break;
      }
    if (!ok) continue;

    bool unit_transvections = true;
    for (int ti : transvections)
      if (!fm_is_one(ctx, table[ti], 0, 0)) unit_transvections = false;
    long long ones = 0;
    Cyc one(Rat(1));
    for (size_t i = 0; i < gens.size(); ++i)
      if (cands[i][pickv[i]] == one) ++ones;
    long long score = (unit_transvections ? 1000000 : 0) + ones * 1000 + (combos - combo);
    if (score > best_score) {
      best_score = score;
      best = table;
    }
  }
  if (best_score < 0) throw std::runtime_error("normalization: no consistent scalar system found");
  return best;
}

}  // namespace

PairModel build_pair_model(const DualPairSpec& pair, int q, int a) {
  if (q != 3 && q != 5) throw std::invalid_argument("build_pair_model: q must be 3 or 5");
  if (a < 1 || a >= q) throw std::invalid_argument("build_pair_model: a must lie in [1, q)");
  PairModel pm;
  pm.pair = pair;
  pm.q = q;
  pm.a = a;

  if (pair.pair_type == PairType::II) {
    if (pair.left.family != GroupFamily::GL || pair.right.family != GroupFamily::GL)
      throw std::invalid_argument("build_pair_model: type II means a GL pair here");
    int n = pair.left.n, np = pair.right.n;
    if (n * np > 2)
      throw std::invalid_argument("build_pair_model: GL pair exceeds the N <= 2 guard");
    pm.left = build_group(pair.left, q);
    pm.right = build_group(pair.right, q);
    pm.model = heisenberg_rep(q, n * np, a);
    int d = ipow(q, n * np);
    auto X_of = [&](int idx) {
      PMat X(std::max(n, np));  // stored rectangular inside a square buffer
      std::vector<int> dg = decode_digits(idx, q, n * np);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < np; ++j) X.at(i, j) = dg[i * np + j];
      return X;
    };
    auto idx_of = [&](const PMat& X) {
      std::vector<int> dg(n * np);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < np; ++j) dg[i * np + j] = X.at(i, j);
      return encode_digits(dg, q);
    };
    const Fq& F = pm.left.field;
    auto rect_mul = [&](const PMat& A, int ra, int ca, const PMat& B, int cb) {
      PMat C(std::max(n, np));
      for (int i = 0; i < ra; ++i)
        for (int j = 0; j < cb; ++j) {
          int s = 0;
          for (int k = 0; k < ca; ++k) s = F.add(s, F.mul(A.at(i, k), B.at(k, j)));
          C.at(i, j) = s;
        }
      return C;
    };
    auto fast = std::make_shared<PairModelFast>();
    fast->ctx = make_ctx(1);
    for (int gi = 0; gi < (int)pm.left.elems.size(); ++gi) {
      PMat ginv = pm.left.elems[pm.left.inv[gi]];
      FastM op;
      op.n = d;
      op.den = 1;
      op.e.assign((size_t)d * d, FC{});
      for (int x = 0; x < d; ++x)
        op.at(x, idx_of(rect_mul(ginv, n, n, X_of(x), np)))[0] = 1;
      fast->left.push_back(std::move(op));
    }
    for (int hi = 0; hi < (int)pm.right.elems.size(); ++hi) {
      const PMat& h = pm.right.elems[hi];
      FastM op;
      op.n = d;
      op.den = 1;
      op.e.assign((size_t)d * d, FC{});
      for (int x = 0; x < d; ++x)
        op.at(x, idx_of(rect_mul(X_of(x), n, np, h, np)))[0] = 1;
      fast->right.push_back(std::move(op));
    }
    for (const FastM& m : fast->left) {
      CycMatrix cm(d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) cm.at(i, j) = fc_to_cyc(fast->ctx, m.at(i, j), m.den);
      pm.ops_left.push_back(std::move(cm));
    }
    for (const FastM& m : fast->right) {
      CycMatrix cm(d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) cm.at(i, j) = fc_to_cyc(fast->ctx, m.at(i, j), m.den);
      pm.ops_right.push_back(std::move(cm));
    }
    pm.fast = fast;
    return pm;
  }

  EmbeddedPair E = embed_pair(pair, q);
  if (E.N > 2) throw std::invalid_argument("build_pair_model: pair exceeds the N <= 2 guard");
  pm.model = heisenberg_rep(q, E.N, a);
  pm.left = std::move(E.left);
  pm.right = std::move(E.right);
  pm.emb_left = std::move(E.emb_left);
  pm.emb_right = std::move(E.emb_right);

  auto fast = std::make_shared<PairModelFast>();
  fast->ctx = make_ctx(4 * q);
  std::vector<FastM> raw_left, raw_right;
  for (const PMat& g : pm.emb_left) {
    FastM M = solve_transport(fast->ctx, pm.model, g);
    raw_left.push_back(std::move(M));
  }
  for (const PMat& g : pm.emb_right) {
    FastM M = solve_transport(fast->ctx, pm.model, g);
    raw_right.push_back(std::move(M));
  }

  // the symplectic member is normalized freely; the other member is then
  // pinned to agree with it on shared central elements
  bool right_leads =
      pair.right.family == GroupFamily::Sp && pair.left.family != GroupFamily::Sp;
  const auto& lead_emb = right_leads ? pm.emb_right : pm.emb_left;
  const auto& tail_emb = right_leads ? pm.emb_left : pm.emb_right;
  std::vector<FastM> lead = normalize_factor(
      fast->ctx, right_leads ? pm.right : pm.left, right_leads ? raw_right : raw_left, {});
  std::map<PMat, int> lead_emb_index;
  for (int i = 0; i < (int)lead_emb.size(); ++i) lead_emb_index[lead_emb[i]] = i;
  std::map<int, FastM> pins;
  for (int r = 0; r < (int)tail_emb.size(); ++r) {
    auto it = lead_emb_index.find(tail_emb[r]);
    if (it != lead_emb_index.end()) pins[r] = lead[it->second];
  }
  std::vector<FastM> tail = normalize_factor(
      fast->ctx, right_leads ? pm.left : pm.right, right_leads ? raw_left : raw_right, pins);
  fast->left = right_leads ? std::move(tail) : std::move(lead);
  fast->right = right_leads ? std::move(lead) : std::move(tail);

  int d = pm.model.dim();
  auto to_cyc = [&](const FastM& m) {
    CycMatrix cm(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) cm.at(i, j) = fc_to_cyc(fast->ctx, m.at(i, j), m.den);
    return cm;
  };
  for (const FastM& m : fast->left) pm.ops_left.push_back(to_cyc(m));
  for (const FastM& m : fast->right) pm.ops_right.push_back(to_cyc(m));
  pm.fast = fast;
  return pm;
}

void apply_pair_twist(PairModel& pm) {
  if (pm.twisted) return;
  if (pm.pair.pair_type == PairType::II) {
    pm.twisted = true;  // GL pairs carry no determinant twist
    return;
  }
  bool left_is_sp = pm.pair.left.family == GroupFamily::Sp;
  if (!left_is_sp && pm.pair.right.family != GroupFamily::Sp)
    throw std::logic_error("apply_pair_twist: no symplectic member");
  int dimV = 2 * (left_is_sp ? pm.pair.left.n : pm.pair.right.n);
  if (dimV % 2 != 0) throw std::logic_error("apply_pair_twist: odd half-power");
  int power = dimV / 2;
  FiniteGroupTable& O = left_is_sp ? pm.right : pm.left;
  const Fq& F = O.field;
  auto fast = std::make_shared<PairModelFast>(*pm.fast);
  std::vector<FastM>& fops = left_is_sp ? fast->right : fast->left;
  std::vector<CycMatrix>& cops = left_is_sp ? pm.ops_right : pm.ops_left;
  for (int r = 0; r < (int)O.elems.size(); ++r) {
    int x = F.xi(pm_det(F, O.elems[r]));
    int c = (power % 2 == 0) ? 1 : x;
    if (c == -1) {
      for (auto& entry : fops[r].e)
        for (long long& v : entry) v = -v;
      cops[r] = cops[r].scaled(Cyc(Rat(-1)));
    }
  }
  pm.fast = fast;
  pm.twisted = true;
}

Cyc joint_trace(const PairModel& pm, int li, int ri) {
  const FastCtx& ctx = pm.fast->ctx;
  const FastM& A = pm.fast->left[li];
  const FastM& B = pm.fast->right[ri];
  FC acc{};
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j) {
      const FC& a = A.at(i, j);
      if (!fc_zero(a)) fc_addmul(ctx, acc, a, B.at(j, i));
    }
  return fc_to_cyc(ctx, acc, A.den * B.den);
}

RestrictionCheck verify_restriction(const PairModel& pm) {
  const FastCtx& ctx = pm.fast->ctx;
  RestrictionCheck rc;
  rc.ok = true;
  auto side = [&](const FiniteGroupTable& T, const std::vector<FastM>& ops, long long& count) {
    int n = (int)T.elems.size();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (!fm_eq(ops[T.mul[i][j]], fm_mul(ctx, ops[i], ops[j]))) rc.ok = false;
        ++count;
      }
  };
  side(pm.left, pm.fast->left, rc.left_products);
  side(pm.right, pm.fast->right, rc.right_products);
  for (const FastM& a : pm.fast->left)
    for (const FastM& b : pm.fast->right) {
      if (!fm_eq(fm_mul(ctx, a, b), fm_mul(ctx, b, a))) rc.ok = false;
      ++rc.commutations;
    }
  return rc;
}

}  // namespace fftheta
