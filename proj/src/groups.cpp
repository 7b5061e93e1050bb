#include "fftheta/groups.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace fftheta {

namespace {

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

Fq Fq::make(int p, int deg) {
  if (!is_prime(p) || p == 2) throw std::invalid_argument("Fq: odd prime required");
  if (deg != 1 && deg != 2) throw std::invalid_argument("Fq: degree 1 or 2 only");
  Fq F;
  F.p = p;
  F.deg = deg;
  F.q = deg == 1 ? p : p * p;
  if (deg == 2) {
    for (int d = 2; d < p; ++d) {
      bool sq = false;
      for (int x = 1; x < p && !sq; ++x) sq = (x * x % p == d);
      if (!sq) {
        F.delta = d;
        break;
      }
    }
  }
  return F;
}

int Fq::add(int x, int y) const {
  int a = (x % p + y % p) % p;
  int b = (x / p + y / p) % p;
  return a + b * p;
}

int Fq::neg(int x) const {
  int a = (p - x % p) % p;
  int b = (p - x / p) % p;
  return a + b * p;
}

int Fq::sub(int x, int y) const { return add(x, neg(y)); }

int Fq::mul(int x, int y) const {
  int a = x % p, b = x / p, c = y % p, d = y / p;
  int u = (a * c + b * d % p * delta) % p;
  int v = (a * d + b * c) % p;
  return u + v * p;
}

int Fq::pow(int x, long long e) const {
  long long m = (long long)q - 1;
  if (e < 0) e = e % m + m;
  int acc = 1, base = x;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

int Fq::tau(int x) const {
  if (deg == 1) return x;
  int a = x % p, b = x / p;
  return a + (p - b) % p * p;
}

int Fq::norm(int x) const { return mul(x, tau(x)); }

int Fq::inv(int x) const {
  if (x == 0) throw std::domain_error("Fq: inverse of zero");
  return pow(x, q - 2);
}

int Fq::xi(int x) const {
  if (x == 0) return 0;
  return pow(x, (q - 1) / 2) == 1 ? 1 : -1;
}

int Fq::from_int(long long n) const {
  long long r = n % p;
  if (r < 0) r += p;
  return (int)r;
}

PMat PMat::identity(int n) {
  PMat m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

PMat pm_mul(const Fq& F, const PMat& A, const PMat& B) {
  PMat C(A.n);
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j) {
      int s = 0;
      for (int k = 0; k < A.n; ++k) s = F.add(s, F.mul(A.at(i, k), B.at(k, j)));
      C.at(i, j) = s;
    }
  return C;
}

PMat pm_transpose(const PMat& A) {
  PMat C(A.n);
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j) C.at(i, j) = A.at(j, i);
  return C;
}

int pm_det(const Fq& F, const PMat& A) {
  PMat M = A;
  int n = M.n, det = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (M.at(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(M.at(piv, j), M.at(c, j));
      det = F.neg(det);
    }
    det = F.mul(det, M.at(c, c));
    int ci = F.inv(M.at(c, c));
    for (int r = c + 1; r < n; ++r) {
      int f = F.mul(M.at(r, c), ci);
      if (f == 0) continue;
      for (int j = c; j < n; ++j) M.at(r, j) = F.sub(M.at(r, j), F.mul(f, M.at(c, j)));
    }
  }
  return det;
}

PMat pm_inverse(const Fq& F, const PMat& A) {
  int n = A.n;
  PMat M = A, R = PMat::identity(n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (M.at(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::domain_error("pm_inverse: singular matrix");
    if (piv != c)
      for (int j = 0; j < n; ++j) {
        std::swap(M.at(piv, j), M.at(c, j));
        std::swap(R.at(piv, j), R.at(c, j));
      }
    int ci = F.inv(M.at(c, c));
    for (int j = 0; j < n; ++j) {
      M.at(c, j) = F.mul(M.at(c, j), ci);
      R.at(c, j) = F.mul(R.at(c, j), ci);
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || M.at(r, c) == 0) continue;
      int f = M.at(r, c);
      for (int j = 0; j < n; ++j) {
        M.at(r, j) = F.sub(M.at(r, j), F.mul(f, M.at(c, j)));
        R.at(r, j) = F.sub(R.at(r, j), F.mul(f, R.at(c, j)));
      }
    }
  }
  return R;
}

int FiniteGroupTable::exponent() const {
  long long e = 1;
  for (int o : elem_order) e = std::lcm(e, (long long)o);
  return (int)e;
}

int FiniteGroupTable::index_of(const PMat& m) const {
  auto it = index.find(m);
  return it == index.end() ? -1 : it->second;
}

namespace {

void finish_table(FiniteGroupTable& T) {
  if (T.elems.empty()) throw std::runtime_error("group enumeration came up empty");
  if ((long long)T.elems.size() > 100000)
    throw std::invalid_argument("build_group: group order exceeds 1e5");
  std::sort(T.elems.begin(), T.elems.end());
  PMat id = PMat::identity(T.dim);
  auto pos = std::find(T.elems.begin(), T.elems.end(), id);
  if (pos == T.elems.end()) throw std::runtime_error("identity missing from group");
  std::swap(*T.elems.begin(), *pos);
  int n = (int)T.elems.size();
  for (int i = 0; i < n; ++i) T.index[T.elems[i]] = i;
  T.mul.assign(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int k = T.index_of(pm_mul(T.field, T.elems[i], T.elems[j]));
      if (k < 0) throw std::runtime_error("group not closed under multiplication");
      T.mul[i][j] = k;
    }
  T.inv.assign(n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (T.mul[i][j] == 0) T.inv[i] = j;
  T.elem_order.assign(n, 1);
  for (int i = 0; i < n; ++i) {
    int o = 1, x = i;
    while (x != 0) {
      x = T.mul[x][i];
      ++o;
    }
    T.elem_order[i] = o;
  }
  T.cls_of.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    if (T.cls_of[x] >= 0) continue;
    int c = (int)T.classes.size();
    T.classes.push_back({});
    T.reps.push_back(x);
    for (int g = 0; g < n; ++g) {
      int y = T.mul[T.mul[g][x]][T.inv[g]];
      if (T.cls_of[y] < 0) {
        T.cls_of[y] = c;
        T.classes[c].push_back(y);
      }
    }
    std::sort(T.classes[c].begin(), T.classes[c].end());
  }
}

int least_nonsquare(int p) {
  for (int d = 2; d < p; ++d) {
    bool sq = false;
    for (int x = 1; x < p && !sq; ++x) sq = (x * x % p == d);
    if (!sq) return d;
  }
  throw std::runtime_error("no nonsquare found");
}

bool preserves_form(const Fq& F, const PMat& g, const PMat& gram) {
  return pm_mul(F, pm_mul(F, pm_transpose(g), gram), g) == gram;
}

void enumerate_dim2(const Fq& F, FiniteGroupTable& T, auto&& keep) {
  int q = F.q;
  PMat g(2);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      for (int c = 0; c < q; ++c)
        for (int d = 0; d < q; ++d) {
          g.at(0, 0) = a;
          g.at(0, 1) = b;
          g.at(1, 0) = c;
          g.at(1, 1) = d;
          if (keep(g)) T.elems.push_back(g);
        }
}

}  // namespace

FiniteGroupTable build_group(const GroupKind& kind, int q) {
  if (q % 2 == 0 || !is_prime(q) || q > 31)
    throw std::invalid_argument("build_group: q must be a small odd prime");
  FiniteGroupTable T;
  T.kind = kind;
  T.q = q;
  T.field = Fq::make(q, 1);
  const Fq& F = T.field;

  switch (kind.family) {
    case GroupFamily::Sp: {
      if (kind.n != 1) throw std::invalid_argument("build_group: Sp supported at rank 1 only");
      T.dim = 2;
      enumerate_dim2(F, T, [&](const PMat& g) { return pm_det(F, g) == 1; });
      break;
    }
    case GroupFamily::Oeven: {
      if (kind.n != 1) throw std::invalid_argument("build_group: O_even supported at rank 1 only");
      if (kind.eps != 1 && kind.eps != -1)
        throw std::invalid_argument("build_group: O_even needs eps = +1 or -1");
      T.dim = 2;
      T.gram = PMat(2);
      if (kind.eps == 1) {
        T.gram.at(0, 1) = 1;
        T.gram.at(1, 0) = 1;
      } else {
        int delta = least_nonsquare(q);
        T.gram.at(0, 0) = 2 % q;
        T.gram.at(1, 1) = F.from_int(-2LL * delta);
      }
      enumerate_dim2(F, T, [&](const PMat& g) { return preserves_form(F, g, T.gram); });
      break;
    }
    case GroupFamily::Oodd: {
      if (kind.n != 0) throw std::invalid_argument("build_group: O_odd supported at dimension 1 only");
      T.dim = 1;
      T.gram = PMat(1);
      T.gram.at(0, 0) = 2 % q;
      PMat e(1);
      e.at(0, 0) = 1;
      T.elems.push_back(e);
      e.at(0, 0) = q - 1;
      T.elems.push_back(e);
      break;
    }
    case GroupFamily::GL: {
      if (kind.n == 1) {
        T.dim = 1;
        PMat e(1);
        for (int x = 1; x < q; ++x) {
          e.at(0, 0) = x;
          T.elems.push_back(e);
        }
      } else if (kind.n == 2) {
        T.dim = 2;
        enumerate_dim2(F, T, [&](const PMat& g) { return pm_det(F, g) != 0; });
      } else {
        throw std::invalid_argument("build_group: GL supported at rank <= 2 only");
      }
      break;
    }
    default:
      throw std::invalid_argument("build_group: unsupported family at desk scale");
  }
  finish_table(T);
  return T;
}

namespace {

// arithmetic mod a large prime that is 1 mod the group exponent
struct ModP {
  long long ell;
  long long add(long long x, long long y) const { return (x + y) % ell; }
  long long sub(long long x, long long y) const { return ((x - y) % ell + ell) % ell; }
  long long mul(long long x, long long y) const { return x * y % ell; }
  long long pow(long long x, long long e) const {
    long long acc = 1 % ell, b = x % ell;
    while (e > 0) {
      if (e & 1) acc = mul(acc, b);
      b = mul(b, b);
      e >>= 1;
    }
    return acc;
  }
  long long inv(long long x) const { return pow(((x % ell) + ell) % ell, ell - 2); }
};

using Vec = std::vector<long long>;
using Basis = std::vector<Vec>;

// row-reduce in place, return pivot columns
std::vector<int> rref(const ModP& M, Basis& B) {
  std::vector<int> piv;
  size_t row = 0;
  size_t k = B.empty() ? 0 : B[0].size();
  for (size_t col = 0; col < k && row < B.size(); ++col) {
    size_t sel = row;
    while (sel < B.size() && B[sel][col] == 0) ++sel;
    if (sel == B.size()) continue;
    std::swap(B[row], B[sel]);
    long long iv = M.inv(B[row][col]);
    for (auto& x : B[row]) x = M.mul(x, iv);
    for (size_t r = 0; r < B.size(); ++r) {
      if (r == row || B[r][col] == 0) continue;
      long long f = B[r][col];
      for (size_t j = 0; j < k; ++j) B[r][j] = M.sub(B[r][j], M.mul(f, B[row][j]));
    }
    piv.push_back((int)col);
    ++row;
  }
  B.resize(row);
  return piv;
}

Basis nullspace(const ModP& M, Basis A) {
  size_t r0 = A.size();
  std::vector<int> piv = rref(M, A);
  std::vector<char> is_piv(r0, 0);
  for (int c : piv) is_piv[c] = 1;
  Basis out;
  for (size_t fc = 0; fc < r0; ++fc) {
    if (is_piv[fc]) continue;
    Vec v(r0, 0);
    v[fc] = 1;
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = M.sub(0, A[r][fc]);
    out.push_back(std::move(v));
  }
  return out;
}

long long det_mod(const ModP& M, Basis A) {
  long long det = 1;
  size_t n = A.size();
  for (size_t c = 0; c < n; ++c) {
    size_t sel = c;
    while (sel < n && A[sel][c] == 0) ++sel;
    if (sel == n) return 0;
    if (sel != c) {
      std::swap(A[sel], A[c]);
      det = M.sub(0, det);
    }
    det = M.mul(det, A[c][c]);
    long long iv = M.inv(A[c][c]);
    for (size_t r = c + 1; r < n; ++r) {
      long long f = M.mul(A[r][c], iv);
      if (f == 0) continue;
      for (size_t j = c; j < n; ++j) A[r][j] = M.sub(A[r][j], M.mul(f, A[c][j]));
    }
  }
  return det;
}

long long primitive_root(long long ell) {
  std::vector<long long> fac;
  long long m = ell - 1;
  for (long long d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      fac.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) fac.push_back(m);
  ModP M{ell};
  for (long long g = 2; g < ell; ++g) {
    bool ok = true;
    for (long long f : fac)
      if (M.pow(g, (ell - 1) / f) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw std::runtime_error("no primitive root found");
}

}  // namespace

CharTable character_table(const FiniteGroupTable& G) {
  if (G.order() > 10000)
    throw std::invalid_argument("character_table: group order exceeds 1e4");
  int k = (int)G.classes.size();
  int n = (int)G.elems.size();
  long long e = G.exponent();

  long long ell = 0;
  for (long long cand = e + 1;; cand += e) {
    if (cand > 2LL * n && is_prime(cand)) {
      ell = cand;
      break;
    }
  }
  ModP M{ell};
  long long z = M.pow(primitive_root(ell), (ell - 1) / e);

  // class algebra structure constants c[i][j][t]
  std::vector<std::vector<Vec>> c(k, std::vector<Vec>(k, Vec(k, 0)));
  for (int t = 0; t < k; ++t) {
    int gt = G.reps[t];
    for (int x = 0; x < n; ++x) {
      int i = G.cls_of[x];
      int y = G.mul[G.inv[x]][gt];
      c[i][G.cls_of[y]][t] += 1;
    }
  }

  // split the common eigenvectors of the class matrices
  std::vector<Basis> spaces;
  {
    Basis full(k, Vec(k, 0));
    for (int i = 0; i < k; ++i) full[i][i] = 1;
    spaces.push_back(std::move(full));
  }
  for (int i = 1; i < k; ++i) {
    bool done = true;
    for (const auto& S : spaces)
      if (S.size() > 1) done = false;
    if (done) break;
    std::vector<Basis> next;
    for (auto& V : spaces) {
      size_t r = V.size();
      if (r == 1) {
        next.push_back(std::move(V));
        continue;
      }
      std::vector<int> piv = rref(M, V);
      Basis W(r, Vec(k, 0));
      for (size_t s = 0; s < r; ++s)
        for (int j = 0; j < k; ++j) {
          long long acc = 0;
          for (int t = 0; t < k; ++t) acc = M.add(acc, M.mul(c[i][j][t] % ell, V[s][t]));
          W[s][j] = acc;
        }
      Basis B(r, Vec(r, 0));
      for (size_t s = 0; s < r; ++s)
        for (size_t t = 0; t < r; ++t) B[s][t] = W[s][piv[t]];
      for (size_t s = 0; s < r; ++s)
        for (int j = 0; j < k; ++j) {
          long long acc = 0;
          for (size_t t = 0; t < r; ++t) acc = M.add(acc, M.mul(B[s][t], V[t][j]));
          if (acc != W[s][j]) throw std::runtime_error("class matrix left the subspace");
        }
      std::vector<long long> roots;
      for (long long lam = 0; lam < ell; ++lam) {
        Basis A = B;
        for (size_t s = 0; s < r; ++s) A[s][s] = M.sub(A[s][s], lam);
        if (det_mod(M, A) == 0) roots.push_back(lam);
        if ((long long)roots.size() == (long long)r) break;
      }
      size_t total = 0;
      for (long long lam : roots) {
        // coefficient vectors transform by the transpose of B
        Basis A(r, Vec(r, 0));
        for (size_t s = 0; s < r; ++s)
          for (size_t t = 0; t < r; ++t) A[s][t] = B[t][s];
        for (size_t s = 0; s < r; ++s) A[s][s] = M.sub(A[s][s], lam);
        Basis ns = nullspace(M, std::move(A));
        if (ns.empty()) continue;
        Basis lifted(ns.size(), Vec(k, 0));
        for (size_t u = 0; u < ns.size(); ++u)
          for (int j = 0; j < k; ++j) {
            long long acc = 0;
            for (size_t s = 0; s < r; ++s) acc = M.add(acc, M.mul(ns[u][s], V[s][j]));
            lifted[u][j] = acc;
          }
        rref(M, lifted);
        total += lifted.size();
        next.push_back(std::move(lifted));
      }
      if (total != r) throw std::runtime_error("class matrix failed to diagonalize");
    }
    spaces = std::move(next);
  }
  for (const auto& S : spaces)
    if (S.size() != 1) throw std::runtime_error("characters failed to separate");

  std::vector<int> kstar(k);
  for (int t = 0; t < k; ++t) kstar[t] = G.cls_of[G.inv[G.reps[t]]];

  struct Row {
    long long deg;
    std::vector<Cyc> vals;
  };
  std::vector<Row> rows;
  for (const auto& S : spaces) {
    Vec v = S[0];
    if (v[0] == 0) throw std::runtime_error("eigenvector vanishes on the identity class");
    long long s = M.inv(v[0]);
    for (auto& x : v) x = M.mul(x, s);
    long long denom = 0;
    for (int t = 0; t < k; ++t)
      denom = M.add(denom, M.mul(M.mul(v[t], v[kstar[t]]), M.inv(G.classes[t].size() % ell)));
    long long d2 = M.mul(n % ell, M.inv(denom));
    long long d = -1;
    for (long long cand = 1; cand * cand <= n; ++cand)
      if (cand * cand % ell == d2) {
        d = cand;
        break;
      }
    if (d < 0) throw std::runtime_error("degree recovery failed");
    Vec chi(k);
    for (int t = 0; t < k; ++t)
      chi[t] = M.mul(M.mul(d % ell, v[t]), M.inv(G.classes[t].size() % ell));

    Row row;
    row.deg = d;
    row.vals.resize(k);
    for (int t = 0; t < k; ++t) {
      int m = G.elem_order[G.reps[t]];
      long long zm = M.pow(z, e / m);
      long long minv = M.inv(m);
      Cyc val;
      int x = G.reps[t];
      std::vector<int> pow_cls(m);
      int cur = 0;  // identity
      for (int vv = 0; vv < m; ++vv) {
        pow_cls[vv] = G.cls_of[cur];
        cur = G.mul[cur][x];
      }
      for (int u = 0; u < m; ++u) {
        long long s2 = 0;
        for (int vv = 0; vv < m; ++vv) {
          long long w = M.pow(zm, (m - (long long)u * vv % m) % m);
          s2 = M.add(s2, M.mul(chi[pow_cls[vv]], w));
        }
        long long nu = M.mul(minv, s2);
        if (nu > d) throw std::runtime_error("eigenvalue multiplicity lift out of range");
        if (nu != 0) val += Cyc(Rat(nu)) * Cyc::zeta(m, u);
      }
      row.vals[t] = val;
    }
    rows.push_back(std::move(row));
  }

  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.deg != b.deg) return a.deg < b.deg;
    for (size_t i = 0; i < a.vals.size(); ++i) {
      if (a.vals[i] != b.vals[i]) return Cyc::lex_less(a.vals[i], b.vals[i]);
    }
    return false;
  });

  long long degsum = 0;
  for (const auto& r : rows) degsum += r.deg * r.deg;
  if (degsum != n) throw std::runtime_error("degree squares do not sum to the group order");
  for (size_t r = 0; r < rows.size(); ++r) {
    if (!(rows[r].vals[0] == Cyc(Rat(rows[r].deg))))
      throw std::runtime_error("character value at the identity disagrees with the degree");
    for (size_t s = r; s < rows.size(); ++s) {
      Cyc acc;
      for (int t = 0; t < k; ++t)
        acc += Cyc(Rat((long long)G.classes[t].size())) * rows[r].vals[t] * rows[s].vals[t].conj();
      Cyc want(Rat(r == s ? n : 0));
      if (!(acc == want)) throw std::runtime_error("orthogonality check failed");
    }
  }

  CharTable T;
  T.classes = k;
  for (auto& r : rows) {
    T.degrees.push_back(r.deg);
    T.rows.push_back(std::move(r.vals));
  }
  return T;
}

}  // namespace fftheta
