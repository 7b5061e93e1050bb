#pragma once

#include <memory>
#include <vector>

#include "fftheta/cyclotomic.hpp"
#include "fftheta/groups.hpp"
#include "fftheta/theta.hpp"

namespace fftheta {

// element (w, t) of the Heisenberg group over F_p^{2N}; w holds the (x | y)
// coordinates and the product is (w,t)(w',t') = (w+w', t+t'+<w,w'>/2)
struct HeisElement {
  std::vector<int> w;
  int t = 0;
  bool operator==(const HeisElement&) const = default;
};

int symplectic_form(int p, const std::vector<int>& w, const std::vector<int>& wp);
HeisElement heis_mul(int p, const HeisElement& g, const HeisElement& h);
HeisElement heis_inverse(int p, const HeisElement& g);

// basis permutation with root-of-unity phases: row u reads column src[u]
struct MonomialOp {
  int dim = 0;
  std::vector<int> src;
  std::vector<Cyc> phase;
};

// Schrodinger realization on functions F_p^N -> C:
//   (rho(w,t) f)(u) = psi_a(t + u.y + x.y/2) f(u + x)
struct SchrodingerModel {
  int p = 3;
  int N = 1;
  int a = 1;
  int dim() const;
  int conductor() const { return 4 * p; }
  MonomialOp rho(const HeisElement& h) const;
  Cyc rho_trace(const HeisElement& h) const;
  std::vector<HeisElement> heisenberg_elements() const;
};

SchrodingerModel heisenberg_rep(int p, int N, int a);

struct CycMatrix {
  int n = 0;
  std::vector<Cyc> a;
  CycMatrix() = default;
  explicit CycMatrix(int n_) : n(n_), a(n_ * n_) {}
  static CycMatrix identity(int n);
  Cyc& at(int i, int j) { return a[i * n + j]; }
  const Cyc& at(int i, int j) const { return a[i * n + j]; }
  CycMatrix mul(const CycMatrix& o) const;
  CycMatrix scaled(const Cyc& s) const;
  Cyc trace() const;
  bool operator==(const CycMatrix& o) const;
};

bool is_standard_symplectic(const PMat& g, int p);

// The operator M with M rho(w,t) = rho(gw,t) M for every Heisenberg element,
// normalized so its first nonzero entry in row-major order equals 1.  The
// relation is re-verified before returning: exhaustively at N = 1, on a
// generating set plus a fixed random sample at N = 2.  Throws
// std::invalid_argument when g does not preserve the symplectic form.
CycMatrix weil_operator(const SchrodingerModel& model, const PMat& g);

// dual pair carried into Sp(V (x) V') and rewritten in standard symplectic
// coordinates; the two images are verified to centralize each other
struct EmbeddedPair {
  DualPairSpec pair;
  int q = 0;
  int N = 0;
  FiniteGroupTable left, right;
  std::vector<PMat> emb_left, emb_right;
};

EmbeddedPair embed_pair(const DualPairSpec& pair, int q);

struct PairModelFast;

struct PairModel {
  DualPairSpec pair;
  int q = 0;
  int a = 1;
  SchrodingerModel model;
  FiniteGroupTable left, right;
  std::vector<PMat> emb_left, emb_right;
  std::vector<CycMatrix> ops_left, ops_right;
  bool twisted = false;
  std::shared_ptr<const PairModelFast> fast;
};

// Operator tables for both members, rescaled into genuine representations of
// each factor (the restricted projective multipliers are trivialized by
// per-generator scalars, pinned so both factors agree on shared elements).
// GL pairs use the permutation realization on Hom(V', V).
PairModel build_pair_model(const DualPairSpec& pair, int q, int a);

// multiplies the orthogonal member through by (xi o det)^{dim V_symp / 2};
// no-op for GL pairs
void apply_pair_twist(PairModel& pm);

Cyc joint_trace(const PairModel& pm, int li, int ri);

struct RestrictionCheck {
  long long left_products = 0;
  long long right_products = 0;
  long long commutations = 0;
  bool ok = false;
};

// exhaustive multiplicativity inside each factor plus full cross-commutation
RestrictionCheck verify_restriction(const PairModel& pm);

}  // namespace fftheta
