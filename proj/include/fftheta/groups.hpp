#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "fftheta/cyclotomic.hpp"
#include "fftheta/symbols.hpp"

namespace fftheta {

// arithmetic tables for F_q with q = p or p^2, p an odd prime; elements are
// encoded 0..q-1 as a + b*p over the basis 1, sqrt(delta)
struct Fq {
  int p = 3;
  int deg = 1;
  int q = 3;
  int delta = 0;  // fixed nonsquare of F_p, used only when deg == 2

  int add(int x, int y) const;
  int neg(int x) const;
  int sub(int x, int y) const;
  int mul(int x, int y) const;
  int inv(int x) const;
  int pow(int x, long long e) const;
  int tau(int x) const;   // p-power map; identity on the prime field
  int norm(int x) const;  // x * tau(x)
  int xi(int x) const;    // quadratic character: +1 / -1, and 0 at 0
  int from_int(long long n) const;

  static Fq make(int p, int deg = 1);
};

struct PMat {
  int n = 0;
  std::vector<int> a;

  PMat() = default;
  explicit PMat(int n_) : n(n_), a(n_ * n_, 0) {}
  int& at(int i, int j) { return a[i * n + j]; }
  int at(int i, int j) const { return a[i * n + j]; }
  static PMat identity(int n);
  bool operator==(const PMat&) const = default;
  auto operator<=>(const PMat&) const = default;
};

PMat pm_mul(const Fq& F, const PMat& A, const PMat& B);
PMat pm_transpose(const PMat& A);
int pm_det(const Fq& F, const PMat& A);
PMat pm_inverse(const Fq& F, const PMat& A);

// a fully tabulated matrix group: multiplication, inverses, conjugacy classes
struct FiniteGroupTable {
  GroupKind kind{GroupFamily::GL, 1, 0};
  int q = 3;
  Fq field;
  int dim = 0;
  PMat gram;  // invariant bilinear form for orthogonal kinds
  std::vector<PMat> elems;  // elems[0] is the identity
  std::vector<int> inv;
  std::vector<std::vector<int>> mul;
  std::vector<int> cls_of;
  std::vector<std::vector<int>> classes;
  std::vector<int> reps;
  std::vector<int> elem_order;
  std::map<PMat, int> index;

  long long order() const { return (long long)elems.size(); }
  int exponent() const;
  int index_of(const PMat& m) const;
};

// Concrete models at desk scale: Sp_2 = SL_2, split and non-split O_2, O_1,
// and GL_1 / GL_2.  Throws std::invalid_argument for anything larger.
FiniteGroupTable build_group(const GroupKind& kind, int q);

struct CharTable {
  int classes = 0;
  std::vector<long long> degrees;
  std::vector<std::vector<Cyc>> rows;  // rows[i][c] = value on class c
};

// exact irreducible character table via class-matrix eigenvectors over a
// large prime field, lifted to cyclotomic integers and verified against the
// orthogonality relations
CharTable character_table(const FiniteGroupTable& G);

}  // namespace fftheta
