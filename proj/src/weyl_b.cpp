#include "fftheta/weyl_b.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "fftheta/symbols.hpp"

namespace fftheta {

namespace {

// Littlewood-Richardson fillings of lam/mu with content nu, generated cell by
// cell in reverse reading order (rows top to bottom, right to left) so that
// the lattice condition is a running constraint on the content counts.
struct LrCell {
  int row, col;
  bool has_right, has_above;
};

long long lr_count(const std::vector<LrCell>& cells, size_t idx,
                   std::vector<std::vector<int>>& fill, std::vector<int>& left,
                   const Partition& nu) {
  if (idx == cells.size()) return 1;
  const LrCell& c = cells[idx];
  long long total = 0;
  int hi = static_cast<int>(nu.size());
  if (c.has_right) hi = std::min(hi, fill[c.row][c.col + 1]);
  for (int v = 1; v <= hi; ++v) {
    if (left[v - 1] == 0) continue;
    if (c.has_above && v <= fill[c.row - 1][c.col]) continue;
    // lattice: a v may only be placed while fewer vs than (v-1)s are down
    if (v > 1 && nu[v - 2] - left[v - 2] <= nu[v - 1] - left[v - 1]) continue;
    fill[c.row][c.col] = v;
    --left[v - 1];
    total += lr_count(cells, idx + 1, fill, left, nu);
    ++left[v - 1];
  }
  fill[c.row][c.col] = 0;
  return total;
}

}  // namespace

long long lr_coefficient(const Partition& mu, const Partition& nu,
                         const Partition& lam) {
  if (weight(mu) + weight(nu) != weight(lam)) return 0;
  if (!contains(lam, mu)) return 0;
  if (nu.empty()) return 1;
  std::vector<LrCell> cells;
  for (int i = 0; i < length(lam); ++i) {
    for (int j = lam[i] - 1; j >= part(mu, i + 1); --j) {
      LrCell c;
      c.row = i;
      c.col = j;
      c.has_right = j + 1 < lam[i];
      c.has_above = i > 0 && j >= part(mu, i) && j < part(lam, i);
      cells.push_back(c);
    }
  }
  std::vector<std::vector<int>> fill(length(lam));
  for (int i = 0; i < length(lam); ++i) fill[i].assign(lam[i], 0);
  std::vector<int> left = nu;
  return lr_count(cells, 0, fill, left, nu);
}

VirtualBChar induce(const Bipartition& a, const Bipartition& b) {
  VirtualBChar out;
  int tn = weight(a.top) + weight(b.top);
  int bn = weight(a.bottom) + weight(b.bottom);
  for (const auto& lam : partitions_of(tn)) {
    long long ct = lr_coefficient(a.top, b.top, lam);
    if (ct == 0) continue;
    for (const auto& mu : partitions_of(bn)) {
      long long cb = lr_coefficient(a.bottom, b.bottom, mu);
      if (cb == 0) continue;
      out[{lam, mu}] += ct * cb;
    }
  }
  return out;
}

Bipartition sgn_twist(const Bipartition& x) {
  return {transpose(x.bottom), transpose(x.top)};
}

namespace {

Bipartition filler(int m, bool sgn) {
  if (m == 0) return {};
  if (sgn) return {{}, Partition(m, 1)};
  return {{m}, {}};
}

}  // namespace

std::vector<OmegaTriple> omega(OmegaCase c, int nbar, int nbarp) {
  if (nbar < 0 || nbarp < 0) throw std::invalid_argument("negative rank");
  // left_sgn / right_sgn: which side's complementary factor carries sgn;
  // body_twist: whether the right body is sgn . E_{lam,mu}
  bool left_sgn, right_sgn, body_twist;
  switch (c) {
    case OmegaCase::UOddC:
      left_sgn = false;
      right_sgn = true;
      body_twist = true;
      break;
    case OmegaCase::UEvenC:
      left_sgn = true;
      right_sgn = false;
      body_twist = true;
      break;
    case OmegaCase::UZero:
      left_sgn = false;
      right_sgn = false;
      body_twist = true;
      break;
    case OmegaCase::SpOCase1:
      left_sgn = true;
      right_sgn = true;
      body_twist = false;
      break;
    case OmegaCase::SpOCase2:
      left_sgn = false;
      right_sgn = true;
      body_twist = false;
      break;
    default:
      throw std::invalid_argument("unknown omega case");
  }
  std::map<std::pair<Bipartition, Bipartition>, long long> acc;
  for (int r = 0; r <= std::min(nbar, nbarp); ++r) {
    for (const auto& bp : bipartitions_of(r)) {
      VirtualBChar left = induce(bp, filler(nbar - r, left_sgn));
      Bipartition body = body_twist ? sgn_twist(bp) : bp;
      VirtualBChar right = induce(body, filler(nbarp - r, right_sgn));
      for (const auto& [l, cl] : left)
        for (const auto& [rr, cr] : right) acc[{l, rr}] += cl * cr;
    }
  }
  std::vector<OmegaTriple> out;
  for (const auto& [k, m] : acc) out.push_back({k.first, k.second, m});
  return out;
}

namespace {

struct StripRemoval {
  Partition rest;
  int sign;
};

std::vector<StripRemoval> strip_removals(const Partition& p, int a) {
  std::vector<StripRemoval> out;
  int h = length(p);
  BetaSet x;
  for (int i = h; i >= 1; --i) x.push_back(p[i - 1] + h - i);
  for (size_t k = 0; k < x.size(); ++k) {
    int lo = x[k] - a;
    if (lo < 0) continue;
    if (std::find(x.begin(), x.end(), lo) != x.end()) continue;
    int ht = 0;
    BetaSet y;
    for (size_t j = 0; j < x.size(); ++j) {
      if (j == k) continue;
      if (x[j] > lo && x[j] < x[k]) ++ht;
      y.push_back(x[j]);
    }
    y.push_back(lo);
    std::sort(y.begin(), y.end());
    out.push_back({partition_of_beta(y), ht % 2 == 0 ? 1 : -1});
  }
  return out;
}

long long cv(const Partition& lam, const Partition& mu, std::vector<int> alpha,
             std::vector<int> beta) {
  if (alpha.empty() && beta.empty())
    return lam.empty() && mu.empty() ? 1 : 0;
  long long total = 0;
  if (!alpha.empty()) {
    int a = alpha.back();
    alpha.pop_back();
    for (const auto& s : strip_removals(lam, a))
      total += s.sign * cv(s.rest, mu, alpha, beta);
    for (const auto& s : strip_removals(mu, a))
      total += s.sign * cv(lam, s.rest, alpha, beta);
  } else {
    int a = beta.back();
    beta.pop_back();
    for (const auto& s : strip_removals(lam, a))
      total += s.sign * cv(s.rest, mu, alpha, beta);
    for (const auto& s : strip_removals(mu, a))
      total -= s.sign * cv(lam, s.rest, alpha, beta);
  }
  return total;
}

}  // namespace

long long char_value(const Bipartition& x, const SignedClassLabel& cls) {
  if (weight(x) != weight(cls.pos) + weight(cls.neg))
    throw std::invalid_argument("label and class size mismatch");
  return cv(x.top, x.bottom, cls.pos, cls.neg);
}

namespace {

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

long long hook_dimension(const Partition& p) {
  long long denom = 1;
  for (const auto& row : hook_lengths(p))
    for (int h : row) denom *= h;
  return factorial(weight(p)) / denom;
}

}  // namespace

long long b_dimension(const Bipartition& x) {
  int n = weight(x);
  int k = weight(x.top);
  long long binom = factorial(n) / (factorial(k) * factorial(n - k));
  return binom * hook_dimension(x.top) * hook_dimension(x.bottom);
}

std::vector<SignedClassLabel> signed_classes(int n) {
  std::vector<SignedClassLabel> out;
  for (const auto& b : bipartitions_of(n)) out.push_back({b.top, b.bottom});
  return out;
}

long long signed_class_centralizer(const SignedClassLabel& cls) {
  auto z = [](const Partition& p) {
    long long v = 1;
    int run = 0;
    for (int i = 0; i < length(p); ++i) {
      v *= 2 * p[i];
      run = (i > 0 && p[i] == p[i - 1]) ? run + 1 : 1;
      v *= run;
    }
    return v;
  };
  return z(cls.pos) * z(cls.neg);
}

std::string to_string(const SignedClassLabel& cls) {
  std::ostringstream os;
  os << "(" << to_string(cls.pos) << "; " << to_string(cls.neg) << ")";
  return os.str();
}

}  // namespace fftheta
