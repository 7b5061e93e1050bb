#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "fftheta/weyl_b.hpp"

using namespace fftheta;

namespace {

long long zsym(const Partition& p) {
  long long v = 1;
  int run = 0;
  for (int i = 0; i < length(p); ++i) {
    v *= p[i];
    run = (i > 0 && p[i] == p[i - 1]) ? run + 1 : 1;
    v *= run;
  }
  return v;
}

// symmetric group character via the wreath recursion with no negative part
long long schar(const Partition& lam, const Partition& cycle_type) {
  return char_value({lam, {}}, {cycle_type, {}});
}

long long group_order(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  for (int i = 0; i < n; ++i) f *= 2;
  return f;
}

VirtualBChar induce_virtual(const VirtualBChar& x, const Bipartition& b) {
  VirtualBChar out;
  for (const auto& [lab, m] : x)
    for (const auto& [lab2, m2] : induce(lab, b)) out[lab2] += m * m2;
  return out;
}

}  // namespace

TEST_CASE("Littlewood-Richardson coefficients") {
  CHECK(lr_coefficient({1}, {1}, {2}) == 1);
  CHECK(lr_coefficient({1}, {1}, {1, 1}) == 1);
  CHECK(lr_coefficient({2, 1}, {2, 1}, {3, 2, 1}) == 2);
  CHECK(lr_coefficient({2, 1}, {2, 1}, {2, 2, 1, 1}) == 1);
  CHECK(lr_coefficient({1}, {1}, {3}) == 0);
  CHECK(lr_coefficient({2}, {}, {1, 1}) == 0);
  CHECK(lr_coefficient({}, {}, {}) == 1);
  CHECK(lr_coefficient({}, {3, 1}, {3, 1}) == 1);

  // cross-check tableau enumeration against symmetric group characters:
  // c^lam_{mu nu} = sum over class pairs of chi^mu chi^nu chi^lam / (z z')
  for (int n = 2; n <= 6; ++n) {
    for (const auto& lam : partitions_of(n)) {
      for (int a = 0; a <= n; ++a) {
        for (const auto& mu : partitions_of(a)) {
          for (const auto& nu : partitions_of(n - a)) {
            long long num = 0, den = 1;
            for (const auto& ca : partitions_of(a)) {
              for (const auto& cb : partitions_of(n - a)) {
                Partition join = union_parts(ca, cb);
                long long term =
                    schar(mu, ca) * schar(nu, cb) * schar(lam, join);
                long long z = zsym(ca) * zsym(cb);
                num = num * z + term * den;
                den *= z;
                long long g = std::gcd(num < 0 ? -num : num, den);
                if (g > 1) {
                  num /= g;
                  den /= g;
                }
              }
            }
            REQUIRE(den == 1);
            CHECK(lr_coefficient(mu, nu, lam) == num);
          }
        }
      }
    }
  }
}

TEST_CASE("induction products") {
  VirtualBChar r = induce({{1}, {}}, {{1}, {}});
  CHECK(r == VirtualBChar{{{{2}, {}}, 1}, {{{1, 1}, {}}, 1}});

  CHECK(induce({{1}, {}}, {{}, {1}}) == VirtualBChar{{{{1}, {1}}, 1}});

  for (int n = 0; n <= 3; ++n)
    for (const auto& x : bipartitions_of(n))
      CHECK(induce({}, x) == VirtualBChar{{x, 1}});

  for (int r1 = 0; r1 <= 2; ++r1) {
    for (int r2 = 0; r1 + r2 <= 4; ++r2) {
      for (const auto& a : bipartitions_of(r1)) {
        for (const auto& b : bipartitions_of(r2)) {
          CHECK(induce(a, b) == induce(b, a));
          long long total = 0;
          for (const auto& [lab, m] : induce(a, b)) {
            CHECK(m > 0);
            total += m * b_dimension(lab);
          }
          long long idx = group_order(r1 + r2) /
                          (group_order(r1) * group_order(r2));
          CHECK(total == idx * b_dimension(a) * b_dimension(b));
        }
      }
    }
  }

  for (int r1 = 1; r1 <= 2; ++r1) {
    for (const auto& a : bipartitions_of(r1)) {
      for (const auto& b : bipartitions_of(1)) {
        for (const auto& c : bipartitions_of(1)) {
          CHECK(induce_virtual(induce(a, b), c) ==
                induce_virtual(induce(b, c), a));
        }
      }
    }
  }
}

TEST_CASE("sign twist") {
  CHECK(sgn_twist({{3}, {}}) == Bipartition{{}, {1, 1, 1}});
  CHECK(sgn_twist({{1}, {1}}) == Bipartition{{1}, {1}});
  CHECK(sgn_twist({{2, 1}, {1}}) == Bipartition{{1}, {2, 1}});
  for (int n = 0; n <= 4; ++n)
    for (const auto& x : bipartitions_of(n)) CHECK(sgn_twist(sgn_twist(x)) == x);

  // character identity: twisting multiplies by the reflection sign E_{(),(1^n)}
  for (int n = 1; n <= 3; ++n) {
    Bipartition sgn{{}, Partition(n, 1)};
    for (const auto& x : bipartitions_of(n))
      for (const auto& cls : signed_classes(n))
        CHECK(char_value(sgn_twist(x), cls) ==
              char_value(sgn, cls) * char_value(x, cls));
  }

  for (int r1 = 0; r1 <= 2; ++r1) {
    for (int r2 = 0; r1 + r2 <= 3; ++r2) {
      for (const auto& a : bipartitions_of(r1)) {
        for (const auto& b : bipartitions_of(r2)) {
          VirtualBChar twisted;
          for (const auto& [lab, m] : induce(a, b)) twisted[sgn_twist(lab)] += m;
          CHECK(twisted == induce(sgn_twist(a), sgn_twist(b)));
        }
      }
    }
  }
}

TEST_CASE("character values and dimensions") {
  for (int n = 1; n <= 5; ++n) {
    Bipartition triv{{n}, {}};
    for (const auto& cls : signed_classes(n)) CHECK(char_value(triv, cls) == 1);
  }
  CHECK(char_value({{}, {1, 1}}, {{1, 1}, {}}) == 1);
  CHECK(char_value({{1}, {1}}, {{1, 1}, {}}) == 2);
  CHECK_THROWS(char_value({{1}, {}}, {{1, 1}, {}}));

  for (int n = 0; n <= 5; ++n) {
    long long sum = 0;
    for (const auto& x : bipartitions_of(n)) {
      long long d = char_value(x, {Partition(n, 1), {}});
      CHECK(d == b_dimension(x));
      sum += d * d;
    }
    CHECK(sum == group_order(n));
  }

  // orthogonality of rows weighted by class sizes
  for (int n = 1; n <= 4; ++n) {
    long long g = group_order(n);
    auto classes = signed_classes(n);
    long long total = 0;
    for (const auto& cls : classes) total += g / signed_class_centralizer(cls);
    CHECK(total == g);
    auto labels = bipartitions_of(n);
    for (size_t i = 0; i < labels.size(); ++i) {
      for (size_t j = i; j < labels.size(); ++j) {
        long long dot = 0;
        for (const auto& cls : classes)
          dot += (g / signed_class_centralizer(cls)) *
                 char_value(labels[i], cls) * char_value(labels[j], cls);
        CHECK(dot == (i == j ? g : 0));
      }
    }
  }
}

TEST_CASE("signed permutation matrix model") {
  for (int n = 1; n <= 4; ++n) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::map<SignedClassLabel, long long> counts;
    Bipartition natural{n - 1 == 0 ? Partition{} : Partition{n - 1}, {1}};
    Bipartition refl_sign{{}, Partition(n, 1)};
    Bipartition flip_sign{{}, {n}};
    do {
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        // build the class label from signed cycles
        std::vector<bool> seen(n, false);
        Partition pos, neg;
        long long tr = 0;
        int neg_entries = 0, transpositions = 0;
        for (int i = 0; i < n; ++i) {
          if (mask & (1u << i)) ++neg_entries;
          if (perm[i] == i) tr += (mask & (1u << i)) ? -1 : 1;
          if (seen[i]) continue;
          int len = 0, j = i, sign = 1;
          while (!seen[j]) {
            seen[j] = true;
            if (mask & (1u << j)) sign = -sign;
            j = perm[j];
            ++len;
          }
          transpositions += len - 1;
          (sign == 1 ? pos : neg).push_back(len);
        }
        std::sort(pos.rbegin(), pos.rend());
        std::sort(neg.rbegin(), neg.rend());
        SignedClassLabel cls{pos, neg};
        counts[cls]++;
        long long det =
            (transpositions % 2 ? -1 : 1) * (neg_entries % 2 ? -1 : 1);
        CHECK(char_value(natural, cls) == tr);
        CHECK(char_value(refl_sign, cls) == det);
        CHECK(char_value(flip_sign, cls) == (length(neg) % 2 ? -1 : 1));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));

    CHECK(counts.size() == signed_classes(n).size());
    for (const auto& cls : signed_classes(n))
      CHECK(counts[cls] == group_order(n) / signed_class_centralizer(cls));
  }
}

TEST_CASE("omega expansions") {
  for (OmegaCase c : {OmegaCase::UOddC, OmegaCase::UEvenC, OmegaCase::UZero,
                      OmegaCase::SpOCase1, OmegaCase::SpOCase2}) {
    auto t = omega(c, 0, 0);
    REQUIRE(t.size() == 1);
    CHECK(t[0] == OmegaTriple{{}, {}, 1});
  }

  auto t = omega(OmegaCase::SpOCase2, 1, 0);
  REQUIRE(t.size() == 1);
  CHECK(t[0] == OmegaTriple{{{1}, {}}, {}, 1});

  for (OmegaCase c : {OmegaCase::UOddC, OmegaCase::UEvenC, OmegaCase::UZero,
                      OmegaCase::SpOCase1, OmegaCase::SpOCase2}) {
    for (int w = 0; w <= 3; ++w) {
      for (int wp = 0; wp <= 3; ++wp) {
        long long expect = 0;
        for (int r = 0; r <= std::min(w, wp); ++r) {
          long long iw = group_order(w) / (group_order(r) * group_order(w - r));
          long long iwp =
              group_order(wp) / (group_order(r) * group_order(wp - r));
          for (const auto& bp : bipartitions_of(r))
            expect += iw * iwp * b_dimension(bp) * b_dimension(bp);
        }
        long long got = 0;
        for (const auto& tr : omega(c, w, wp)) {
          CHECK(tr.mult >= 1);
          got += tr.mult * b_dimension(tr.left) * b_dimension(tr.right);
        }
        CHECK(got == expect);
      }
    }
  }
}
