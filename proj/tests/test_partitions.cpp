#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "fftheta/partitions.hpp"

using namespace fftheta;

TEST_CASE("normalization") {
  CHECK(normalized({1, 4, 0, 1}) == Partition{4, 1, 1});
  CHECK(normalized({}) == Partition{});
  CHECK(normalized({0, 0}) == Partition{});
  CHECK_THROWS(normalized({2, -1}));
  CHECK(is_partition(Partition{3, 3, 1}));
  CHECK_FALSE(is_partition(Partition{1, 2}));
  CHECK_FALSE(is_partition(Partition{2, 0}));
}

TEST_CASE("transpose") {
  CHECK(transpose(Partition{4, 1, 1}) == Partition{3, 1, 1, 1});
  CHECK(transpose(Partition{}) == Partition{});
  CHECK(transpose(Partition{2, 2}) == Partition{2, 2});
  for (int n = 0; n <= 10; ++n)
    for (const auto& p : partitions_of(n)) {
      CHECK(transpose(transpose(p)) == p);
      CHECK(weight(transpose(p)) == weight(p));
    }
}

TEST_CASE("union") {
  CHECK(union_parts({2, 1}, {2}) == Partition{2, 2, 1});
  CHECK(union_parts({3, 1}, {}) == Partition{3, 1});
  CHECK(union_parts({1}, {1}) == Partition{1, 1});
  CHECK(union_part({2, 1}, 0) == Partition{2, 1});
  CHECK(union_part({2, 1}, 2) == Partition{2, 2, 1});
  for (const auto& a : partitions_of(4))
    for (const auto& b : partitions_of(3)) {
      CHECK(union_parts(a, b) == union_parts(b, a));
      for (const auto& c : partitions_of(2))
        CHECK(union_parts(union_parts(a, b), c) == union_parts(a, union_parts(b, c)));
    }
}

TEST_CASE("dominance") {
  CHECK(dominates({2}, {1, 1}));
  CHECK_FALSE(dominates({1, 1}, {2}));
  CHECK(dominates({3, 1}, {2, 2}));
  CHECK_THROWS(dominates({2}, {1}));
}

TEST_CASE("preceq") {
  CHECK(preceq({4, 1, 1}, {4, 4, 1, 1}));
  CHECK(preceq({}, {3}));
  CHECK(preceq({}, {}));
  CHECK_FALSE(preceq({}, {1, 1}));
  CHECK(preceq({2, 1}, {3, 1}));
  CHECK_FALSE(preceq({3, 1}, {2, 1}));
  CHECK_FALSE(preceq({1, 1}, {2}));

  // antisymmetry at equal weight
  for (int n = 0; n <= 8; ++n)
    for (const auto& a : partitions_of(n))
      for (const auto& b : partitions_of(n))
        if (preceq(a, b)) CHECK(a == b);

  // b/a is a horizontal strip: at most one box per column
  for (int n = 0; n <= 6; ++n)
    for (const auto& a : partitions_of(n))
      for (int m = n; m <= n + 4; ++m)
        for (const auto& b : partitions_of(m)) {
          bool strip = contains(b, a);
          if (strip) {
            auto ta = transpose(a), tb = transpose(b);
            for (int j = 1; j <= length(tb) && strip; ++j)
              if (part(tb, j) - part(ta, j) > 1) strip = false;
          }
          CHECK(preceq(a, b) == strip);
        }
}

TEST_CASE("close and contains") {
  CHECK(close({2, 1}, {1, 1}));
  CHECK(close({2, 1}, {2}));
  CHECK_FALSE(close({3}, {1}));
  CHECK(contains({3, 1}, {2, 1}));
  CHECK_FALSE(contains({2, 2}, {3}));
  for (const auto& a : partitions_of(5))
    for (const auto& b : partitions_of(3))
      CHECK(contains(a, b) == (intersections(a, b).first == b));
}

TEST_CASE("intersections") {
  CHECK(intersections({3, 1}, {2, 2}) == std::pair<Partition, Partition>({2, 1}, {}));
  CHECK(intersections({3, 1}, {2, 1}) == std::pair<Partition, Partition>({2, 1}, {1}));
  Partition l{4, 2, 1};
  CHECK(intersections(l, l) == std::pair<Partition, Partition>(l, l));
}

TEST_CASE("hook lengths") {
  auto h = hook_lengths({2, 1});
  REQUIRE(h.size() == 2);
  CHECK(h[0] == std::vector<int>{3, 1});
  CHECK(h[1] == std::vector<int>{1});
  CHECK(hook_lengths({1}) == std::vector<std::vector<int>>{{1}});
  CHECK(hook_lengths({3}) == std::vector<std::vector<int>>{{3, 2, 1}});
}

namespace {

// all ways to remove one domino (rim hook of size 2)
std::vector<Partition> domino_removals(const Partition& p) {
  std::vector<Partition> out;
  for (int i = 1; i <= length(p); ++i) {
    if (part(p, i) - 2 >= part(p, i + 1)) {
      Partition q = p;
      q[i - 1] -= 2;
      out.push_back(normalized(q));
    }
    if (part(p, i) == part(p, i + 1) && part(p, i) >= part(p, i + 2) + 1 &&
        part(p, i) >= 1) {
      Partition q = p;
      q[i - 1] -= 1;
      q[i] -= 1;
      out.push_back(normalized(q));
    }
  }
  return out;
}

Partition random_core(Partition p, std::mt19937& rng) {
  for (;;) {
    auto moves = domino_removals(p);
    if (moves.empty()) return p;
    p = moves[rng() % moves.size()];
  }
}

}  // namespace

TEST_CASE("two-core") {
  CHECK(two_core({2, 2}) == std::pair<Partition, int>({}, 0));
  CHECK(two_core({3}) == std::pair<Partition, int>({1}, 1));
  CHECK(two_core({2, 1}) == std::pair<Partition, int>({2, 1}, 2));
  CHECK(two_core({}) == std::pair<Partition, int>({}, 0));

  std::mt19937 rng(12345);
  for (int n = 0; n <= 12; ++n)
    for (const auto& p : partitions_of(n)) {
      auto [core, d] = two_core(p);
      Partition staircase;
      for (int k = d; k >= 1; --k) staircase.push_back(k);
      CHECK(core == staircase);
      CHECK((weight(p) - weight(core)) % 2 == 0);
      for (int trial = 0; trial < 3; ++trial)
        CHECK(random_core(p, rng) == core);
    }
}

TEST_CASE("enumeration counts") {
  const int pn[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77};
  for (int n = 0; n <= 12; ++n)
    CHECK(static_cast<int>(partitions_of(n).size()) == pn[n]);
  const int bn[] = {1, 2, 5, 10, 20, 36};
  for (int n = 0; n <= 5; ++n)
    CHECK(static_cast<int>(bipartitions_of(n).size()) == bn[n]);
}

TEST_CASE("printing") {
  CHECK(to_string(Partition{4, 1, 1}) == "[4,1,1]");
  CHECK(to_string(Partition{}) == "[]");
  CHECK(to_string(Bipartition{{1}, {}}) == "[1];[]");
}
