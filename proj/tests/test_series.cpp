#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "fftheta/series.hpp"

using namespace fftheta;

namespace {

const GroupKind kSp1{GroupFamily::Sp, 1, 0};
const GroupKind kSp2{GroupFamily::Sp, 2, 0};

UnipLabel triv_sp0() {
  return symbol_label({GroupFamily::Sp, 0, 0},
                      cuspidal_symbol(GroupFamily::Sp, 0));
}

UnipLabel triv_oeven0() { return symbol_label({GroupFamily::Oeven, 0, 1}, {}); }

SeriesLabel make_series(const GroupKind& g, const SemisimpleSpectrum& s,
                        const UnipLabel& u1, const UnipLabel& um,
                        std::vector<Partition> une = {}, int zeta = 0) {
  SeriesLabel x;
  x.group = g;
  x.spectrum = s;
  x.u1 = u1;
  x.u_minus1 = um;
  x.u_ne = std::move(une);
  x.zeta = zeta;
  return x;
}

// every series of the group, one per (spectrum, shape, label tuple)
std::vector<SeriesLabel> all_series(const GroupKind& g,
                                    const std::vector<SemisimpleSpectrum>& sp) {
  std::vector<SeriesLabel> out;
  for (const auto& s : sp) {
    for (const auto& shape : endoscopic_decompose(g, s)) {
      std::vector<std::vector<Partition>> choices;
      for (const auto& o : s.other_orbits) choices.push_back(partitions_of(o.mult));
      std::vector<std::vector<Partition>> tuples{{}};
      for (const auto& c : choices) {
        std::vector<std::vector<Partition>> next;
        for (const auto& t : tuples)
          for (const auto& p : c) {
            auto u = t;
            u.push_back(p);
            next.push_back(u);
          }
        tuples = next;
      }
      std::vector<int> zetas =
          g.family == GroupFamily::Oodd ? std::vector<int>{1, -1}
                                        : std::vector<int>{0};
      for (const auto& a : unipotent_labels(shape.factor_1.kind))
        for (const auto& b : unipotent_labels(shape.factor_minus1.kind))
          for (const auto& t : tuples)
            for (int z : zetas) out.push_back(make_series(g, s, a, b, t, z));
    }
  }
  return out;
}

Int square_sum(const GroupKind& g, const std::vector<SemisimpleSpectrum>& sp,
               long long q) {
  Int total = 0;
  for (const auto& x : all_series(g, sp)) {
    Int d = jordan_dim(x, q);
    total += d * d;
  }
  return total;
}

bool has_reason(const AdmissibleResult& r, const std::string& what) {
  return std::find(r.reasons.begin(), r.reasons.end(), what) != r.reasons.end();
}

}  // namespace

TEST_CASE("group orders") {
  CHECK(group_order({GroupFamily::GL, 1, 0}, 3) == 2);
  CHECK(group_order({GroupFamily::GL, 2, 0}, 3) == 48);
  CHECK(group_order({GroupFamily::U, 1, 0}, 3) == 4);
  CHECK(group_order({GroupFamily::U, 2, 0}, 3) == 96);
  CHECK(group_order(kSp1, 3) == 24);
  CHECK(group_order(kSp1, 5) == 120);
  CHECK(group_order({GroupFamily::SOodd, 1, 0}, 3) == 24);
  CHECK(group_order(kSp2, 3) == 51840);
  CHECK(group_order({GroupFamily::Oodd, 0, 0}, 3) == 2);
  CHECK(group_order({GroupFamily::Oodd, 1, 0}, 3) == 48);
  CHECK(group_order({GroupFamily::Oeven, 0, 1}, 3) == 1);
  CHECK(group_order({GroupFamily::Oeven, 1, 1}, 3) == 4);
  CHECK(group_order({GroupFamily::Oeven, 1, -1}, 3) == 8);
  CHECK(group_order({GroupFamily::Oeven, 2, 1}, 3) == 1152);

  CHECK(group_order_pprime(kSp1, 3) == 8);
  CHECK(group_order_pprime({GroupFamily::GL, 2, 0}, 3) == 16);
  CHECK(group_order_pprime({GroupFamily::Oeven, 1, -1}, 3) == 8);
  CHECK(group_order_pprime({GroupFamily::Oodd, 1, 0}, 3) == 16);

  // the removed factor is exactly a power of q
  for (const GroupKind& k :
       {kSp2, GroupKind{GroupFamily::GL, 3, 0}, GroupKind{GroupFamily::U, 3, 0},
        GroupKind{GroupFamily::Oeven, 2, -1},
        GroupKind{GroupFamily::SOodd, 2, 0},
        GroupKind{GroupFamily::Oodd, 2, 0}}) {
    Int full = group_order(k, 3), part = group_order_pprime(k, 3);
    CHECK(full % part == 0);
    Int pow = full / part;
    while (pow % 3 == 0) pow /= 3;
    CHECK(pow == 1);
    CHECK(part % 3 != 0);
  }

  CHECK_THROWS_AS(group_order({GroupFamily::Sp, -1, 0}, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(group_order(kSp1, 1), std::invalid_argument);
  CHECK_THROWS_AS(group_order({GroupFamily::Oeven, 1, 0}, 3),
                  std::invalid_argument);
}

TEST_CASE("unipotent dimensions") {
  auto gl = [](int n, Partition p, long long q) {
    return unipotent_dim(partition_label({GroupFamily::GL, n, 0}, p), q);
  };
  auto un = [](int n, Partition p, long long q) {
    return unipotent_dim(partition_label({GroupFamily::U, n, 0}, p), q);
  };
  CHECK(gl(0, {}, 3) == 1);
  CHECK(gl(2, {2}, 3) == 1);
  CHECK(gl(2, {1, 1}, 3) == 3);
  CHECK(gl(3, {3}, 3) == 1);
  CHECK(gl(3, {2, 1}, 3) == 12);
  CHECK(gl(3, {1, 1, 1}, 3) == 27);
  CHECK(un(0, {}, 3) == 1);
  CHECK(un(1, {1}, 3) == 1);
  CHECK(un(2, {2}, 3) == 1);
  CHECK(un(2, {1, 1}, 3) == 3);
  CHECK(un(3, {2, 1}, 3) == 6);
  CHECK(un(3, {1, 1, 1}, 3) == 27);

  auto dims = [](const GroupKind& k, long long q) {
    std::vector<Int> out;
    for (const auto& l : unipotent_labels(k)) out.push_back(unipotent_dim(l, q));
    std::sort(out.begin(), out.end());
    return out;
  };
  CHECK(dims(kSp1, 3) == std::vector<Int>{1, 3});
  CHECK(dims({GroupFamily::SOodd, 1, 0}, 3) == std::vector<Int>{1, 3});
  CHECK(dims({GroupFamily::Oeven, 1, 1}, 3) == std::vector<Int>{1, 1});
  CHECK(dims({GroupFamily::Oeven, 1, -1}, 3) == std::vector<Int>{1, 1});
}

TEST_CASE("endoscopic decomposition") {
  auto one = endoscopic_decompose(kSp2, {2, 0, {}});
  REQUIRE(one.size() == 1);
  CHECK(one[0].factor_1.kind == kSp2);
  CHECK(one[0].factor_minus1.kind == GroupKind{GroupFamily::Oeven, 0, 1});
  CHECK(one[0].factor_1.slots == 2);
  CHECK(one[0].factor_minus1.slots == 0);
  CHECK(one[0].natural == NaturalPart::MinusSide);

  auto two = endoscopic_decompose(kSp2, {1, 1, {}});
  REQUIRE(two.size() == 2);
  CHECK(two[0].factor_minus1.kind.eps + two[1].factor_minus1.kind.eps == 0);
  CHECK(two[0].factor_minus1.kind.n == 1);

  auto orb = endoscopic_decompose(
      kSp1, {0, 0, {{1, 1, OrbitType::USelfDual}}});
  REQUIRE(orb.size() == 1);
  REQUIRE(orb[0].factor_ne.size() == 1);
  CHECK(orb[0].factor_ne[0].kind == GroupKind{GroupFamily::U, 1, 0});
  CHECK(orb[0].factor_ne[0].field_degree == 1);
  CHECK(orb[0].factor_ne[0].slots == 1);

  auto glorb = endoscopic_decompose(
      kSp2, {0, 0, {{2, 1, OrbitType::GLPair}}});
  CHECK(glorb[0].factor_ne[0].kind == GroupKind{GroupFamily::GL, 1, 0});
  CHECK(glorb[0].factor_ne[0].field_degree == 2);

  auto so = endoscopic_decompose({GroupFamily::SOodd, 2, 0}, {1, 1, {}});
  REQUIRE(so.size() == 1);
  CHECK(so[0].factor_1.kind == GroupKind{GroupFamily::SOodd, 1, 0});
  CHECK(so[0].factor_minus1.kind == kSp1);

  auto uu = endoscopic_decompose({GroupFamily::U, 2, 0}, {1, 1, {}});
  REQUIRE(uu.size() == 1);
  CHECK(uu[0].natural == NaturalPart::PlusSide);
  CHECK(uu[0].factor_1.kind == GroupKind{GroupFamily::U, 1, 0});

  // a lone self-dual packet carries a minus-type space, a split pair does not
  CHECK(endoscopic_decompose({GroupFamily::Oeven, 1, -1},
                             {0, 0, {{1, 1, OrbitType::USelfDual}}})
            .size() == 1);
  CHECK_THROWS_WITH_AS(
      endoscopic_decompose({GroupFamily::Oeven, 1, -1},
                           {0, 0, {{1, 1, OrbitType::GLPair}}}),
      "inconsistent spectrum", std::invalid_argument);
  CHECK(endoscopic_decompose({GroupFamily::Oeven, 1, 1},
                             {0, 0, {{1, 1, OrbitType::GLPair}}})
            .size() == 1);

  auto om = endoscopic_decompose({GroupFamily::Oeven, 1, -1}, {1, 0, {}});
  REQUIRE(om.size() == 1);
  CHECK(om[0].factor_1.kind == GroupKind{GroupFamily::Oeven, 1, -1});
  auto opm = endoscopic_decompose({GroupFamily::Oeven, 2, 1}, {1, 1, {}});
  REQUIRE(opm.size() == 2);
  CHECK(opm[0].factor_1.kind.eps * opm[0].factor_minus1.kind.eps == 1);
  CHECK(opm[1].factor_1.kind.eps * opm[1].factor_minus1.kind.eps == 1);
  auto omm = endoscopic_decompose({GroupFamily::Oeven, 2, -1}, {1, 1, {}});
  REQUIRE(omm.size() == 2);
  CHECK(omm[0].factor_1.kind.eps * omm[0].factor_minus1.kind.eps == -1);

  CHECK_THROWS_AS(endoscopic_decompose({GroupFamily::GL, 2, 0}, {2, 0, {}}),
                  std::invalid_argument);
  CHECK_THROWS_WITH_AS(endoscopic_decompose(kSp2, {1, 0, {}}),
                       "spectrum does not fill the torus",
                       std::invalid_argument);
  CHECK_THROWS_AS(
      endoscopic_decompose({GroupFamily::U, 1, 0},
                           {0, 0, {{1, 1, OrbitType::GLPair}}}),
      std::invalid_argument);
}

TEST_CASE("rank bookkeeping over random spectra") {
  std::mt19937 rng(20260824);
  std::uniform_int_distribution<int> d6(0, 5);
  std::vector<GroupKind> kinds{kSp2,
                               {GroupFamily::Sp, 4, 0},
                               {GroupFamily::SOodd, 4, 0},
                               {GroupFamily::Oodd, 3, 0},
                               {GroupFamily::Oeven, 4, 1},
                               {GroupFamily::Oeven, 4, -1},
                               {GroupFamily::U, 4, 0},
                               {GroupFamily::U, 5, 0}};
  for (const auto& g : kinds) {
    for (int trial = 0; trial < 500; ++trial) {
      SemisimpleSpectrum s;
      for (;;) {
        s = {};
        int rem = spectrum_rank(g);
        while (rem > 0) {
          int pick = d6(rng);
          if (pick <= 1) {
            s.nu1 += 1;
            rem -= 1;
          } else if (pick == 2) {
            s.nu_minus1 += 1;
            rem -= 1;
          } else {
            int size = std::min(1 + d6(rng) % 3, rem);
            OrbitType t = d6(rng) % 2 == 0 ? OrbitType::GLPair
                                           : OrbitType::USelfDual;
            if (g.family == GroupFamily::U && t == OrbitType::GLPair &&
                size % 2 != 0)
              t = OrbitType::USelfDual;
            s.other_orbits.push_back({size, 1, t});
            rem -= size;
          }
        }
        if (g.family != GroupFamily::Oeven) break;
        try {
          endoscopic_decompose(g, s);
          break;
        } catch (const std::invalid_argument&) {
        }
      }
      auto shapes = endoscopic_decompose(g, s);
      REQUIRE(!shapes.empty());
      CHECK(shapes.size() <= 2);
      for (const auto& sh : shapes) {
        int slots = sh.factor_1.slots + sh.factor_minus1.slots;
        for (const auto& f : sh.factor_ne) slots += f.slots;
        CHECK(slots == spectrum_rank(g));
        CHECK(sh.factor_1.kind.n == s.nu1);
        CHECK(sh.factor_minus1.kind.n == s.nu_minus1);
      }
    }
  }
}

TEST_CASE("series dimensions add up") {
  std::vector<SemisimpleSpectrum> sp1_spectra{
      {1, 0, {}}, {0, 1, {}}, {0, 0, {{1, 1, OrbitType::USelfDual}}}};

  // the two minus-type towers split one central class into unequal series
  for (const auto& om : unipotent_labels({GroupFamily::Oeven, 1, 1})) {
    auto x = make_series(kSp1, {0, 1, {}}, triv_sp0(), om);
    CHECK(jordan_dim(x, 3) == 2);
  }
  for (const auto& om : unipotent_labels({GroupFamily::Oeven, 1, -1})) {
    auto x = make_series(kSp1, {0, 1, {}}, triv_sp0(), om);
    CHECK(jordan_dim(x, 3) == 1);
  }

  CHECK(square_sum(kSp1, sp1_spectra, 3) == group_order(kSp1, 3));

  std::vector<SemisimpleSpectrum> oplus{{1, 0, {}}, {0, 1, {}}};
  CHECK(square_sum({GroupFamily::Oeven, 1, 1}, oplus, 3) ==
        group_order({GroupFamily::Oeven, 1, 1}, 3));

  std::vector<SemisimpleSpectrum> ominus{
      {1, 0, {}}, {0, 1, {}}, {0, 0, {{1, 1, OrbitType::USelfDual}}}};
  CHECK(square_sum({GroupFamily::Oeven, 1, -1}, ominus, 3) ==
        group_order({GroupFamily::Oeven, 1, -1}, 3));

  CHECK(square_sum({GroupFamily::SOodd, 1, 0}, sp1_spectra, 3) ==
        group_order({GroupFamily::SOodd, 1, 0}, 3));

  // the sign tag doubles every series of the full odd orthogonal group
  CHECK(square_sum({GroupFamily::Oodd, 1, 0}, sp1_spectra, 3) ==
        group_order({GroupFamily::Oodd, 1, 0}, 3));

  std::vector<SemisimpleSpectrum> u1_spectra{
      {1, 0, {}},
      {0, 1, {}},
      {0, 0, {{1, 1, OrbitType::USelfDual}}},
      {0, 0, {{1, 1, OrbitType::USelfDual}}}};
  CHECK(square_sum({GroupFamily::U, 1, 0}, u1_spectra, 3) ==
        group_order({GroupFamily::U, 1, 0}, 3));

  // single-spectrum sums never exceed the group order
  for (const auto& s : std::vector<SemisimpleSpectrum>{
           {2, 0, {}},
           {1, 1, {}},
           {0, 2, {}},
           {0, 0, {{2, 1, OrbitType::USelfDual}}},
           {0, 0, {{1, 2, OrbitType::GLPair}}},
           {1, 0, {{1, 1, OrbitType::USelfDual}}}}) {
    CHECK(square_sum(kSp2, {s}, 3) <= group_order(kSp2, 3));
    CHECK(square_sum(kSp2, {s}, 5) <= group_order(kSp2, 5));
  }
}

TEST_CASE("series label validation") {
  auto sp_triv = unipotent_series_label(triv_sp0());
  CHECK(sp_triv.spectrum.nu1 == 0);

  auto st = symbol_label(kSp1, Symbol{{0, 1}, {1}});
  auto u = unipotent_series_label(st);
  CHECK(u.spectrum.nu1 == 1);
  CHECK(u.u_minus1.kind == GroupKind{GroupFamily::Oeven, 0, 1});
  CHECK(jordan_dim(u, 3) == 3);

  auto bad_zeta = u;
  bad_zeta.zeta = 1;
  CHECK_THROWS_AS(validate_series(bad_zeta), std::invalid_argument);

  auto bad_count = u;
  bad_count.u_ne.push_back({1});
  CHECK_THROWS_AS(validate_series(bad_count), std::invalid_argument);

  auto orb = make_series(kSp1, {0, 0, {{1, 1, OrbitType::USelfDual}}},
                         triv_sp0(), triv_oeven0(), {{2}});
  CHECK_THROWS_AS(validate_series(orb), std::invalid_argument);
  orb.u_ne = {{1}};
  CHECK(jordan_dim(orb, 3) == 2);

  // mismatched tower signs inside an even orthogonal group
  auto plus1 = unipotent_labels({GroupFamily::Oeven, 1, 1});
  auto minus1 = unipotent_labels({GroupFamily::Oeven, 1, -1});
  auto mixed = make_series({GroupFamily::Oeven, 2, 1}, {1, 1, {}}, plus1[0],
                           minus1[0]);
  CHECK_THROWS_WITH_AS(validate_series(mixed), "inconsistent spectrum",
                       std::invalid_argument);
  auto fine = make_series({GroupFamily::Oeven, 2, 1}, {1, 1, {}}, plus1[0],
                          plus1[1]);
  CHECK_NOTHROW(validate_series(fine));

  auto wrong_tower =
      make_series(kSp1, {0, 1, {}}, triv_sp0(),
                  symbol_label({GroupFamily::Oeven, 1, 1}, Symbol{{}, {0, 1}}));
  CHECK_THROWS_AS(validate_series(wrong_tower), std::invalid_argument);
}

TEST_CASE("sgn twist tuples") {
  auto one = e_pi_set(unipotent_series_label(
      symbol_label(kSp1, Symbol{{1}, {}})));
  CHECK(one.size() == 1);

  auto plus1 = unipotent_labels({GroupFamily::Oeven, 1, 1});
  auto two = e_pi_set(make_series(kSp1, {0, 1, {}}, triv_sp0(), plus1[0]));
  CHECK(two.size() == 2);

  auto four = e_pi_set(make_series({GroupFamily::Oeven, 2, 1}, {1, 1, {}},
                                   plus1[0], plus1[1]));
  CHECK(four.size() == 4);

  // a symbol with equal rows is fixed by the swap
  auto degen = make_series({GroupFamily::Oeven, 2, 1}, {0, 2, {}},
                           triv_oeven0(),
                           symbol_label({GroupFamily::Oeven, 2, 1},
                                        Symbol{{1}, {1}}));
  CHECK(e_pi_set(degen).size() == 1);
}

TEST_CASE("admissibility") {
  // unitary pairs
  auto ul = [](int n, const Partition& p) {
    return unipotent_series_label(partition_label({GroupFamily::U, n, 0}, p));
  };
  auto r12 = admissible(u_pair(1, 2), ul(1, {1}), ul(2, {1, 1}));
  CHECK(r12.ok);
  CHECK(r12.reasons.empty());
  auto r12bad = admissible(u_pair(1, 2), ul(1, {1}), ul(2, {2}));
  CHECK(!r12bad.ok);
  CHECK(has_reason(r12bad, "clause (2)"));
  auto r21 = admissible(u_pair(2, 1), ul(2, {1, 1}), ul(1, {1}));
  CHECK(r21.ok == r12.ok);

  auto left_spectral =
      make_series({GroupFamily::U, 2, 0}, {1, 1, {}},
                  partition_label({GroupFamily::U, 1, 0}, {1}),
                  partition_label({GroupFamily::U, 1, 0}, {1}));
  auto mism = admissible(u_pair(2, 2), left_spectral, ul(2, {1, 1}));
  CHECK(!mism.ok);
  CHECK(has_reason(mism, "clause (1)"));

  // symplectic against even orthogonal
  auto sp_st = unipotent_series_label(symbol_label(kSp1, Symbol{{0, 1}, {1}}));
  auto op_lift = unipotent_series_label(
      symbol_label({GroupFamily::Oeven, 1, 1}, Symbol{{1}, {0}}));
  auto ok31 = admissible(spo_pair(1, 1, 1), sp_st, op_lift);
  CHECK(ok31.ok);
  auto mirror = admissible(osp_pair(1, 1, 1), op_lift, sp_st);
  CHECK(mirror.ok == ok31.ok);

  auto sp_triv = unipotent_series_label(symbol_label(kSp1, Symbol{{1}, {}}));
  auto om_cusp = unipotent_series_label(
      symbol_label({GroupFamily::Oeven, 1, -1}, Symbol{{}, {0, 1}}));
  auto no3 = admissible(spo_pair(1, 1, -1), sp_triv, om_cusp);
  CHECK(!no3.ok);
  CHECK(has_reason(no3, "clause (3)"));

  // a sgn twist can rescue the first-component clause
  auto ok_twist = admissible(
      spo_pair(1, 1, 1), sp_st,
      unipotent_series_label(
          symbol_label({GroupFamily::Oeven, 1, 1}, Symbol{{0}, {1}})));
  CHECK(ok_twist.ok);
  CHECK(has_reason(ok_twist, "clause (3) matched through a sgn twist"));

  auto plus1 = unipotent_labels({GroupFamily::Oeven, 1, 1});
  auto sp2_left = make_series(kSp2, {1, 1, {}},
                              symbol_label(kSp1, Symbol{{1}, {}}),
                              symbol_label({GroupFamily::Oeven, 1, 1},
                                           Symbol{{1}, {0}}));
  auto o2_right = make_series({GroupFamily::Oeven, 2, 1}, {1, 1, {}},
                              symbol_label({GroupFamily::Oeven, 1, 1},
                                           Symbol{{1}, {0}}),
                              symbol_label({GroupFamily::Oeven, 1, 1},
                                           Symbol{{0}, {1}}));
  auto twist2 = admissible(spo_pair(2, 2, 1), sp2_left, o2_right);
  CHECK(twist2.ok);
  CHECK(has_reason(twist2, "clause (2) matched through a sgn twist"));

  auto o2_unip = unipotent_series_label(
      symbol_label({GroupFamily::Oeven, 2, 1}, Symbol{{2}, {0}}));
  auto c2fail = admissible(spo_pair(2, 2, 1), sp2_left, o2_unip);
  CHECK(!c2fail.ok);
  CHECK(has_reason(c2fail, "clause (2)"));

  // symplectic against full odd orthogonal
  DualPairSpec spodd{kSp1, {GroupFamily::Oodd, 1, 0}};
  auto sp_series = unipotent_series_label(symbol_label(kSp1, Symbol{{1}, {}}));
  auto oodd_match =
      make_series({GroupFamily::Oodd, 1, 0}, {0, 1, {}},
                  symbol_label({GroupFamily::SOodd, 0, 0},
                               cuspidal_symbol(GroupFamily::Sp, 0)),
                  symbol_label(kSp1, Symbol{{1}, {}}), {}, 1);
  auto rodd = admissible(spodd, sp_series, oodd_match);
  CHECK(rodd.ok);
  auto oodd_other = oodd_match;
  oodd_other.u_minus1 = symbol_label(kSp1, Symbol{{0, 1}, {1}});
  auto rodd2 = admissible(spodd, sp_series, oodd_other);
  CHECK(!rodd2.ok);
  CHECK(has_reason(rodd2, "clause (2)"));

  auto override_sign = oodd_match;
  override_sign.central_sign = -1;
  auto rodd3 = admissible(spodd, sp_series, override_sign);
  CHECK(!rodd3.ok);
  CHECK(has_reason(rodd3, "clause (4)"));

  DualPairSpec oddsp{{GroupFamily::Oodd, 1, 0}, kSp1};
  auto rodd_m = admissible(oddsp, oodd_match, sp_series);
  CHECK(rodd_m.ok == rodd.ok);

  CHECK_THROWS_AS(admissible(gl_pair(1, 1), sp_series, sp_series),
                  std::invalid_argument);
  CHECK_THROWS_AS(admissible(u_pair(1, 2), ul(2, {1, 1}), ul(1, {1})),
                  std::invalid_argument);
}

TEST_CASE("cuspidal support transport") {
  CHECK(cuspidal_rank(GroupFamily::Sp, 0) == 0);
  CHECK(cuspidal_rank(GroupFamily::Sp, 1) == 2);
  CHECK(cuspidal_rank(GroupFamily::Sp, 2) == 6);
  CHECK(cuspidal_rank(GroupFamily::SOodd, 2) == 6);
  CHECK(cuspidal_rank(GroupFamily::Oodd, 2) == 6);
  CHECK(cuspidal_rank(GroupFamily::Oeven, 2) == 4);
  CHECK(cuspidal_rank(GroupFamily::Oeven, 3) == 9);
  CHECK(cuspidal_rank(GroupFamily::U, 3) == 6);
  CHECK(cuspidal_rank(GroupFamily::GL, 0) == 0);
  CHECK_THROWS_AS(cuspidal_rank(GroupFamily::GL, 1), std::invalid_argument);
  CHECK_THROWS_AS(cuspidal_rank(GroupFamily::Sp, -1), std::invalid_argument);

  CuspidalSupport s1{{GroupFamily::Sp, 3, 0}, 2, 1, 1};
  auto t1 = hc_transport(s1, spo_pair(3, 2, -1));
  CHECK(t1 == CuspidalSupport{{GroupFamily::Oeven, 2, -1}, 1, 1, 1});
  CHECK_THROWS_WITH_AS(hc_transport(s1, spo_pair(3, 2, 1)), "series absent",
                       std::domain_error);
  auto t2 = hc_transport(s1, spo_pair(3, 5, 1));
  CHECK(t2 == CuspidalSupport{{GroupFamily::Oeven, 5, 1}, 4, 1, 2});

  // the disagreeing tower raises the tag, and the way back lowers it
  auto back = hc_transport(t2, osp_pair(5, 4, 1));
  CHECK(back == CuspidalSupport{{GroupFamily::Sp, 4, 0}, 2, 2, 1});

  CuspidalSupport u1{{GroupFamily::U, 3, 0}, 1, 2, 1};
  auto tu = hc_transport(u1, u_pair(3, 4));
  CHECK(tu == CuspidalSupport{{GroupFamily::U, 4, 0}, 0, 4, 0});
  auto tu2 = hc_transport(u1, u_pair(3, 3));
  CHECK(tu2 == CuspidalSupport{{GroupFamily::U, 3, 0}, 3, 0, 2});
  auto tu_back = hc_transport(tu, u_pair(4, 3));
  CHECK(tu_back.c == 1);

  CHECK_THROWS_AS(
      hc_transport({{GroupFamily::Oeven, 1, 1}, 1, 0, 1}, osp_pair(1, 3, 1)),
      std::invalid_argument);
  CHECK_THROWS_AS(hc_transport({kSp1, 0, 0, 0}, spo_pair(3, 3, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(hc_transport({kSp1, 2, 1, 1}, spo_pair(1, 3, 1)),
                  std::invalid_argument);
}
