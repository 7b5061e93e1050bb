#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "fftheta/theta.hpp"

using namespace fftheta;

namespace {

std::set<std::pair<Partition, Partition>> pair_set(const ThetaRelation& r) {
  std::set<std::pair<Partition, Partition>> out;
  for (const auto& t : r.triples) out.insert({t.l.plabel, t.r.plabel});
  return out;
}

std::set<std::pair<Symbol, Symbol>> sym_pair_set(const ThetaRelation& r) {
  std::set<std::pair<Symbol, Symbol>> out;
  for (const auto& t : r.triples) out.insert({t.l.symbol, t.r.symbol});
  return out;
}

}  // namespace

TEST_CASE("f readings") {
  CHECK(f_value({}, FReading::Literal) == 1);
  CHECK(f_value({}, FReading::Successor) == 1);
  CHECK(f_value({1}, FReading::Literal) == 1);
  CHECK(f_value({1}, FReading::PresentParts) == 1);
  CHECK(f_value({1}, FReading::Successor) == 2);
  CHECK(f_value({2, 2, 1}, FReading::Literal) == 2);
  CHECK(f_value({2, 2, 1}, FReading::Successor) == 6);
  CHECK(f_value({3, 1}, FReading::Literal) == 0);
  CHECK(f_value({3, 1}, FReading::PresentParts) == 1);
  CHECK(f_value({3, 1}, FReading::Successor) == 4);
}

TEST_CASE("theta for general linear pairs") {
  auto r = theta_gl({}, 0);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == std::pair<Partition, long long>{{}, 1});

  auto lit = theta_gl({1}, 2, FReading::Literal);
  CHECK(lit == std::vector<std::pair<Partition, long long>>{{{1, 1}, 1},
                                                            {{2}, 1}});
  auto suc = theta_gl({1}, 2, FReading::Successor);
  CHECK(suc == std::vector<std::pair<Partition, long long>>{{{1, 1}, 1},
                                                            {{2}, 2}});

  auto s21 = theta_gl({2, 1}, 3, FReading::Successor);
  CHECK(s21 == std::vector<std::pair<Partition, long long>>{
                   {{1, 1, 1}, 1}, {{2, 1}, 4}, {{3}, 2}});

  // the literal reading can drop a pair entirely
  auto l22 = theta_gl({2, 2}, 4, FReading::Literal);
  for (const auto& [p, m] : l22) CHECK(p != Partition{2, 2});
  auto s22 = theta_gl({2, 2}, 4, FReading::Successor);
  bool found = false;
  for (const auto& [p, m] : s22)
    if (p == Partition{2, 2}) {
      found = true;
      CHECK(m == 3);
    }
  CHECK(found);

  // the padded partner lam∪(b-a) always appears, and once the pad is at
  // least lam_1 - 1 every partner dominates it (sharp: fails one step lower)
  for (int a = 0; a <= 5; ++a) {
    for (int b = a; b <= 6; ++b) {
      for (const auto& lam : partitions_of(a)) {
        int l1 = lam.empty() ? 0 : lam[0];
        Partition bound = union_part(lam, b - a);
        bool padded_present = false;
        for (const auto& [img, m] : theta_gl(lam, b)) {
          if (b - a >= l1 - 1) CHECK(dominates(img, bound));
          if (img == bound) padded_present = true;
        }
        CHECK(padded_present);
      }
    }
  }
  bool sharp = false;
  for (const auto& [img, m] : theta_gl({3}, 4))
    if (img == Partition{2, 2}) sharp = true;
  CHECK(sharp);
  CHECK_FALSE(dominates({2, 2}, union_part({3}, 1)));

  // symmetry of the induced relation
  for (int n = 0; n <= 4; ++n) {
    for (int np = 0; np <= 4; ++np) {
      auto props = relation_props(compute_relation(gl_pair(n, np)));
      CHECK(props.symmetric);
      CHECK(props.subrelation_of_theta);
    }
  }
}

TEST_CASE("unitary pair sets") {
  CHECK(pair_set(unitary_pairs(0, 0)) ==
        std::set<std::pair<Partition, Partition>>{{{}, {}}});
  for (int n = 1; n <= 4; ++n)
    CHECK(pair_set(unitary_pairs(n, 0)) ==
          std::set<std::pair<Partition, Partition>>{{{n}, {}}});
  CHECK(pair_set(unitary_pairs(0, 1)) ==
        std::set<std::pair<Partition, Partition>>{{{}, {1}}});
  CHECK(unitary_pairs(1, 1).triples.empty());
  CHECK(pair_set(unitary_pairs(1, 2)) ==
        std::set<std::pair<Partition, Partition>>{{{1}, {1, 1}}});
  CHECK(pair_set(unitary_pairs(2, 1)) ==
        std::set<std::pair<Partition, Partition>>{{{1, 1}, {1}}});
  CHECK(pair_set(unitary_pairs(2, 2)) ==
        std::set<std::pair<Partition, Partition>>{
            {{2}, {2}}, {{2}, {1, 1}}, {{1, 1}, {2}}});
  CHECK(pair_set(unitary_pairs(2, 3)) ==
        std::set<std::pair<Partition, Partition>>{
            {{2}, {3}}, {{1, 1}, {3}}, {{1, 1}, {1, 1, 1}}});
  CHECK(pair_set(unitary_pairs(3, 3)) ==
        std::set<std::pair<Partition, Partition>>{{{1, 1, 1}, {2, 1}},
                                                  {{2, 1}, {1, 1, 1}}});

  for (int n = 0; n <= 4; ++n) {
    for (int np = 0; np <= 4; ++np) {
      ThetaRelation r = unitary_pairs(n, np);
      for (const auto& t : r.triples) {
        CHECK(t.m == 1);
        int d = defect(symbol_of_partition(t.l.plabel));
        int dp = defect(symbol_of_partition(t.r.plabel));
        if ((n + np) % 2 == 0)
          CHECK(dp == (d == 0 ? 0 : -d + 1));
        else
          CHECK(dp == -d - 1);
      }
      auto props = relation_props(r);
      CHECK(props.symmetric);
      CHECK(props.subrelation_of_theta);
    }
  }
}

TEST_CASE("symplectic-orthogonal pair sets") {
  CHECK(sym_pair_set(spo_pairs(1, 1, 1)) ==
        std::set<std::pair<Symbol, Symbol>>{
            {Symbol{{1}, {}}, Symbol{{1}, {0}}},
            {Symbol{{1}, {}}, Symbol{{0}, {1}}},
            {Symbol{{0, 1}, {1}}, Symbol{{1}, {0}}}});
  CHECK(sym_pair_set(spo_pairs(1, 1, -1)) ==
        std::set<std::pair<Symbol, Symbol>>{
            {Symbol{{0, 1}, {1}}, Symbol{{}, {0, 1}}}});
  for (int n = 0; n <= 4; ++n)
    CHECK(sym_pair_set(spo_pairs(n, 0, 1)) ==
          std::set<std::pair<Symbol, Symbol>>{
              {n == 0 ? Symbol{{0}, {}} : Symbol{{n}, {}}, Symbol{{}, {}}}});

  for (int n = 0; n <= 4; ++n) {
    for (int np = 0; np <= 4; ++np) {
      for (int eps : {1, -1}) {
        ThetaRelation r = spo_pairs(n, np, eps);
        for (const auto& t : r.triples) {
          CHECK(t.m == 1);
          CHECK(defect(t.r.symbol) == -defect(t.l.symbol) + eps);
        }
        auto props = relation_props(r);
        CHECK(props.symmetric);
        CHECK(props.subrelation_of_theta);
        CHECK(relation_props(compute_relation(osp_pair(np, n, eps))).symmetric);
      }
    }
  }
}

TEST_CASE("principal series filter") {
  CHECK(sym_pair_set(principal_series_pairs(1, 1, 1)) ==
        sym_pair_set(spo_pairs(1, 1, 1)));
  CHECK(principal_series_pairs(1, 1, -1).triples.empty());
  auto r00 = principal_series_pairs(0, 0, 1);
  REQUIRE(r00.triples.size() == 1);
  CHECK(r00.triples[0].l.symbol == Symbol{{0}, {}});
  CHECK(r00.triples[0].r.symbol == Symbol{{}, {}});
  for (int n = 0; n <= 3; ++n)
    for (int np = 0; np <= 3; ++np)
      CHECK(principal_series_pairs(n, np, -1).triples.empty());
}

TEST_CASE("cuspidal transfer") {
  CHECK(cuspidal_theta(1, spo_pair(2, 1, -1)).cprime == 1);
  CHECK(cuspidal_theta(1, spo_pair(2, 1, -1)).flavor == -1);
  CHECK(cuspidal_theta(1, spo_pair(2, 4, 1)).cprime == 2);
  CHECK(cuspidal_theta(1, spo_pair(2, 4, 1)).flavor == 1);
  CHECK(cuspidal_theta(0, spo_pair(0, 0, 1)).cprime == 0);
  CHECK(cuspidal_theta(0, spo_pair(0, 1, -1)).cprime == 1);
  CHECK(cuspidal_theta(0, u_pair(0, 0)).cprime == 0);
  CHECK(cuspidal_theta(0, u_pair(0, 1)).cprime == 1);
  CHECK(cuspidal_theta(0, u_pair(0, 1)).flavor == -1);
  CHECK(cuspidal_theta(1, u_pair(1, 2)).cprime == 0);
  CHECK(cuspidal_theta(1, u_pair(1, 3)).cprime == 2);
  CHECK_THROWS(cuspidal_theta(1, gl_pair(1, 1)));
}

TEST_CASE("first occurrence and towers") {
  for (int n = 0; n <= 3; ++n) {
    UnipLabel triv = symbol_label({GroupFamily::Sp, n, 0},
                                  n == 0 ? Symbol{{0}, {}} : Symbol{{n}, {}});
    auto fp = first_occurrence(triv, {TowerFamily::OPlusEven},
                               default_scan_limit(n));
    CHECK(fp.resolved);
    CHECK(fp.persistent);
    CHECK(fp.index == 0);
    CHECK(fp.dim == 0);
    auto fm = first_occurrence(triv, {TowerFamily::OMinusEven},
                               default_scan_limit(n));
    CHECK(fm.resolved);
    CHECK(fm.index == n + 1);
    CHECK(fm.dim == 2 * n + 2);
  }

  UnipLabel st = symbol_label({GroupFamily::Sp, 1, 0}, Symbol{{0, 1}, {1}});
  auto f = first_occurrence(st, {TowerFamily::OMinusEven}, 4);
  CHECK(f.resolved);
  CHECK(f.index == 1);
  REQUIRE(f.lift.size() == 1);
  CHECK(f.lift[0].symbol == Symbol{{}, {0, 1}});

  for (int c = 0; c <= 2; ++c) {
    int n = c * c + c;
    UnipLabel pc =
        symbol_label({GroupFamily::Sp, n, 0}, cuspidal_symbol(GroupFamily::Sp, c));
    int samesign = c % 2 == 0 ? 1 : -1;
    auto fsame = first_occurrence(
        pc, {samesign == 1 ? TowerFamily::OPlusEven : TowerFamily::OMinusEven},
        default_scan_limit(n));
    CHECK(fsame.resolved);
    CHECK(fsame.index == c * c);
    auto fother = first_occurrence(
        pc, {samesign == 1 ? TowerFamily::OMinusEven : TowerFamily::OPlusEven},
        default_scan_limit(n));
    CHECK(fother.resolved);
    CHECK(fother.index == (c + 1) * (c + 1));
  }

  // unresolved is flagged, not silent
  UnipLabel st2 = symbol_label({GroupFamily::Sp, 1, 0}, Symbol{{0, 1}, {1}});
  auto f0 = first_occurrence(st2, {TowerFamily::OMinusEven}, 0);
  CHECK_FALSE(f0.resolved);

  // persistence for every label at small rank, all facing towers
  for (int n = 0; n <= 3; ++n) {
    for (const auto& x : unipotent_labels({GroupFamily::Sp, n, 0})) {
      for (TowerFamily tf : {TowerFamily::OPlusEven, TowerFamily::OMinusEven}) {
        auto fo = first_occurrence(x, {tf}, default_scan_limit(n));
        CHECK(fo.resolved);
        CHECK(fo.persistent);
      }
    }
    for (const auto& x : unipotent_labels({GroupFamily::U, n, 0})) {
      for (TowerFamily tf : {TowerFamily::UEven, TowerFamily::UOdd}) {
        auto fo = first_occurrence(x, {tf}, 2 * n + 3);
        CHECK(fo.resolved);
        CHECK(fo.persistent);
      }
    }
  }

  CHECK_THROWS(first_occurrence(st, {TowerFamily::OPlusOdd}, 3));
  CHECK_THROWS(first_occurrence(st, {TowerFamily::Sp}, 3));
}

TEST_CASE("conservation") {
  UnipLabel triv = symbol_label({GroupFamily::Sp, 1, 0}, Symbol{{1}, {}});
  auto c1 = conservation_check(triv);
  CHECK(c1.holds);
  CHECK(c1.dim_plus == 0);
  CHECK(c1.dim_minus == 4);
  CHECK(c1.c_inferred == 1);

  UnipLabel st = symbol_label({GroupFamily::Sp, 1, 0}, Symbol{{0, 1}, {1}});
  auto c2 = conservation_check(st);
  CHECK(c2.holds);
  CHECK(c2.dim_plus == 2);
  CHECK(c2.dim_minus == 2);
  CHECK(c2.c_inferred == 1);

  for (int n = 0; n <= 4; ++n) {
    for (const auto& x : unipotent_labels({GroupFamily::Sp, n, 0})) {
      auto rec = conservation_check(x);
      CHECK(rec.holds);
      CHECK(rec.c_inferred >= 0);
      bool is_cusp = (n == 0 && x.symbol == Symbol{{0}, {}}) ||
                     (n == 2 && x.symbol == Symbol{{}, {0, 1, 2}});
      CHECK((rec.c_inferred == 0) == is_cusp);
    }
  }
}

TEST_CASE("underline map") {
  UnipLabel triv = symbol_label({GroupFamily::Sp, 1, 0}, Symbol{{1}, {}});
  UnipLabel st = symbol_label({GroupFamily::Sp, 1, 0}, Symbol{{0, 1}, {1}});
  GroupKind op1{GroupFamily::Oeven, 1, 1};
  GroupKind om2{GroupFamily::Oeven, 2, -1};
  CHECK(underline_theta(triv, op1).symbol == Symbol{{0}, {1}});
  CHECK(underline_theta(st, op1).symbol == Symbol{{1}, {0}});
  CHECK(underline_theta(st, om2).symbol == Symbol{{1}, {0, 1, 2}});

  UnipLabel e1 = symbol_label(op1, Symbol{{1}, {0}});
  UnipLabel e2 = symbol_label(op1, Symbol{{0}, {1}});
  GroupKind sp1{GroupFamily::Sp, 1, 0};
  CHECK(underline_theta(e1, sp1).symbol == Symbol{{0, 1}, {1}});
  CHECK(underline_theta(e2, sp1).symbol == Symbol{{1}, {}});

  UnipLabel u1 = partition_label({GroupFamily::U, 1, 0}, {1});
  CHECK(underline_theta(u1, {GroupFamily::U, 2, 0}).plabel == Partition{1, 1});
  UnipLabel u2 = partition_label({GroupFamily::U, 2, 0}, {2});
  CHECK_FALSE(try_underline(u2, {GroupFamily::U, 1, 0}).has_value());
  CHECK_THROWS_WITH(underline_theta(u2, {GroupFamily::U, 1, 0}),
                    "not defined at this rank");
  CHECK_THROWS(underline_theta(u1, sp1));

  UnipLabel empt = symbol_label({GroupFamily::Oeven, 0, 1}, Symbol{{}, {}});
  CHECK(underline_theta(empt, {GroupFamily::Sp, 0, 0}).symbol ==
        Symbol{{0}, {}});

  // subrelation property over a rank sweep, both signs
  for (int n = 0; n <= 5; ++n) {
    for (int np = 0; np <= 5; ++np) {
      for (int eps : {1, -1}) {
        auto amb = sym_pair_set(spo_pairs(n, np, eps));
        GroupKind target{GroupFamily::Oeven, np, eps};
        for (const auto& x : unipotent_labels({GroupFamily::Sp, n, 0})) {
          auto u = try_underline(x, target);
          if (u) CHECK(amb.count({x.symbol, u->symbol}) == 1);
        }
        GroupKind tsp{GroupFamily::Sp, n, 0};
        for (const auto& y : unipotent_labels(target)) {
          auto u = try_underline(y, tsp);
          if (u) CHECK(amb.count({u->symbol, y.symbol}) == 1);
        }
      }
      auto uamb = pair_set(unitary_pairs(n, np));
      for (const auto& x : unipotent_labels({GroupFamily::U, n, 0})) {
        auto u = try_underline(x, {GroupFamily::U, np, 0});
        if (u) CHECK(uamb.count({x.plabel, u->plabel}) == 1);
      }
    }
  }

  // semi-persistence: once defined, defined at every larger rank of the tower
  for (int n = 0; n <= 4; ++n) {
    for (int eps : {1, -1}) {
      for (const auto& x : unipotent_labels({GroupFamily::Sp, n, 0})) {
        int d = defect(x.symbol);
        int d0 = (d - 1) / 4;
        int threshold = eps == 1 ? n - 2 * d0 : n + 2 * d0 + 1;
        if (threshold < 0) threshold = 0;
        for (int np = 0; np <= threshold + 4; ++np) {
          bool defined =
              try_underline(x, {GroupFamily::Oeven, np, eps}).has_value();
          CHECK(defined == (np >= threshold));
        }
      }
    }
    // unitary thresholds: n' >= n-c when n+n'+c is even, n' >= n+c+1 when odd
    for (const auto& x : unipotent_labels({GroupFamily::U, n, 0})) {
      int c = two_core(x.plabel).second;
      for (int np = 0; np <= n + c + 5; ++np) {
        bool defined = try_underline(x, {GroupFamily::U, np, 0}).has_value();
        bool expect = (n + np + c) % 2 == 0 ? np >= n - c : np >= n + c + 1;
        CHECK(defined == expect);
      }
    }
  }
}

TEST_CASE("overline map") {
  auto r = overline_theta(spo_pair(1, 1, 1));
  CHECK(r.unmatched.empty());
  UnipLabel st = symbol_label({GroupFamily::Sp, 1, 0}, Symbol{{0, 1}, {1}});
  UnipLabel triv = symbol_label({GroupFamily::Sp, 1, 0}, Symbol{{1}, {}});
  CHECK(r.assigned.at(st).symbol == Symbol{{1}, {0}});
  CHECK(r.assigned.at(triv).symbol == Symbol{{0}, {1}});

  auto r0 = overline_theta(spo_pair(0, 0, 1));
  REQUIRE(r0.assigned.size() == 1);
  CHECK(r0.assigned.begin()->second.symbol == Symbol{{}, {}});

  for (int n = 0; n <= 4; ++n) {
    for (int np = 0; np <= 4; ++np) {
      for (int eps : {1, -1}) {
        auto res = overline_theta(spo_pair(n, np, eps));
        ThetaRelation graph;
        graph.pair = spo_pair(n, np, eps);
        for (const auto& [l, rr] : res.assigned)
          graph.triples.push_back({l, rr, 1});
        auto props = relation_props(graph);
        CHECK(props.one_to_one);
        CHECK(props.subrelation_of_theta);
      }
    }
  }
}

TEST_CASE("relation properties") {
  auto full = spo_pairs(1, 1, 1);
  auto props = relation_props(full);
  CHECK(props.symmetric);
  CHECK_FALSE(props.one_to_one);
  CHECK(props.subrelation_of_theta);
  REQUIRE(props.semi_persistent_witnesses.size() == 1);
  CHECK(props.semi_persistent_witnesses[0] == "defect 1: defined from rank 1 on");

  auto propsm = relation_props(spo_pairs(1, 2, -1));
  REQUIRE(propsm.semi_persistent_witnesses.size() == 1);
  CHECK(propsm.semi_persistent_witnesses[0] ==
        "defect 1: defined from rank 2 on");
}

TEST_CASE("stable range sets are everywhere non-empty") {
  auto nonempty_left = [](const DualPairSpec& p) {
    ThetaRelation r = compute_relation(p);
    std::set<UnipLabel> seen;
    for (const auto& t : r.triples) seen.insert(t.l);
    return seen.size() == unipotent_labels(p.left).size();
  };
  // symplectic side sees every orthogonal label once m >= 2m'
  for (int mp = 0; mp <= 2; ++mp)
    for (int m = 2 * mp; m <= 5; ++m)
      for (int eps : {1, -1})
        CHECK(nonempty_left(osp_pair(mp, m, eps)));
  // orthogonal side: split tower m' >= 2m, non-split m'-1 >= 2m
  for (int m = 0; m <= 2; ++m) {
    for (int mp = 2 * m; mp <= 5; ++mp) CHECK(nonempty_left(spo_pair(m, mp, 1)));
    for (int mp = 2 * m + 1; mp <= 5; ++mp)
      CHECK(nonempty_left(spo_pair(m, mp, -1)));
  }
  for (int n = 0; n <= 2; ++n)
    for (int np = 2 * n; np <= 5; ++np) CHECK(nonempty_left(u_pair(n, np)));
}
