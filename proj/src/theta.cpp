#include "fftheta/theta.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fftheta {

DualPairSpec spo_pair(int n, int nprime, int eps) {
  return {{GroupFamily::Sp, n, 0}, {GroupFamily::Oeven, nprime, eps}, PairType::I};
}

DualPairSpec osp_pair(int n, int nprime, int eps) {
  return {{GroupFamily::Oeven, n, eps}, {GroupFamily::Sp, nprime, 0}, PairType::I};
}

DualPairSpec u_pair(int n, int nprime) {
  return {{GroupFamily::U, n, 0}, {GroupFamily::U, nprime, 0}, PairType::I};
}

DualPairSpec gl_pair(int n, int nprime) {
  return {{GroupFamily::GL, n, 0}, {GroupFamily::GL, nprime, 0}, PairType::II};
}

int TowerSpec::anisotropic_dim() const {
  switch (family) {
    case TowerFamily::OPlusEven:
    case TowerFamily::UEven:
    case TowerFamily::Sp:
      return 0;
    case TowerFamily::OPlusOdd:
    case TowerFamily::OMinusOdd:
    case TowerFamily::UOdd:
      return 1;
    case TowerFamily::OMinusEven:
      return 2;
  }
  return 0;
}

UnipLabel symbol_label(const GroupKind& kind, const Symbol& s) {
  UnipLabel x;
  x.kind = kind;
  x.symbol = reduced(s);
  return x;
}

UnipLabel partition_label(const GroupKind& kind, const Partition& p) {
  UnipLabel x;
  x.kind = kind;
  x.plabel = p;
  return x;
}

std::vector<UnipLabel> unipotent_labels(const GroupKind& kind) {
  std::vector<UnipLabel> out;
  switch (kind.family) {
    case GroupFamily::Sp:
    case GroupFamily::SOodd:
    case GroupFamily::Oeven:
      for (const auto& s : enumerate_symbols(kind))
        out.push_back(symbol_label(kind, s));
      break;
    case GroupFamily::GL:
    case GroupFamily::U:
      for (const auto& p : partitions_of(kind.n))
        out.push_back(partition_label(kind, p));
      break;
    default:
      throw std::invalid_argument("no unipotent label set for this kind");
  }
  return out;
}

std::string to_string(const UnipLabel& x) {
  bool symbolic = x.kind.family == GroupFamily::Sp ||
                  x.kind.family == GroupFamily::Oeven;
  return to_string(x.kind) + ":" +
         (symbolic ? to_string(x.symbol) : to_string(x.plabel));
}

long long f_value(const Partition& mu, FReading reading) {
  int r = mu.empty() ? 0 : mu[0];
  std::vector<long long> count(r + 1, 0);
  for (int p : mu) ++count[p];
  long long f = 1;
  for (int s = 1; s <= r; ++s) {
    switch (reading) {
      case FReading::Literal:
        f *= count[s];
        break;
      case FReading::PresentParts:
        if (count[s] > 0) f *= count[s];
        break;
      case FReading::Successor:
        f *= count[s] + 1;
        break;
    }
  }
  return f;
}

std::vector<std::pair<Partition, long long>> theta_gl(const Partition& lam,
                                                      int nprime,
                                                      FReading reading) {
  if (nprime < 0) throw std::invalid_argument("negative rank");
  Partition tl = transpose(lam);
  std::vector<std::pair<Partition, long long>> out;
  for (const auto& lp : partitions_of(nprime)) {
    Partition tlp = transpose(lp);
    if (!close(tlp, tl)) continue;
    Partition mu = intersections(tl, tlp).second;
    long long m = f_value(mu, reading);
    if (m > 0) out.emplace_back(lp, m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ThetaRelation unitary_pairs(int n, int nprime) {
  if (n < 0 || nprime < 0) throw std::invalid_argument("negative rank");
  ThetaRelation rel;
  rel.pair = u_pair(n, nprime);
  bool even = (n + nprime) % 2 == 0;
  for (const auto& lam : partitions_of(n)) {
    Bipartition q = quotient_bipartition(lam);
    int d = defect(symbol_of_partition(lam));
    for (const auto& lp : partitions_of(nprime)) {
      Bipartition qp = quotient_bipartition(lp);
      int dp = defect(symbol_of_partition(lp));
      bool ok;
      if (even) {
        ok = dp == (d == 0 ? 0 : -d + 1) && preceq(q.bottom, qp.top) &&
             preceq(qp.bottom, q.top);
      } else {
        ok = dp == -d - 1 && preceq(q.top, qp.bottom) &&
             preceq(qp.top, q.bottom);
      }
      if (ok)
        rel.triples.push_back({partition_label(rel.pair.left, lam),
                               partition_label(rel.pair.right, lp), 1});
    }
  }
  std::sort(rel.triples.begin(), rel.triples.end());
  return rel;
}

ThetaRelation spo_pairs(int n, int nprime, int eps) {
  if (n < 0 || nprime < 0) throw std::invalid_argument("negative rank");
  if (eps != 1 && eps != -1) throw std::invalid_argument("eps must be +-1");
  ThetaRelation rel;
  rel.pair = spo_pair(n, nprime, eps);
  for (const auto& s : enumerate_symbols(rel.pair.left)) {
    Bipartition u = upsilon(s);
    int d = defect(s);
    for (const auto& t : enumerate_symbols(rel.pair.right)) {
      Bipartition up = upsilon(t);
      int dp = defect(t);
      bool ok;
      if (eps == 1)
        ok = dp == -d + 1 && preceq(up.bottom, u.top) && preceq(u.bottom, up.top);
      else
        ok = dp == -d - 1 && preceq(up.top, u.bottom) && preceq(u.top, up.bottom);
      if (ok)
        rel.triples.push_back({symbol_label(rel.pair.left, s),
                               symbol_label(rel.pair.right, t), 1});
    }
  }
  std::sort(rel.triples.begin(), rel.triples.end());
  return rel;
}

ThetaRelation principal_series_pairs(int n, int nprime, int eps) {
  ThetaRelation rel = spo_pairs(n, nprime, eps);
  std::vector<ThetaTriple> kept;
  for (const auto& t : rel.triples)
    if (defect(t.l.symbol) == 1 && defect(t.r.symbol) == 0) kept.push_back(t);
  rel.triples = std::move(kept);
  return rel;
}

ThetaRelation compute_relation(const DualPairSpec& pair) {
  GroupFamily lf = pair.left.family, rf = pair.right.family;
  if (lf == GroupFamily::Sp && rf == GroupFamily::Oeven)
    return spo_pairs(pair.left.n, pair.right.n, pair.right.eps);
  if (lf == GroupFamily::Oeven && rf == GroupFamily::Sp) {
    ThetaRelation base = spo_pairs(pair.right.n, pair.left.n, pair.left.eps);
    ThetaRelation rel;
    rel.pair = pair;
    for (const auto& t : base.triples) rel.triples.push_back({t.r, t.l, t.m});
    std::sort(rel.triples.begin(), rel.triples.end());
    return rel;
  }
  if (lf == GroupFamily::U && rf == GroupFamily::U)
    return unitary_pairs(pair.left.n, pair.right.n);
  if (lf == GroupFamily::GL && rf == GroupFamily::GL) {
    ThetaRelation rel;
    rel.pair = pair;
    for (const auto& lam : partitions_of(pair.left.n))
      for (const auto& [lp, m] : theta_gl(lam, pair.right.n))
        rel.triples.push_back({partition_label(pair.left, lam),
                               partition_label(pair.right, lp), m});
    std::sort(rel.triples.begin(), rel.triples.end());
    return rel;
  }
  throw std::invalid_argument("unsupported dual pair");
}

std::vector<std::pair<UnipLabel, long long>> theta_set(const UnipLabel& x,
                                                       const GroupKind& target) {
  DualPairSpec pair{x.kind, target,
                    x.kind.family == GroupFamily::GL ? PairType::II : PairType::I};
  ThetaRelation rel = compute_relation(pair);
  std::vector<std::pair<UnipLabel, long long>> out;
  for (const auto& t : rel.triples)
    if (t.l == x) out.emplace_back(t.r, t.m);
  return out;
}

CuspidalTarget cuspidal_theta(int c, const DualPairSpec& pair) {
  if (c < 0) throw std::invalid_argument("negative cuspidal index");
  GroupFamily lf = pair.left.family, rf = pair.right.family;
  if (lf == GroupFamily::Sp && rf == GroupFamily::Oeven) {
    int sign_c = c % 2 == 0 ? 1 : -1;
    if (pair.right.eps == sign_c) return {c, -1};
    return {c + 1, 1};
  }
  if (lf == GroupFamily::Oeven && rf == GroupFamily::Sp) {
    int sign_c = c % 2 == 0 ? 1 : -1;
    if (pair.left.eps != sign_c)
      throw std::invalid_argument(
          "cuspidal transfer undefined from this even orthogonal tower");
    return {c > 0 ? c - 1 : 0, 0};
  }
  if (lf == GroupFamily::U && rf == GroupFamily::U) {
    int parity = ((pair.right.n % 2) + 2) % 2;
    std::vector<int> cands;
    if (c == 0)
      cands = {0, 1};
    else
      cands = {c - 1, c + 1};
    for (int v : cands) {
      if (v * (v + 1) / 2 % 2 == parity)
        return {v, v * (v + 1) / 2 % 2 == 0 ? 1 : -1};
    }
    throw std::logic_error("no cuspidal target in the requested parity");
  }
  throw std::invalid_argument(
      "cuspidal transfer needs a symplectic-even-orthogonal or unitary pair");
}

int default_scan_limit(int n) { return 2 * n + 2; }

FirstOccurrence first_occurrence(const UnipLabel& x, const TowerSpec& tower,
                                 int scan_limit) {
  if (scan_limit < 0) throw std::invalid_argument("negative scan limit");
  GroupKind proto;
  switch (tower.family) {
    case TowerFamily::OPlusEven:
      proto = {GroupFamily::Oeven, 0, 1};
      break;
    case TowerFamily::OMinusEven:
      proto = {GroupFamily::Oeven, 0, -1};
      break;
    case TowerFamily::Sp:
      proto = {GroupFamily::Sp, 0, 0};
      break;
    case TowerFamily::UEven:
    case TowerFamily::UOdd:
      proto = {GroupFamily::U, 0, 0};
      break;
    default:
      throw std::invalid_argument(
          "odd orthogonal towers are outside the symbol calculus");
  }
  bool compatible =
      (x.kind.family == GroupFamily::Sp && proto.family == GroupFamily::Oeven) ||
      (x.kind.family == GroupFamily::Oeven && proto.family == GroupFamily::Sp) ||
      (x.kind.family == GroupFamily::U && proto.family == GroupFamily::U);
  if (!compatible)
    throw std::invalid_argument("label kind does not face the requested tower");
  int start = 0, step = 1;
  if (tower.family == TowerFamily::UEven) step = 2;
  if (tower.family == TowerFamily::UOdd) {
    start = 1;
    step = 2;
  }
  FirstOccurrence fo;
  fo.label = x;
  fo.tower = tower;
  for (int idx = start; idx <= scan_limit; idx += step) {
    GroupKind target = proto;
    target.n = idx;
    auto ts = theta_set(x, target);
    if (!ts.empty()) {
      if (!fo.resolved) {
        fo.resolved = true;
        fo.persistent = true;
        fo.index = idx;
        fo.dim = proto.family == GroupFamily::U ? idx : 2 * idx;
        for (const auto& [lab, m] : ts) fo.lift.push_back(lab);
      }
    } else if (fo.resolved) {
      fo.persistent = false;
    }
  }
  return fo;
}

ConservationRecord conservation_check(const UnipLabel& x, int scan_limit) {
  if (x.kind.family != GroupFamily::Sp)
    throw std::invalid_argument("conservation check takes a symplectic label");
  int n = x.kind.n;
  if (scan_limit < 0) scan_limit = default_scan_limit(n);
  FirstOccurrence fp = first_occurrence(x, {TowerFamily::OPlusEven}, scan_limit);
  FirstOccurrence fm = first_occurrence(x, {TowerFamily::OMinusEven}, scan_limit);
  ConservationRecord rec;
  if (!fp.resolved || !fm.resolved) return rec;
  rec.dim_plus = fp.dim;
  rec.dim_minus = fm.dim;
  int rem = 4 * n + 2 - rec.dim_plus - rec.dim_minus;
  if (rem >= 0 && rem % 2 == 0) {
    rec.c_inferred = rem / 2;
    rec.holds = true;
  }
  return rec;
}

namespace {

int triangular(int c) { return c * (c + 1) / 2; }

}  // namespace

std::optional<UnipLabel> try_underline(const UnipLabel& x,
                                       const GroupKind& target) {
  GroupFamily xf = x.kind.family, tf = target.family;
  if ((xf == GroupFamily::Sp && tf == GroupFamily::Oeven) ||
      (xf == GroupFamily::Oeven && tf == GroupFamily::Sp)) {
    int eps = xf == GroupFamily::Sp ? target.eps : x.kind.eps;
    Bipartition u = upsilon(x.symbol);
    int d = defect(x.symbol);
    int dp = eps == 1 ? -d + 1 : -d - 1;
    int r = (target.n - upsilon_offset(dp)) - (x.kind.n - upsilon_offset(d));
    if (r < 0) return std::nullopt;
    Bipartition up = eps == 1 ? Bipartition{union_part(u.bottom, r), u.top}
                              : Bipartition{u.bottom, union_part(u.top, r)};
    return symbol_label(target, upsilon_inv(up, dp));
  }
  if (xf == GroupFamily::U && tf == GroupFamily::U) {
    int c = two_core(x.plabel).second;
    int d = defect(symbol_of_partition(x.plabel));
    bool even = (x.kind.n + target.n) % 2 == 0;
    int dp = even ? (d == 0 ? 0 : -d + 1) : -d - 1;
    int cp = dp < 0 ? -dp : dp;
    int num = (target.n - triangular(cp)) - (x.kind.n - triangular(c));
    if (num < 0 || num % 2 != 0) return std::nullopt;
    int r = num / 2;
    Bipartition q = quotient_bipartition(x.plabel);
    Bipartition qp = even ? Bipartition{union_part(q.bottom, r), q.top}
                          : Bipartition{q.bottom, union_part(q.top, r)};
    return partition_label(target, partition_of_quotient(qp, cp));
  }
  throw std::invalid_argument("underline map needs (Sp,O), (O,Sp) or (U,U)");
}

UnipLabel underline_theta(const UnipLabel& x, const GroupKind& target) {
  auto r = try_underline(x, target);
  if (!r) throw std::domain_error("not defined at this rank");
  return *r;
}

namespace {

// q-degree of the unipotent dimension polynomial for a partition label
int partition_ord(const Partition& p) {
  int n = weight(p);
  Partition t = transpose(p);
  int nstat = 0;
  for (int i = 0; i < length(t); ++i) nstat += i * t[i];
  return n * (n - 1) / 2 - nstat;
}

int label_ord(const UnipLabel& x) {
  if (x.kind.family == GroupFamily::Sp || x.kind.family == GroupFamily::Oeven)
    return ord(x.symbol);
  return partition_ord(x.plabel);
}

}  // namespace

LabelOrder default_label_order() {
  return [](const UnipLabel& a, const UnipLabel& b) {
    bool as = a.kind.family == GroupFamily::Sp ||
              a.kind.family == GroupFamily::Oeven;
    bool bs = b.kind.family == GroupFamily::Sp ||
              b.kind.family == GroupFamily::Oeven;
    if (as && bs) {
      Bipartition ua = upsilon(a.symbol), ub = upsilon(b.symbol);
      return std::tuple(defect(a.symbol), ua.top, ua.bottom) <
             std::tuple(defect(b.symbol), ub.top, ub.bottom);
    }
    return a.plabel < b.plabel;
  };
}

OverlineResult overline_theta(const DualPairSpec& pair, const LabelOrder& order) {
  LabelOrder cmp = order ? order : default_label_order();
  ThetaRelation rel = compute_relation(pair);
  std::map<UnipLabel, std::vector<UnipLabel>> partners;
  for (const auto& t : rel.triples) partners[t.l].push_back(t.r);
  std::vector<UnipLabel> lefts = unipotent_labels(pair.left);
  std::stable_sort(lefts.begin(), lefts.end(), cmp);
  OverlineResult out;
  std::set<UnipLabel> taken;
  for (const auto& x : lefts) {
    const UnipLabel* best = nullptr;
    for (const auto& cand : partners[x]) {
      if (taken.count(cand)) continue;
      if (!best || label_ord(cand) > label_ord(*best) ||
          (label_ord(cand) == label_ord(*best) && cmp(cand, *best)))
        best = &cand;
    }
    if (best) {
      out.assigned[x] = *best;
      taken.insert(*best);
    } else {
      out.unmatched.push_back(x);
    }
  }
  return out;
}

RelationProps relation_props(const ThetaRelation& r) {
  RelationProps out;

  DualPairSpec swapped{r.pair.right, r.pair.left, r.pair.pair_type};
  try {
    ThetaRelation sw = compute_relation(swapped);
    std::vector<ThetaTriple> mirrored;
    for (const auto& t : r.triples) mirrored.push_back({t.r, t.l, t.m});
    std::sort(mirrored.begin(), mirrored.end());
    out.symmetric = mirrored == sw.triples;
  } catch (const std::exception&) {
    out.symmetric = false;
  }

  std::map<UnipLabel, int> ldeg, rdeg;
  bool oto = true;
  for (const auto& t : r.triples) {
    if (++ldeg[t.l] > 1 || ++rdeg[t.r] > 1 || t.m != 1) oto = false;
  }
  out.one_to_one = oto;

  try {
    ThetaRelation full = compute_relation(r.pair);
    std::map<std::pair<UnipLabel, UnipLabel>, long long> ambient;
    for (const auto& t : full.triples) ambient[{t.l, t.r}] += t.m;
    out.subrelation_of_theta = true;
    for (const auto& t : r.triples)
      if (ambient[{t.l, t.r}] < t.m) out.subrelation_of_theta = false;
  } catch (const std::exception&) {
    out.subrelation_of_theta = false;
  }

  GroupFamily lf = r.pair.left.family, rf = r.pair.right.family;
  bool tower_like = (lf == GroupFamily::Sp && rf == GroupFamily::Oeven) ||
                    (lf == GroupFamily::Oeven && rf == GroupFamily::Sp) ||
                    (lf == GroupFamily::U && rf == GroupFamily::U);
  if (tower_like) {
    int start = 0, step = 1;
    if (lf == GroupFamily::U) {
      start = ((r.pair.right.n % 2) + 2) % 2;
      step = 2;
    }
    std::map<int, std::string> by_defect;
    for (const auto& x : unipotent_labels(r.pair.left)) {
      int d = lf == GroupFamily::U ? defect(symbol_of_partition(x.plabel))
                                   : defect(x.symbol);
      if (by_defect.count(d)) continue;
      int bound = x.kind.n + 2 * (std::abs(d) + 2);
      int first = -1;
      bool gap = false;
      for (int idx = start; idx <= bound; idx += step) {
        GroupKind target = r.pair.right;
        target.n = idx;
        bool def = try_underline(x, target).has_value();
        if (def && first < 0) first = idx;
        if (!def && first >= 0) gap = true;
      }
      std::ostringstream os;
      os << "defect " << d << ": ";
      if (first < 0)
        os << "never defined up to rank " << bound;
      else if (gap)
        os << "THRESHOLD VIOLATION";
      else
        os << "defined from rank " << first << " on";
      by_defect[d] = os.str();
    }
    for (const auto& [d, w] : by_defect) out.semi_persistent_witnesses.push_back(w);
  }
  return out;
}

}  // namespace fftheta
