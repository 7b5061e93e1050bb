#include "fftheta/series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "fftheta/poly.hpp"

namespace fftheta {

namespace {

Int ipow(const Int& q, long long e) {
  Int out = 1;
  for (long long i = 0; i < e; ++i) out *= q;
  return out;
}

Int order_impl(const GroupKind& kind, const Int& q, bool with_p) {
  if (kind.n < 0) throw std::invalid_argument("negative rank");
  if (q < 2) throw std::invalid_argument("field size must be at least 2");
  long long n = kind.n;
  Int out = 1;
  switch (kind.family) {
    case GroupFamily::GL:
      if (with_p) out *= ipow(q, n * (n - 1) / 2);
      for (long long i = 1; i <= n; ++i) out *= ipow(q, i) - 1;
      return out;
    case GroupFamily::U:
      if (with_p) out *= ipow(q, n * (n - 1) / 2);
      for (long long i = 1; i <= n; ++i)
        out *= ipow(q, i) - (i % 2 == 0 ? 1 : -1);
      return out;
    case GroupFamily::Sp:
    case GroupFamily::SOodd:
      if (with_p) out *= ipow(q, n * n);
      for (long long i = 1; i <= n; ++i) out *= ipow(q, 2 * i) - 1;
      return out;
    case GroupFamily::Oodd:
      out = 2;
      if (with_p) out *= ipow(q, n * n);
      for (long long i = 1; i <= n; ++i) out *= ipow(q, 2 * i) - 1;
      return out;
    case GroupFamily::Oeven:
      if (kind.n == 0) return 1;
      if (kind.eps != 1 && kind.eps != -1)
        throw std::invalid_argument("even orthogonal kind needs a tower sign");
      out = 2;
      if (with_p) out *= ipow(q, n * (n - 1));
      out *= ipow(q, n) - kind.eps;
      for (long long i = 1; i + 1 <= n; ++i) out *= ipow(q, 2 * i) - 1;
      return out;
  }
  throw std::invalid_argument("unknown group kind");
}

// hook-length dimension of the general linear unipotent labelled by lam,
// evaluated at base Q; Q < 0 encodes the unitary twist
Int gl_dim_at(const Partition& lam, const Int& Q) {
  long long nl = 0;
  for (std::size_t i = 0; i < lam.size(); ++i)
    nl += static_cast<long long>(i) * lam[i];
  Int num = ipow(Q, nl);
  int w = weight(lam);
  for (int i = 1; i <= w; ++i) num *= ipow(Q, i) - 1;
  Int den = 1;
  for (const auto& row : hook_lengths(lam))
    for (int h : row) den *= ipow(Q, h) - 1;
  if (den == 0 || num % den != 0)
    throw std::logic_error("hook quotient is not a polynomial value");
  return num / den;
}

// sign of the quadratic space underlying the non-(+-1) part: each
// self-dual packet of multiplicity m sits in an O of type (-1)^m, paired
// packets are hyperbolic
int orbit_sign(const SemisimpleSpectrum& s) {
  int w = 1;
  for (const auto& o : s.other_orbits)
    if (o.type == OrbitType::USelfDual && o.mult % 2 == 1) w = -w;
  return w;
}

void check_spectrum(const GroupKind& g, const SemisimpleSpectrum& s) {
  if (s.nu1 < 0 || s.nu_minus1 < 0)
    throw std::invalid_argument("negative eigenvalue multiplicity");
  for (const auto& o : s.other_orbits)
    if (o.size < 1 || o.mult < 1)
      throw std::invalid_argument(
          "orbit entries need positive size and multiplicity");
  if (s.weighted_size() != spectrum_rank(g))
    throw std::invalid_argument("spectrum does not fill the torus");
}

std::vector<EndoFactor> orbit_factors(const GroupKind& g,
                                      const SemisimpleSpectrum& s) {
  std::vector<EndoFactor> out;
  for (const auto& o : s.other_orbits) {
    EndoFactor f;
    f.slots = o.size * o.mult;
    if (g.family == GroupFamily::U && o.type == OrbitType::GLPair &&
        o.size % 2 != 0)
      throw std::invalid_argument(
          "a paired orbit spans an even number of coordinates");
    f.kind = {o.type == OrbitType::GLPair ? GroupFamily::GL : GroupFamily::U,
              o.mult, 0};
    f.field_degree = o.size;
    out.push_back(f);
  }
  return out;
}

Symbol swapped(const Symbol& s) {
  Symbol t;
  t.top = s.bot;
  t.bot = s.top;
  return reduced(t);
}

Symbol sgn_twist(const UnipLabel& x) {
  if (x.kind.family == GroupFamily::Oeven) return swapped(x.symbol);
  return x.symbol;
}

int defect_residue(const Symbol& s) { return ((defect(s) % 4) + 4) % 4; }

void check_symbol_label(const UnipLabel& x, const GroupKind& want) {
  if (x.kind != want)
    throw std::invalid_argument("component label on the wrong group");
  if (srank(x.symbol) != want.n)
    throw std::invalid_argument("component symbol has the wrong rank");
  int res = defect_residue(x.symbol);
  int need;
  if (want.family == GroupFamily::Oeven)
    need = want.eps == 1 ? 0 : 2;
  else
    need = 1;
  if (res != need)
    throw std::invalid_argument("component symbol lies in the wrong tower");
}

void check_partition_label(const UnipLabel& x, const GroupKind& want) {
  if (x.kind != want)
    throw std::invalid_argument("component label on the wrong group");
  if (!is_partition(x.plabel) || weight(x.plabel) != want.n)
    throw std::invalid_argument("component partition has the wrong size");
}

bool default_oracle(const DualPairSpec& p, const UnipLabel& a,
                    const UnipLabel& b) {
  ThetaRelation rel = compute_relation(p);
  for (const auto& t : rel.triples)
    if (t.l == a && t.r == b) return true;
  return false;
}

using OrbitDatum = std::pair<SpectrumOrbit, Partition>;

std::vector<OrbitDatum> orbit_data(const SeriesLabel& x) {
  std::vector<OrbitDatum> out;
  for (std::size_t i = 0; i < x.u_ne.size(); ++i)
    out.push_back({x.spectrum.other_orbits[i], x.u_ne[i]});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

int SemisimpleSpectrum::weighted_size() const {
  int total = nu1 + nu_minus1;
  for (const auto& o : other_orbits) total += o.size * o.mult;
  return total;
}

int spectrum_rank(const GroupKind& g) {
  if (g.n < 0) throw std::invalid_argument("negative rank");
  return g.n;
}

std::vector<EndoscopicShape> endoscopic_decompose(const GroupKind& g,
                                                  const SemisimpleSpectrum& s) {
  if (g.family == GroupFamily::GL)
    throw std::invalid_argument(
        "general linear spectra have no two-sided decomposition here");
  check_spectrum(g, s);
  auto ne = orbit_factors(g, s);
  std::vector<EndoscopicShape> out;
  auto push = [&](EndoFactor f1, EndoFactor fm, NaturalPart nat) {
    EndoscopicShape sh;
    sh.factor_1 = std::move(f1);
    sh.factor_minus1 = std::move(fm);
    sh.factor_ne = ne;
    sh.natural = nat;
    out.push_back(std::move(sh));
  };
  switch (g.family) {
    case GroupFamily::Sp: {
      EndoFactor f1{{GroupFamily::Sp, s.nu1, 0}, 1, s.nu1};
      if (s.nu_minus1 == 0) {
        push(f1, {{GroupFamily::Oeven, 0, 1}, 1, 0}, NaturalPart::MinusSide);
      } else {
        push(f1, {{GroupFamily::Oeven, s.nu_minus1, 1}, 1, s.nu_minus1},
             NaturalPart::MinusSide);
        push(f1, {{GroupFamily::Oeven, s.nu_minus1, -1}, 1, s.nu_minus1},
             NaturalPart::MinusSide);
      }
      break;
    }
    case GroupFamily::SOodd:
    case GroupFamily::Oodd:
      push({{GroupFamily::SOodd, s.nu1, 0}, 1, s.nu1},
           {{GroupFamily::Sp, s.nu_minus1, 0}, 1, s.nu_minus1},
           NaturalPart::MinusSide);
      break;
    case GroupFamily::Oeven: {
      if (g.eps != 1 && g.eps != -1)
        throw std::invalid_argument("even orthogonal kind needs a tower sign");
      int w = orbit_sign(s);
      auto with_signs = [&](int e1, int em) {
        push({{GroupFamily::Oeven, s.nu1, s.nu1 == 0 ? 1 : e1}, 1, s.nu1},
             {{GroupFamily::Oeven, s.nu_minus1, s.nu_minus1 == 0 ? 1 : em}, 1,
              s.nu_minus1},
             NaturalPart::MinusSide);
      };
      if (s.nu1 > 0 && s.nu_minus1 > 0) {
        with_signs(1, g.eps * w);
        with_signs(-1, -g.eps * w);
      } else if (s.nu1 > 0) {
        with_signs(g.eps * w, 1);
      } else if (s.nu_minus1 > 0) {
        with_signs(1, g.eps * w);
      } else {
        if (g.eps * w != 1)
          throw std::invalid_argument("inconsistent spectrum");
        with_signs(1, 1);
      }
      break;
    }
    case GroupFamily::U:
      push({{GroupFamily::U, s.nu1, 0}, 1, s.nu1},
           {{GroupFamily::U, s.nu_minus1, 0}, 1, s.nu_minus1},
           NaturalPart::PlusSide);
      break;
    default:
      throw std::invalid_argument("unknown group kind");
  }
  return out;
}

SeriesLabel unipotent_series_label(const UnipLabel& x) {
  SeriesLabel y;
  y.group = x.kind;
  int n = spectrum_rank(x.kind);
  y.spectrum.nu1 = n;
  Symbol sp0 = cuspidal_symbol(GroupFamily::Sp, 0);
  switch (x.kind.family) {
    case GroupFamily::Sp:
      y.u1 = x;
      y.u_minus1 = symbol_label({GroupFamily::Oeven, 0, 1}, Symbol{});
      break;
    case GroupFamily::SOodd:
      y.u1 = x;
      y.u_minus1 = symbol_label({GroupFamily::Sp, 0, 0}, sp0);
      break;
    case GroupFamily::Oodd:
      y.u1 = symbol_label({GroupFamily::SOodd, n, 0}, x.symbol);
      y.u_minus1 = symbol_label({GroupFamily::Sp, 0, 0}, sp0);
      y.zeta = 1;
      break;
    case GroupFamily::Oeven:
      y.u1 = x;
      y.u_minus1 = symbol_label({GroupFamily::Oeven, 0, 1}, Symbol{});
      break;
    case GroupFamily::U:
      y.u1 = x;
      y.u_minus1 = partition_label({GroupFamily::U, 0, 0}, {});
      break;
    default:
      throw std::invalid_argument("no series label for this kind");
  }
  validate_series(y);
  return y;
}

void validate_series(const SeriesLabel& x) {
  check_spectrum(x.group, x.spectrum);
  const auto& s = x.spectrum;
  if (x.u_ne.size() != s.other_orbits.size())
    throw std::invalid_argument("one partition per orbit entry is required");
  for (std::size_t i = 0; i < x.u_ne.size(); ++i)
    if (!is_partition(x.u_ne[i]) || weight(x.u_ne[i]) != s.other_orbits[i].mult)
      throw std::invalid_argument(
          "orbit partition does not match the orbit multiplicity");
  orbit_factors(x.group, s);
  switch (x.group.family) {
    case GroupFamily::Sp: {
      check_symbol_label(x.u1, {GroupFamily::Sp, s.nu1, 0});
      int em = x.u_minus1.kind.eps;
      if (em != 1 && em != -1)
        throw std::invalid_argument("minus component needs a tower sign");
      if (s.nu_minus1 == 0 && em != 1)
        throw std::invalid_argument("empty minus component must be split");
      check_symbol_label(x.u_minus1, {GroupFamily::Oeven, s.nu_minus1, em});
      break;
    }
    case GroupFamily::SOodd:
    case GroupFamily::Oodd:
      check_symbol_label(x.u1, {GroupFamily::SOodd, s.nu1, 0});
      check_symbol_label(x.u_minus1, {GroupFamily::Sp, s.nu_minus1, 0});
      break;
    case GroupFamily::Oeven: {
      int e1 = x.u1.kind.eps, em = x.u_minus1.kind.eps;
      if (s.nu1 == 0 && e1 != 1)
        throw std::invalid_argument("empty plus component must be split");
      if (s.nu_minus1 == 0 && em != 1)
        throw std::invalid_argument("empty minus component must be split");
      check_symbol_label(x.u1, {GroupFamily::Oeven, s.nu1, e1});
      check_symbol_label(x.u_minus1, {GroupFamily::Oeven, s.nu_minus1, em});
      if (e1 * em * orbit_sign(s) != x.group.eps)
        throw std::invalid_argument("inconsistent spectrum");
      break;
    }
    case GroupFamily::U:
      check_partition_label(x.u1, {GroupFamily::U, s.nu1, 0});
      check_partition_label(x.u_minus1, {GroupFamily::U, s.nu_minus1, 0});
      break;
    default:
      throw std::invalid_argument("no series structure for this kind");
  }
  if (x.group.family == GroupFamily::Oodd) {
    if (x.zeta != 1 && x.zeta != -1)
      throw std::invalid_argument("full odd orthogonal series carry a sign tag");
  } else if (x.zeta != 0) {
    throw std::invalid_argument("only full odd orthogonal series carry a tag");
  }
  if (x.central_sign < -1 || x.central_sign > 1)
    throw std::invalid_argument("central sign must be -1, 0 or +1");
}

Int group_order(const GroupKind& kind, const Int& q) {
  return order_impl(kind, q, true);
}

Int group_order_pprime(const GroupKind& kind, const Int& q) {
  return order_impl(kind, q, false);
}

Int unipotent_dim(const UnipLabel& x, const Int& q) {
  switch (x.kind.family) {
    case GroupFamily::Sp:
    case GroupFamily::SOodd:
    case GroupFamily::Oodd:
    case GroupFamily::Oeven:
      return dimension_at(x.symbol, q);
    case GroupFamily::GL:
      return gl_dim_at(x.plabel, q);
    case GroupFamily::U: {
      Int v = gl_dim_at(x.plabel, -q);
      return v < 0 ? Int(-v) : v;
    }
  }
  throw std::invalid_argument("unknown group kind");
}

Int jordan_dim(const SeriesLabel& x, long long q) {
  validate_series(x);
  Int Q(q);
  GroupKind ambient = x.group;
  if (ambient.family == GroupFamily::Oodd) ambient.family = GroupFamily::SOodd;
  Int num = group_order_pprime(ambient, Q);
  Int den = 1;
  num *= unipotent_dim(x.u1, Q);
  den *= group_order_pprime(x.u1.kind, Q);
  num *= unipotent_dim(x.u_minus1, Q);
  den *= group_order_pprime(x.u_minus1.kind, Q);
  auto ne = orbit_factors(x.group, x.spectrum);
  for (std::size_t i = 0; i < ne.size(); ++i) {
    Int Qd = ipow(Q, ne[i].field_degree);
    num *= unipotent_dim(partition_label(ne[i].kind, x.u_ne[i]), Qd);
    den *= group_order_pprime(ne[i].kind, Qd);
  }
  if (num % den != 0)
    throw std::logic_error("series dimension is not integral");
  return num / den;
}

std::vector<std::pair<Symbol, Symbol>> e_pi_set(const SeriesLabel& x) {
  validate_series(x);
  std::vector<std::pair<Symbol, Symbol>> out;
  for (int t1 = 0; t1 < 2; ++t1) {
    for (int t2 = 0; t2 < 2; ++t2) {
      Symbol a = t1 ? sgn_twist(x.u1) : x.u1.symbol;
      Symbol b = t2 ? sgn_twist(x.u_minus1) : x.u_minus1.symbol;
      std::pair<Symbol, Symbol> cand{a, b};
      if (std::find(out.begin(), out.end(), cand) == out.end())
        out.push_back(std::move(cand));
    }
  }
  return out;
}

namespace {

void check_uu(const SeriesLabel& a, const SeriesLabel& b,
              const UnipPairOracle& mem, AdmissibleResult& res) {
  bool c1 = a.spectrum.nu_minus1 == b.spectrum.nu_minus1 &&
            a.u_minus1.plabel == b.u_minus1.plabel &&
            orbit_data(a) == orbit_data(b);
  if (!c1) res.reasons.push_back("clause (1)");
  DualPairSpec p = u_pair(a.spectrum.nu1, b.spectrum.nu1);
  if (!mem(p, partition_label(p.left, a.u1.plabel),
           partition_label(p.right, b.u1.plabel)))
    res.reasons.push_back("clause (2)");
}

// a on the symplectic side, b on the even orthogonal side
void check_sp_oeven(const SeriesLabel& a, const SeriesLabel& b,
                    const UnipPairOracle& mem, AdmissibleResult& res) {
  if (orbit_data(a) != orbit_data(b)) res.reasons.push_back("clause (1)");
  bool c2 = a.spectrum.nu_minus1 == b.spectrum.nu_minus1 &&
            a.u_minus1.kind.eps == b.u_minus1.kind.eps;
  bool c2_twist = false;
  if (c2) {
    if (a.u_minus1.symbol == b.u_minus1.symbol)
      ;
    else if (a.u_minus1.symbol == sgn_twist(b.u_minus1))
      c2_twist = true;
    else
      c2 = false;
  }
  if (!c2)
    res.reasons.push_back("clause (2)");
  else if (c2_twist)
    res.reasons.push_back("clause (2) matched through a sgn twist");
  DualPairSpec p =
      spo_pair(a.spectrum.nu1, b.spectrum.nu1, b.u1.kind.eps);
  UnipLabel l = symbol_label(p.left, a.u1.symbol);
  if (mem(p, l, symbol_label(p.right, b.u1.symbol))) {
  } else if (mem(p, l, symbol_label(p.right, sgn_twist(b.u1)))) {
    res.reasons.push_back("clause (3) matched through a sgn twist");
  } else {
    res.reasons.push_back("clause (3)");
  }
}

// a on the symplectic side, b on the odd orthogonal side
void check_sp_oodd(const SeriesLabel& a, const SeriesLabel& b,
                   const UnipPairOracle& mem, AdmissibleResult& res) {
  if (orbit_data(a) != orbit_data(b)) res.reasons.push_back("clause (1)");
  if (!(a.spectrum.nu1 == b.spectrum.nu_minus1 &&
        a.u1.symbol == b.u_minus1.symbol))
    res.reasons.push_back("clause (2)");
  DualPairSpec p = spo_pair(b.spectrum.nu1, a.spectrum.nu_minus1,
                            a.u_minus1.kind.eps);
  UnipLabel l = symbol_label(p.left, b.u1.symbol);
  if (mem(p, l, symbol_label(p.right, a.u_minus1.symbol))) {
  } else if (mem(p, l, symbol_label(p.right, sgn_twist(a.u_minus1)))) {
    res.reasons.push_back("clause (3) matched through a sgn twist");
  } else {
    res.reasons.push_back("clause (3)");
  }
  if (b.group.family == GroupFamily::Oodd) {
    int eff = b.central_sign != 0 ? b.central_sign : b.zeta;
    if (eff != b.zeta) res.reasons.push_back("clause (4)");
  }
}

bool failed(const AdmissibleResult& r) {
  for (const auto& m : r.reasons)
    if (m.find("twist") == std::string::npos) return true;
  return false;
}

}  // namespace

AdmissibleResult admissible(const DualPairSpec& pair, const SeriesLabel& left,
                            const SeriesLabel& right,
                            UnipPairOracle unip_oracle) {
  if (left.group != pair.left || right.group != pair.right)
    throw std::invalid_argument("series do not live on the pair's members");
  validate_series(left);
  validate_series(right);
  UnipPairOracle mem = unip_oracle ? std::move(unip_oracle)
                                   : UnipPairOracle(default_oracle);
  AdmissibleResult res;
  GroupFamily lf = pair.left.family, rf = pair.right.family;
  auto is_oodd = [](GroupFamily f) {
    return f == GroupFamily::SOodd || f == GroupFamily::Oodd;
  };
  if (lf == GroupFamily::U && rf == GroupFamily::U)
    check_uu(left, right, mem, res);
  else if (lf == GroupFamily::Sp && rf == GroupFamily::Oeven)
    check_sp_oeven(left, right, mem, res);
  else if (lf == GroupFamily::Oeven && rf == GroupFamily::Sp)
    check_sp_oeven(right, left, mem, res);
  else if (lf == GroupFamily::Sp && is_oodd(rf))
    check_sp_oodd(left, right, mem, res);
  else if (is_oodd(lf) && rf == GroupFamily::Sp)
    check_sp_oodd(right, left, mem, res);
  else
    throw std::invalid_argument("no reduction is available for this pair");
  res.ok = !failed(res);
  return res;
}

int cuspidal_rank(GroupFamily family, int c) {
  if (c < 0) throw std::invalid_argument("negative cuspidal index");
  switch (family) {
    case GroupFamily::Sp:
    case GroupFamily::SOodd:
    case GroupFamily::Oodd:
      return c * c + c;
    case GroupFamily::Oeven:
      return c * c;
    case GroupFamily::U:
      return c * (c + 1) / 2;
    case GroupFamily::GL:
      if (c == 0) return 0;
      throw std::invalid_argument(
          "general linear groups have no higher cuspidal unipotents");
  }
  throw std::invalid_argument("unknown group kind");
}

CuspidalSupport hc_transport(const CuspidalSupport& support,
                             const DualPairSpec& pair) {
  if (support.group != pair.left)
    throw std::invalid_argument("support lives on the wrong group");
  if (support.r < 0) throw std::invalid_argument("negative torus part");
  if (support.n0 != cuspidal_rank(support.group.family, support.c))
    throw std::invalid_argument("support rank does not match the cuspidal tag");
  if (support.n0 + support.r != support.group.n)
    throw std::invalid_argument("support does not fill the rank");
  if (support.group.family == GroupFamily::Oeven &&
      support.group.eps != (support.c % 2 == 0 ? 1 : -1))
    throw std::invalid_argument("cuspidal tag lives on the other tower");
  CuspidalTarget tgt = cuspidal_theta(support.c, pair);
  CuspidalSupport out;
  out.group = pair.right;
  out.c = tgt.cprime;
  out.n0 = cuspidal_rank(pair.right.family, tgt.cprime);
  out.r = pair.right.n - out.n0;
  if (out.r < 0) throw std::domain_error("series absent");
  return out;
}

std::string to_string(const SemisimpleSpectrum& s) {
  std::ostringstream os;
  os << "s[1^" << s.nu1 << " (-1)^" << s.nu_minus1;
  for (const auto& o : s.other_orbits)
    os << " " << (o.type == OrbitType::GLPair ? "gl" : "u") << "(" << o.size
       << ")^" << o.mult;
  os << "]";
  return os.str();
}

}  // namespace fftheta
