#include "fftheta/symbols.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fftheta {

// beta sets -----------------------------------------------------------------

bool is_beta_set(const BetaSet& x) {
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0) return false;
    if (i + 1 < x.size() && x[i] >= x[i + 1]) return false;
  }
  return true;
}

int beta_rank(const BetaSet& x) {
  int s = 0;
  for (int v : x) s += v;
  int m = static_cast<int>(x.size());
  return s - m * (m - 1) / 2;
}

BetaSet beta_shift(const BetaSet& x, int k) {
  if (k < 0) throw std::invalid_argument("negative shift");
  BetaSet y = x;
  for (int t = 0; t < k; ++t) {
    for (int& v : y) ++v;
    y.insert(y.begin(), 0);
  }
  return y;
}

BetaSet beta_reduced(BetaSet x) {
  while (!x.empty() && x.front() == 0) {
    x.erase(x.begin());
    for (int& v : x) --v;
  }
  return x;
}

BetaSet beta_of_partition(const Partition& p) {
  int h = length(p);
  int c = two_core(p).second;
  BetaSet x;
  if ((h + c) % 2 == 0) {
    for (int i = h; i >= 1; --i) x.push_back(p[i - 1] + h - i);
  } else {
    x.push_back(0);
    for (int i = h; i >= 1; --i) x.push_back(p[i - 1] + h - i + 1);
  }
  return x;
}

Partition partition_of_beta(const BetaSet& x) {
  if (!is_beta_set(x)) throw std::invalid_argument("not a beta set");
  int m = static_cast<int>(x.size());
  Partition p;
  for (int i = m - 1; i >= 0; --i) {
    int v = x[i] - i;
    if (v > 0) p.push_back(v);
  }
  return p;
}

// symbols -------------------------------------------------------------------

bool is_symbol(const Symbol& s) { return is_beta_set(s.top) && is_beta_set(s.bot); }

int srank(const Symbol& s) {
  int sum = 0;
  for (int v : s.top) sum += v;
  for (int v : s.bot) sum += v;
  int m = static_cast<int>(s.top.size() + s.bot.size());
  return sum - (m - 1) * (m - 1) / 4;
}

int defect(const Symbol& s) {
  return static_cast<int>(s.top.size()) - static_cast<int>(s.bot.size());
}

Symbol shifted(const Symbol& s, int k) {
  return {beta_shift(s.top, k), beta_shift(s.bot, k)};
}

Symbol reduced(Symbol s) {
  while (!s.top.empty() && !s.bot.empty() && s.top.front() == 0 &&
         s.bot.front() == 0) {
    s.top.erase(s.top.begin());
    s.bot.erase(s.bot.begin());
    for (int& v : s.top) --v;
    for (int& v : s.bot) --v;
  }
  return s;
}

bool equivalent(const Symbol& a, const Symbol& b) {
  return reduced(a) == reduced(b);
}

Symbol transposed(const Symbol& s) { return {s.bot, s.top}; }

bool is_distinguished(const Symbol& s) {
  Symbol r = reduced(s);
  int d = defect(r);
  if (d != 0 && d != 1) return false;
  // merged interleaving a1 <= b1 <= a2 <= b2 <= ...
  size_t i = 0, j = 0;
  int prev = -1;
  bool top_turn = true;
  while (i < r.top.size() || j < r.bot.size()) {
    if (top_turn) {
      if (i >= r.top.size()) return false;
      if (r.top[i] < prev) return false;
      prev = r.top[i++];
    } else {
      if (j >= r.bot.size()) return false;
      if (r.bot[j] < prev) return false;
      prev = r.bot[j++];
    }
    top_turn = !top_turn;
  }
  return true;
}

bool is_degenerate(const Symbol& s) {
  Symbol r = reduced(s);
  return r.top == r.bot;
}

SymbolInfo analyze(const Symbol& s) {
  if (!is_symbol(s)) throw std::invalid_argument("malformed symbol");
  SymbolInfo info;
  info.rank = srank(s);
  info.defect = defect(s);
  info.reduced_form = reduced(s);
  info.distinguished = is_distinguished(s);
  info.degenerate = is_degenerate(s);
  return info;
}

Symbol symbol_of_partition(const Partition& p) {
  BetaSet x = beta_of_partition(p);
  int c = two_core(p).second;
  BetaSet evens, odds;
  for (int v : x) (v % 2 == 0 ? evens : odds).push_back(v);
  if (c % 2 == 0) return {odds, evens};
  return {evens, odds};
}

namespace {

Partition destaircase(const BetaSet& row) {
  int r = static_cast<int>(row.size());
  std::vector<int> parts;
  for (int i = r; i >= 1; --i) parts.push_back(row[i - 1] - (i - 1));
  return normalized(parts);
}

BetaSet staircase_row(const Partition& p, int r) {
  BetaSet row;
  for (int i = 1; i <= r; ++i) row.push_back(part(p, r + 1 - i) + (i - 1));
  return row;
}

}  // namespace

Bipartition quotient_bipartition(const Partition& p) {
  Symbol s = symbol_of_partition(p);
  auto halve = [](const BetaSet& row) {
    BetaSet h;
    for (int v : row) h.push_back(v / 2);
    return h;
  };
  return {destaircase(halve(s.top)), destaircase(halve(s.bot))};
}

Partition partition_of_quotient(const Bipartition& q, int c) {
  if (c < 0) throw std::invalid_argument("negative core length");
  int rt, rb;
  if (c % 2 == 0) {
    rb = std::max(length(q.bottom), length(q.top) - c);
    rt = rb + c;
  } else {
    rt = std::max(length(q.top), length(q.bottom) - c);
    rb = rt + c;
  }
  BetaSet htop = staircase_row(q.top, rt);
  BetaSet hbot = staircase_row(q.bottom, rb);
  // top row holds the odd entries of the beta set iff c is even
  BetaSet x;
  for (int v : htop) x.push_back(c % 2 == 0 ? 2 * v + 1 : 2 * v);
  for (int v : hbot) x.push_back(c % 2 == 0 ? 2 * v : 2 * v + 1);
  std::sort(x.begin(), x.end());
  return partition_of_beta(x);
}

Bipartition upsilon(const Symbol& s) {
  return {destaircase(s.top), destaircase(s.bot)};
}

int upsilon_offset(int d) {
  return d % 2 == 0 ? d * d / 4 : (d * d - 1) / 4;
}

Symbol upsilon_inv(const Bipartition& b, int d) {
  int rt, rb;
  if (d >= 0) {
    rt = std::max({length(b.top), length(b.bottom) + d, d});
    rb = rt - d;
  } else {
    rb = std::max({length(b.bottom), length(b.top) - d, -d});
    rt = rb + d;
  }
  return {staircase_row(b.top, rt), staircase_row(b.bottom, rb)};
}

// families ------------------------------------------------------------------

namespace {

struct SingleSplit {
  BetaSet doubles;
  std::vector<int> all_singles;          // sorted
  std::set<int> top_only, bot_only;
};

SingleSplit split_singles(const Symbol& s) {
  SingleSplit out;
  std::set<int> top(s.top.begin(), s.top.end());
  std::set<int> bot(s.bot.begin(), s.bot.end());
  for (int v : top)
    if (bot.count(v))
      out.doubles.push_back(v);
    else
      out.top_only.insert(v);
  for (int v : bot)
    if (!top.count(v)) out.bot_only.insert(v);
  for (int v : out.top_only) out.all_singles.push_back(v);
  for (int v : out.bot_only) out.all_singles.push_back(v);
  std::sort(out.all_singles.begin(), out.all_singles.end());
  return out;
}

BetaSet merged(BetaSet a, const BetaSet& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  return a;
}

}  // namespace

Symbol distinguished_core(const Symbol& s) {
  Symbol r = reduced(s);
  SingleSplit sp = split_singles(r);
  BetaSet ztop, zbot;
  for (size_t i = 0; i < sp.all_singles.size(); ++i)
    (i % 2 == 0 ? ztop : zbot).push_back(sp.all_singles[i]);
  return {merged(ztop, sp.doubles), merged(zbot, sp.doubles)};
}

Symbol singles(const Symbol& z) {
  Symbol r = reduced(z);
  SingleSplit sp = split_singles(r);
  return {BetaSet(sp.top_only.begin(), sp.top_only.end()),
          BetaSet(sp.bot_only.begin(), sp.bot_only.end())};
}

bool is_subsymbol(const Symbol& m, const Symbol& z) {
  return std::includes(z.top.begin(), z.top.end(), m.top.begin(), m.top.end()) &&
         std::includes(z.bot.begin(), z.bot.end(), m.bot.begin(), m.bot.end());
}

Symbol family_member(const Symbol& z, const Symbol& m) {
  if (!is_subsymbol(m, singles(z)))
    throw std::invalid_argument("M is not a subsymbol of the singles of Z");
  Symbol r = reduced(z);
  std::set<int> mt(m.top.begin(), m.top.end());
  std::set<int> mb(m.bot.begin(), m.bot.end());
  BetaSet top, bot;
  for (int v : r.top)
    if (!mt.count(v)) top.push_back(v);
  for (int v : r.bot)
    if (!mb.count(v)) bot.push_back(v);
  Symbol out{merged(top, m.bot), merged(bot, m.top)};
  return out;
}

Symbol family_add(const Symbol& a, const Symbol& b) {
  Symbol za = distinguished_core(a), zb = distinguished_core(b);
  if (za != zb) throw std::invalid_argument("symbols lie in different families");
  auto moved = [&](const Symbol& x) {
    Symbol r = reduced(x);
    std::set<int> xtop(r.top.begin(), r.top.end());
    Symbol zi = singles(za);
    Symbol m;
    for (int v : zi.top)
      if (!xtop.count(v)) m.top.push_back(v);
    for (int v : zi.bot)
      if (xtop.count(v)) m.bot.push_back(v);
    return m;
  };
  Symbol ma = moved(a), mb = moved(b);
  auto symdiff = [](const BetaSet& u, const BetaSet& v) {
    BetaSet d;
    std::set_symmetric_difference(u.begin(), u.end(), v.begin(), v.end(),
                                  std::back_inserter(d));
    return d;
  };
  return family_member(za, {symdiff(ma.top, mb.top), symdiff(ma.bot, mb.bot)});
}

std::vector<Symbol> family_of(const Symbol& z, int size_parity) {
  Symbol zi = singles(z);
  std::vector<std::pair<int, int>> sl;  // (value, row 0=top)
  for (int v : zi.top) sl.emplace_back(v, 0);
  for (int v : zi.bot) sl.emplace_back(v, 1);
  int k = static_cast<int>(sl.size());
  std::vector<Symbol> out;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    if (__builtin_popcount(mask) % 2 != size_parity % 2) continue;
    Symbol m;
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) (sl[i].second == 0 ? m.top : m.bot).push_back(sl[i].first);
    std::sort(m.top.begin(), m.top.end());
    std::sort(m.bot.begin(), m.bot.end());
    out.push_back(family_member(z, m));
  }
  std::sort(out.begin(), out.end(), [](const Symbol& a, const Symbol& b) {
    return std::tuple(defect(a), a.top, a.bot) < std::tuple(defect(b), b.top, b.bot);
  });
  return out;
}

// enumeration ---------------------------------------------------------------

std::vector<Symbol> enumerate_symbols(const GroupKind& kind) {
  int want;  // defect residue mod 4
  switch (kind.family) {
    case GroupFamily::Sp:
    case GroupFamily::SOodd:
      want = 1;
      break;
    case GroupFamily::Oeven:
      if (kind.eps == 1)
        want = 0;
      else if (kind.eps == -1)
        want = 2;
      else
        throw std::invalid_argument("even orthogonal kind needs a tower sign");
      break;
    default:
      throw std::invalid_argument("symbol enumeration covers Sp and even O only");
  }
  int n = kind.n;
  if (n < 0) throw std::invalid_argument("negative rank");
  std::vector<Symbol> out;
  for (int d = -(2 * n + 3); d <= 2 * n + 3; ++d) {
    if (((d % 4) + 4) % 4 != want) continue;
    int off = upsilon_offset(d);
    if (off > n) continue;
    for (const auto& b : bipartitions_of(n - off)) out.push_back(upsilon_inv(b, d));
  }
  std::sort(out.begin(), out.end(), [](const Symbol& a, const Symbol& b) {
    return std::tuple(defect(a), a.top, a.bot) < std::tuple(defect(b), b.top, b.bot);
  });
  return out;
}

Symbol cuspidal_symbol(GroupFamily family, int c) {
  if (c < 0) throw std::invalid_argument("negative cuspidal index");
  BetaSet row;
  int top_len;
  if (family == GroupFamily::Sp || family == GroupFamily::SOodd)
    top_len = 2 * c + 1;
  else if (family == GroupFamily::Oeven)
    top_len = 2 * c;
  else
    throw std::invalid_argument("no cuspidal symbol for this family");
  for (int i = 0; i < top_len; ++i) row.push_back(i);
  if (c % 2 == 0) return {row, {}};
  return {{}, row};
}

// generic degrees -----------------------------------------------------------

Poly generic_degree(const Symbol& s) {
  Symbol r = reduced(s);
  int m = static_cast<int>(r.top.size() + r.bot.size());
  if (m == 0) return Poly(Rat(1));
  int d = defect(r);
  int n = srank(r);

  Poly theta(Rat(1));
  for (size_t i = 0; i < r.top.size(); ++i)
    for (size_t j = i + 1; j < r.top.size(); ++j)
      theta = theta * q_diff(r.top[j], r.top[i]);
  for (size_t i = 0; i < r.bot.size(); ++i)
    for (size_t j = i + 1; j < r.bot.size(); ++j)
      theta = theta * q_diff(r.bot[j], r.bot[i]);
  for (int a : r.top)
    for (int b : r.bot) theta = theta * q_sum(a, b);

  Poly group(Rat(1));
  int two_exp;
  if (((d % 2) + 2) % 2 == 1) {
    for (int i = 1; i <= n; ++i) group = group * q_diff(2 * i, 0);
    two_exp = m / 2;
  } else {
    int eps = ((d % 4) + 4) % 4 == 0 ? 1 : -1;
    if (n == 0) return Poly(Rat(1));
    group = Poly::monomial(n) - Poly(Rat(eps));
    for (int i = 1; i <= n - 1; ++i) group = group * q_diff(2 * i, 0);
    two_exp = m / 2 - 1;
  }

  int binsum = 0;
  for (int i = 1; m - 2 * i >= 2; ++i) {
    int t = m - 2 * i;
    binsum += t * (t - 1) / 2;
  }

  Poly denom = Poly::monomial(binsum);
  auto hooks_of = [&](const BetaSet& row) {
    for (int z : row)
      for (int i = 1; i <= z; ++i) denom = denom * q_diff(2 * i, 0);
  };
  hooks_of(r.top);
  hooks_of(r.bot);

  Poly deg = (group * theta).div_exact(denom);
  Rat scale(1);
  for (int i = 0; i < two_exp; ++i) scale /= 2;
  if (is_degenerate(r)) scale /= 2;
  return deg * scale;
}

int ord(const Symbol& s) { return generic_degree(s).degree(); }

Int dimension_at(const Symbol& s, const Int& q) {
  Rat v = generic_degree(s).eval(Rat(q));
  if (denominator(v) != 1) throw std::runtime_error("non-integral dimension");
  return numerator(v);
}

// printing ------------------------------------------------------------------

std::string to_string(const Symbol& s) {
  auto row = [](const BetaSet& r) {
    if (r.empty()) return std::string("-");
    std::ostringstream os;
    for (size_t i = 0; i < r.size(); ++i) os << (i ? " " : "") << r[i];
    return os.str();
  };
  return "(" + row(s.top) + " // " + row(s.bot) + ")";
}

std::string to_string(const GroupKind& k) {
  std::string sign = k.eps == 1 ? "+" : k.eps == -1 ? "-" : "";
  switch (k.family) {
    case GroupFamily::GL:
      return "GL(" + std::to_string(k.n) + ")";
    case GroupFamily::U:
      return "U(" + std::to_string(k.n) + ")";
    case GroupFamily::Sp:
      return "Sp(" + std::to_string(k.n) + ")";
    case GroupFamily::SOodd:
      return "SOodd(" + std::to_string(k.n) + ")";
    case GroupFamily::Oeven:
      return "O" + sign + "(" + std::to_string(k.n) + ")";
    case GroupFamily::Oodd:
      return "Oodd" + sign + "(" + std::to_string(k.n) + ")";
  }
  return "?";
}

}  // namespace fftheta
