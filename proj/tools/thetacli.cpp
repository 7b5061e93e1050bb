#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <json.hpp>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fftheta/oracle.hpp"
#include "fftheta/partitions.hpp"
#include "fftheta/series.hpp"
#include "fftheta/symbols.hpp"
#include "fftheta/theta.hpp"
#include "fftheta/weyl_b.hpp"

using nlohmann::json;
using namespace fftheta;

// exit codes: 0 success, 2 flag errors, 3 scan limit exceeded,
// 4 comparison mismatch, 5 desk-scale guard exceeded
namespace {

constexpr int kExitFlags = 2;
constexpr int kExitScanLimit = 3;
constexpr int kExitMismatch = 4;
constexpr int kExitGuard = 5;

struct ScanLimitExceeded {
  std::string what;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void emit_csv(const Table& t) {
  for (size_t i = 0; i < t.header.size(); ++i)
    std::cout << (i ? "," : "") << csv_cell(t.header[i]);
  std::cout << "\n";
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i)
      std::cout << (i ? "," : "") << csv_cell(row[i]);
    std::cout << "\n";
  }
}

void emit_pretty(const Table& t) {
  std::vector<size_t> w(t.header.size());
  for (size_t i = 0; i < t.header.size(); ++i) w[i] = t.header[i].size();
  for (const auto& row : t.rows)
    for (size_t i = 0; i < row.size() && i < w.size(); ++i)
      w[i] = std::max(w[i], row[i].size());
  auto line = [&](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      std::cout << cells[i];
      if (i + 1 < cells.size())
        std::cout << std::string(w[i] - cells[i].size() + 2, ' ');
    }
    std::cout << "\n";
  };
  line(t.header);
  size_t total = 0;
  for (size_t i = 0; i < w.size(); ++i) total += w[i] + (i + 1 < w.size() ? 2 : 0);
  std::cout << std::string(total, '-') << "\n";
  for (const auto& row : t.rows) line(row);
}

void emit_table(const std::string& format, const Table& t, const json& j) {
  if (format == "json")
    std::cout << j.dump(2) << "\n";
  else if (format == "csv")
    emit_csv(t);
  else
    emit_pretty(t);
}

int flag_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return kExitFlags;
}

// flag parsing helpers ------------------------------------------------------

int parse_eps(const std::string& s) {
  if (s == "+" || s == "+1" || s == "p" || s == "plus") return 1;
  if (s == "-" || s == "-1" || s == "m" || s == "minus") return -1;
  throw std::invalid_argument("--eps expects + or -");
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',') {
      if (!cur.empty()) {
        size_t used = 0;
        int v = std::stoi(cur, &used);
        if (used != cur.size()) throw std::invalid_argument("bad integer '" + cur + "'");
        out.push_back(v);
        cur.clear();
      }
    } else if (!std::isspace((unsigned char)c)) {
      cur += c;
    }
  }
  return out;
}

Partition parse_partition(const std::string& s) {
  if (s.empty() || s == "0" || s == "[]") return {};
  return normalized(parse_int_list(s));
}

Symbol parse_symbol(const std::string& s) {
  size_t slash = s.find('/');
  if (slash == std::string::npos)
    throw std::invalid_argument("--symbol expects top/bottom, e.g. \"0,1,3/1,2\"");
  Symbol out{parse_int_list(s.substr(0, slash)), parse_int_list(s.substr(slash + 1))};
  std::sort(out.top.begin(), out.top.end());
  std::sort(out.bot.begin(), out.bot.end());
  if (!is_symbol(out)) throw std::invalid_argument("not a symbol: " + s);
  return out;
}

GroupKind parse_group(const std::string& name, int n, const std::string& eps) {
  GroupKind k;
  k.n = n;
  if (name == "sp") {
    k.family = GroupFamily::Sp;
  } else if (name == "o") {
    k.family = GroupFamily::Oeven;
    if (eps.empty()) throw std::invalid_argument("--group o needs --eps");
    k.eps = parse_eps(eps);
  } else if (name == "so") {
    k.family = GroupFamily::SOodd;
  } else if (name == "gl") {
    k.family = GroupFamily::GL;
  } else if (name == "u") {
    k.family = GroupFamily::U;
  } else {
    throw std::invalid_argument("unknown group '" + name + "'");
  }
  return k;
}

int scan_limit_for(int n) {
  const char* env = std::getenv("THETA_SCAN_LIMIT");
  if (!env || !*env) return default_scan_limit(n);
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end || v <= 0) throw std::invalid_argument("THETA_SCAN_LIMIT must be a positive integer");
  return (int)v;
}

std::string family_key(const Symbol& s) { return to_string(distinguished_core(reduced(s))); }

// verbs ---------------------------------------------------------------------

int run_symbols(const std::string& group, int n, const std::string& eps, int defect_filter,
                bool defect_set, const std::string& format) {
  GroupKind kind = parse_group(group, n, eps);
  bool symbolic = kind.family == GroupFamily::Sp || kind.family == GroupFamily::Oeven ||
                  kind.family == GroupFamily::SOodd;
  if (defect_set && !symbolic) return flag_error("--defect applies to symbol families only");

  Table t;
  json rows = json::array();
  std::set<std::string> families;
  if (symbolic) {
    t.header = {"symbol", "rank", "defect", "family", "degenerate"};
    for (const Symbol& s : enumerate_symbols(kind)) {
      SymbolInfo info = analyze(s);
      if (defect_set && info.defect != defect_filter) continue;
      std::string fam = family_key(s);
      families.insert(fam);
      t.rows.push_back({to_string(s), std::to_string(info.rank), std::to_string(info.defect),
                        fam, info.degenerate ? "yes" : "no"});
      rows.push_back({{"symbol", to_string(s)},
                      {"rank", info.rank},
                      {"defect", info.defect},
                      {"family", fam},
                      {"degenerate", info.degenerate}});
    }
  } else {
    t.header = {"partition", "rank"};
    for (const UnipLabel& x : unipotent_labels(kind)) {
      t.rows.push_back({to_string(x.plabel), std::to_string(weight(x.plabel))});
      rows.push_back({{"partition", to_string(x.plabel)}, {"rank", weight(x.plabel)}});
    }
  }
  json j{{"group", to_string(kind)},
         {"count", t.rows.size()},
         {"families", symbolic ? json(families.size()) : json(nullptr)},
         {"rows", rows}};
  emit_table(format, t, j);
  if (format == "pretty")
    std::cout << "# " << t.rows.size() << " labels"
              << (symbolic ? ", " + std::to_string(families.size()) + " families" : "") << "\n";
  return 0;
}

TowerFamily tower_family_of(const GroupKind& k) {
  switch (k.family) {
    case GroupFamily::Oeven:
      return k.eps >= 0 ? TowerFamily::OPlusEven : TowerFamily::OMinusEven;
    case GroupFamily::Oodd:
      return k.eps >= 0 ? TowerFamily::OPlusOdd : TowerFamily::OMinusOdd;
    case GroupFamily::Sp:
      return TowerFamily::Sp;
    case GroupFamily::U:
      return k.n % 2 == 0 ? TowerFamily::UEven : TowerFamily::UOdd;
    default:
      throw std::invalid_argument("no Witt tower for this family");
  }
}

int run_theta(const std::string& pair_name, int n, int nprime, const std::string& eps,
              const std::string& lambda, const std::string& symbol_filter, bool with_first,
              bool with_conservation, const std::string& format) {
  ThetaRelation rel;
  if (pair_name == "sp-o") {
    if (n < 0 || nprime < 0) return flag_error("sp-o needs --n and --nprime");
    rel = compute_relation(spo_pair(n, nprime, parse_eps(eps.empty() ? "+" : eps)));
  } else if (pair_name == "o-sp") {
    if (n < 0 || nprime < 0) return flag_error("o-sp needs --n and --nprime");
    rel = compute_relation(osp_pair(n, nprime, parse_eps(eps.empty() ? "+" : eps)));
  } else if (pair_name == "u-u") {
    if (n < 0 || nprime < 0) return flag_error("u-u needs --n and --nprime");
    rel = compute_relation(u_pair(n, nprime));
  } else if (pair_name == "gl-gl") {
    if (nprime < 0) return flag_error("gl-gl needs --nprime");
    if (!lambda.empty()) {
      Partition lam = parse_partition(lambda);
      rel.pair = gl_pair(weight(lam), nprime);
      for (const auto& [mu, m] : theta_gl(lam, nprime))
        rel.triples.push_back(
            {partition_label(rel.pair.left, lam), partition_label(rel.pair.right, mu), m});
    } else {
      if (n < 0) return flag_error("gl-gl needs --n or --lambda");
      rel = compute_relation(gl_pair(n, nprime));
    }
  } else {
    return flag_error("unknown pair '" + pair_name + "'");
  }

  if (!symbol_filter.empty()) {
    Symbol want = parse_symbol(symbol_filter);
    std::erase_if(rel.triples, [&](const ThetaTriple& tr) {
      bool symbolic = tr.l.kind.family == GroupFamily::Sp ||
                      tr.l.kind.family == GroupFamily::Oeven;
      return !symbolic || !equivalent(tr.l.symbol, want);
    });
  }

  int limit = scan_limit_for(std::max(n, 0));
  TowerFamily tower{};
  if (with_first) tower = tower_family_of(rel.pair.right);

  Table t;
  t.header = {"left", "right", "mult"};
  if (with_first) {
    t.header.push_back("first_n");
    t.header.push_back("first_dim");
    t.header.push_back("persistent");
  }
  if (with_conservation) {
    t.header.push_back("dim_plus");
    t.header.push_back("dim_minus");
    t.header.push_back("c_inferred");
  }

  std::map<UnipLabel, FirstOccurrence> first_cache;
  std::map<UnipLabel, ConservationRecord> cons_cache;
  json rows = json::array();
  for (const ThetaTriple& tr : rel.triples) {
    std::vector<std::string> row{to_string(tr.l), to_string(tr.r), std::to_string(tr.m)};
    json jr{{"left", to_string(tr.l)}, {"right", to_string(tr.r)}, {"mult", tr.m}};
    if (with_first) {
      auto it = first_cache.find(tr.l);
      if (it == first_cache.end())
        it = first_cache.emplace(tr.l, first_occurrence(tr.l, TowerSpec{tower}, limit)).first;
      const FirstOccurrence& fo = it->second;
      if (!fo.resolved)
        throw ScanLimitExceeded{"first occurrence of " + to_string(tr.l) +
                                " unresolved within scan limit " + std::to_string(limit)};
      row.push_back(std::to_string(fo.index));
      row.push_back(std::to_string(fo.dim));
      row.push_back(fo.persistent ? "yes" : "no");
      jr["first_n"] = fo.index;
      jr["first_dim"] = fo.dim;
      jr["persistent"] = fo.persistent;
    }
    if (with_conservation) {
      auto it = cons_cache.find(tr.l);
      if (it == cons_cache.end())
        it = cons_cache.emplace(tr.l, conservation_check(tr.l, limit)).first;
      const ConservationRecord& cr = it->second;
      if (cr.c_inferred < 0)
        throw ScanLimitExceeded{"conservation scan for " + to_string(tr.l) +
                                " unresolved within scan limit " + std::to_string(limit)};
      row.push_back(std::to_string(cr.dim_plus));
      row.push_back(std::to_string(cr.dim_minus));
      row.push_back(std::to_string(cr.c_inferred));
      jr["dim_plus"] = cr.dim_plus;
      jr["dim_minus"] = cr.dim_minus;
      jr["c_inferred"] = cr.c_inferred;
    }
    t.rows.push_back(std::move(row));
    rows.push_back(std::move(jr));
  }

  json j{{"pair", to_string(rel.pair.left) + " x " + to_string(rel.pair.right)},
         {"count", rel.triples.size()},
         {"triples", rows}};
  if (with_first || with_conservation) j["scan_limit"] = limit;
  emit_table(format, t, j);
  return 0;
}

int run_weyl(const std::string& case_name, int nbar, int nbarp, const std::string& format) {
  OmegaCase c;
  if (case_name == "u-odd")
    c = OmegaCase::UOddC;
  else if (case_name == "u-even")
    c = OmegaCase::UEvenC;
  else if (case_name == "u-zero")
    c = OmegaCase::UZero;
  else if (case_name == "spo-1")
    c = OmegaCase::SpOCase1;
  else if (case_name == "spo-2")
    c = OmegaCase::SpOCase2;
  else
    return flag_error("unknown case '" + case_name + "'");
  if (nbar < 0 || nbarp < 0) return flag_error("weyl needs --nbar and --nbarp");

  Table t;
  t.header = {"left", "dim_left", "right", "dim_right", "mult"};
  json rows = json::array();
  for (const OmegaTriple& tr : omega(c, nbar, nbarp)) {
    long long dl = b_dimension(tr.left), dr = b_dimension(tr.right);
    t.rows.push_back({to_string(tr.left), std::to_string(dl), to_string(tr.right),
                      std::to_string(dr), std::to_string(tr.mult)});
    rows.push_back({{"left", to_string(tr.left)},
                    {"dim_left", dl},
                    {"right", to_string(tr.right)},
                    {"dim_right", dr},
                    {"mult", tr.mult}});
  }
  json j{{"case", case_name}, {"nbar", nbar}, {"nbarp", nbarp},
         {"count", t.rows.size()}, {"rows", rows}};
  emit_table(format, t, j);
  return 0;
}

int run_series(const std::string& group, int n, const std::string& eps, long long q,
               const std::string& format) {
  GroupKind kind = parse_group(group, n, eps);
  if (q < 2) return flag_error("--q must be at least 2");
  Int order = group_order(kind, Int(q));
  Int order_pprime = group_order_pprime(kind, Int(q));

  Table t;
  t.header = {"label", "defect", "dim"};
  json rows = json::array();
  for (const UnipLabel& x : unipotent_labels(kind)) {
    bool symbolic =
        kind.family == GroupFamily::Sp || kind.family == GroupFamily::Oeven;
    std::string dstr = symbolic ? std::to_string(defect(x.symbol)) : "-";
    Int d = unipotent_dim(x, Int(q));
    t.rows.push_back({to_string(x), dstr, d.str()});
    rows.push_back({{"label", to_string(x)},
                    {"defect", symbolic ? json(defect(x.symbol)) : json(nullptr)},
                    {"dim", d.str()}});
  }
  json j{{"group", to_string(kind)},   {"q", q},
         {"order", order.str()},       {"order_pprime", order_pprime.str()},
         {"count", t.rows.size()},     {"rows", rows}};
  if (format == "pretty")
    std::cout << "order " << order.str() << "  (p-prime part " << order_pprime.str() << ")\n";
  emit_table(format, t, j);
  return 0;
}

struct OraclePair {
  DualPairSpec spec;
  bool odd_orthogonal = false;  // expected unipotent block is empty
};

OraclePair oracle_pair(const std::string& name) {
  if (name == "sp2-o1")
    return {{{GroupFamily::Sp, 1, 0}, {GroupFamily::Oodd, 0, 1}, PairType::I}, true};
  if (name == "o1-sp2")
    return {{{GroupFamily::Oodd, 0, 1}, {GroupFamily::Sp, 1, 0}, PairType::I}, true};
  if (name == "sp2-o2p") return {spo_pair(1, 1, +1), false};
  if (name == "sp2-o2m") return {spo_pair(1, 1, -1), false};
  if (name == "o2p-sp2") return {osp_pair(1, 1, +1), false};
  if (name == "o2m-sp2") return {osp_pair(1, 1, -1), false};
  if (name == "gl1-gl1") return {gl_pair(1, 1), false};
  if (name == "gl1-gl2") return {gl_pair(1, 2), false};
  throw std::invalid_argument("unknown oracle pair '" + name + "'");
}

ThetaRelation oracle_expected(const OraclePair& op) {
  if (op.odd_orthogonal) {
    ThetaRelation empty;
    empty.pair = op.spec;
    return empty;
  }
  return compute_relation(op.spec);
}

int run_oracle(const std::string& pair_name, int q, int a, bool compare,
               const std::string& format) {
  OraclePair op = oracle_pair(pair_name);
  OracleReport rep = multiplicity_matrix(op.spec, q, a);

  json j = json::parse(report_json(rep));
  BlockCompare bc;
  if (compare) {
    bc = compare_unipotent_block(rep, oracle_expected(op));
    j["compare"] = {{"match", bc.match},
                    {"relabeled", bc.relabeled},
                    {"mismatches", bc.mismatches}};
  }

  if (format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    Table t;
    t.header.push_back("");
    for (const auto& cl : rep.col_labels) t.header.push_back(cl);
    for (size_t r = 0; r < rep.matrix.size(); ++r) {
      std::vector<std::string> row{rep.row_labels[r]};
      for (long long v : rep.matrix[r]) row.push_back(std::to_string(v));
      t.rows.push_back(std::move(row));
    }
    if (format == "csv") {
      emit_csv(t);
      if (compare)
        for (const auto& m : bc.mismatches) std::cout << "mismatch," << csv_cell(m) << "\n";
    } else {
      std::cout << "pair " << to_string(op.spec.left) << " x " << to_string(op.spec.right)
                << "  q " << q << "  a " << a << "\n";
      emit_pretty(t);
      if (!rep.twist_certificate.empty())
        std::cout << "certificate: " << rep.twist_certificate << "\n";
      if (compare) {
        std::cout << "compare: " << (bc.match ? "match" : "MISMATCH")
                  << (bc.relabeled ? " (after relabeling)" : "") << "\n";
        for (const auto& m : bc.mismatches) std::cout << "  " << m << "\n";
      }
    }
  }
  if (compare && !bc.match) return kExitMismatch;
  return 0;
}

// audit checks --------------------------------------------------------------

long long binom(int n, int k) {
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

struct AuditCheck {
  std::string module;
  std::string name;
  bool (*fn)();
};

bool audit_transpose_involution() {
  for (int n = 0; n <= 8; ++n)
    for (const auto& p : partitions_of(n)) {
      if (transpose(transpose(p)) != p) return false;
      if (weight(transpose(p)) != n) return false;
    }
  return true;
}

bool audit_hook_cells() {
  for (int n = 0; n <= 7; ++n)
    for (const auto& p : partitions_of(n)) {
      auto h = hook_lengths(p);
      int cells = 0;
      for (const auto& row : h)
        for (int v : row) {
          if (v <= 0) return false;
          ++cells;
        }
      if (cells != n) return false;
    }
  return true;
}

bool audit_two_core_staircase() {
  for (int n = 0; n <= 8; ++n)
    for (const auto& p : partitions_of(n)) {
      auto [core, d] = two_core(p);
      if (weight(core) != d * (d + 1) / 2) return false;
      for (int i = 0; i < d; ++i)
        if (part(core, i + 1) != d - i) return false;
      if ((n - weight(core)) % 2 != 0) return false;
    }
  return true;
}

bool audit_shift_invariance() {
  for (int n = 0; n <= 3; ++n)
    for (GroupKind k : {GroupKind{GroupFamily::Sp, n, 0}, GroupKind{GroupFamily::Oeven, n, 1},
                        GroupKind{GroupFamily::Oeven, n, -1}})
      for (const Symbol& s : enumerate_symbols(k)) {
        Symbol sh = shifted(s);
        if (srank(sh) != srank(s) || defect(sh) != defect(s)) return false;
        if (!equivalent(sh, s)) return false;
      }
  return true;
}

bool audit_beta_rank() {
  for (int n = 0; n <= 6; ++n)
    for (const auto& p : partitions_of(n)) {
      BetaSet b = beta_of_partition(p);
      if (!is_beta_set(b) || beta_rank(b) != n) return false;
      if (partition_of_beta(b) != p) return false;
    }
  return true;
}

bool audit_symbol_core_defect() {
  for (int n = 0; n <= 6; ++n)
    for (const auto& p : partitions_of(n)) {
      int d = two_core(p).second;
      if (std::abs(defect(symbol_of_partition(p))) != d) return false;
    }
  return true;
}

bool audit_upsilon_round_trip() {
  for (int n = 0; n <= 3; ++n)
    for (GroupKind k : {GroupKind{GroupFamily::Sp, n, 0}, GroupKind{GroupFamily::Oeven, n, 1},
                        GroupKind{GroupFamily::Oeven, n, -1}})
      for (const Symbol& s : enumerate_symbols(k)) {
        int d = defect(s);
        if (!equivalent(upsilon_inv(upsilon(s), d), s)) return false;
        if (srank(s) != weight(upsilon(s)) + upsilon_offset(d)) return false;
      }
  return true;
}

bool audit_dimension_sum() {
  for (int n = 0; n <= 5; ++n) {
    long long order = 1;
    for (int i = 1; i <= n; ++i) order *= 2 * i;
    long long sum = 0;
    for (const auto& b : bipartitions_of(n)) {
      long long d = b_dimension(b);
      sum += d * d;
    }
    if (sum != order) return false;
  }
  return true;
}

bool audit_class_sizes() {
  for (int n = 0; n <= 5; ++n) {
    long long order = 1;
    for (int i = 1; i <= n; ++i) order *= 2 * i;
    long long sum = 0;
    for (const auto& cls : signed_classes(n)) {
      long long z = signed_class_centralizer(cls);
      if (z <= 0 || order % z != 0) return false;
      sum += order / z;
    }
    if (sum != order) return false;
  }
  return true;
}

bool audit_induction_dimension() {
  for (const auto& a : bipartitions_of(1))
    for (const auto& b : bipartitions_of(2)) {
      long long want = binom(3, 1) * b_dimension(a) * b_dimension(b);
      long long got = 0;
      for (const auto& [c, m] : induce(a, b)) got += m * b_dimension(c);
      if (got != want) return false;
    }
  return true;
}

bool audit_relation_symmetry() {
  for (int n = 0; n <= 2; ++n)
    for (int np = 0; np <= 2; ++np)
      for (int eps : {1, -1}) {
        ThetaRelation lr = compute_relation(spo_pair(n, np, eps));
        ThetaRelation rl = compute_relation(osp_pair(np, n, eps));
        std::multiset<std::string> a, b;
        for (const auto& tr : lr.triples)
          a.insert(to_string(tr.l) + "|" + to_string(tr.r) + "|" + std::to_string(tr.m));
        for (const auto& tr : rl.triples)
          b.insert(to_string(tr.r) + "|" + to_string(tr.l) + "|" + std::to_string(tr.m));
        if (a != b) return false;
      }
  return true;
}

bool audit_underline_injective() {
  for (int n = 1; n <= 3; ++n)
    for (int eps : {1, -1})
      for (int np = 0; np <= 4; ++np) {
        GroupKind target{GroupFamily::Oeven, np, eps};
        std::set<UnipLabel> seen;
        for (const UnipLabel& x : unipotent_labels({GroupFamily::Sp, n, 0})) {
          auto y = try_underline(x, target);
          if (!y) continue;
          if (!seen.insert(*y).second) return false;
        }
      }
  return true;
}

bool audit_unipotent_dims_divide() {
  for (int n = 0; n <= 3; ++n)
    for (GroupKind k : {GroupKind{GroupFamily::Sp, n, 0}, GroupKind{GroupFamily::Oeven, n, 1},
                        GroupKind{GroupFamily::Oeven, n, -1}}) {
      Int order = group_order(k, Int(3));
      for (const UnipLabel& x : unipotent_labels(k)) {
        Int d = unipotent_dim(x, Int(3));
        if (d <= 0 || order % d != 0) return false;
      }
    }
  return true;
}

bool audit_small_orders() {
  if (group_order({GroupFamily::Sp, 1, 0}, Int(3)) != 24) return false;
  if (group_order({GroupFamily::Oeven, 1, 1}, Int(3)) != 4) return false;
  if (group_order({GroupFamily::Oeven, 1, -1}, Int(3)) != 8) return false;
  if (group_order({GroupFamily::GL, 1, 0}, Int(3)) != 2) return false;
  if (group_order({GroupFamily::U, 1, 0}, Int(3)) != 4) return false;
  for (GroupKind k : {GroupKind{GroupFamily::Sp, 2, 0}, GroupKind{GroupFamily::GL, 3, 0}}) {
    Int o = group_order(k, Int(5)), op = group_order_pprime(k, Int(5));
    if (o % op != 0) return false;
  }
  return true;
}

int run_audit(const std::string& module, const std::string& format) {
  static const std::vector<AuditCheck> checks = {
      {"partitions", "transpose involution", audit_transpose_involution},
      {"partitions", "hook cell count", audit_hook_cells},
      {"partitions", "two-core staircase", audit_two_core_staircase},
      {"symbols", "shift invariance", audit_shift_invariance},
      {"symbols", "beta set rank preservation", audit_beta_rank},
      {"symbols", "two-core defect agreement", audit_symbol_core_defect},
      {"symbols", "upsilon round trip", audit_upsilon_round_trip},
      {"weyl", "squared dimension sum", audit_dimension_sum},
      {"weyl", "class size sum", audit_class_sizes},
      {"weyl", "induction dimension count", audit_induction_dimension},
      {"theta", "relation symmetry", audit_relation_symmetry},
      {"theta", "underline injectivity", audit_underline_injective},
      {"series", "unipotent dimensions divide the order", audit_unipotent_dims_divide},
      {"series", "small group orders", audit_small_orders},
  };
  bool known = module == "all";
  for (const auto& c : checks) known = known || c.module == module;
  if (!known) return flag_error("unknown module '" + module + "'");

  Table t;
  t.header = {"module", "check", "result"};
  json rows = json::array();
  bool all_ok = true;
  for (const auto& c : checks) {
    if (module != "all" && module != c.module) continue;
    bool ok = c.fn();
    all_ok = all_ok && ok;
    t.rows.push_back({c.module, c.name, ok ? "ok" : "FAIL"});
    rows.push_back({{"module", c.module}, {"check", c.name}, {"ok", ok}});
  }
  json j{{"ok", all_ok}, {"checks", rows}};
  emit_table(format, t, j);
  return all_ok ? 0 : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"combinatorial theta correspondence calculator"};
  app.require_subcommand(1);
  std::string format = "pretty";

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv", "pretty"}));
  };

  std::string group, eps;
  int n = -1, nprime = -1, defect_filter = 0;
  auto* sym = app.add_subcommand("symbols", "enumerate unipotent labels with family data");
  sym->add_option("--group", group, "sp, o, so, gl or u")->required();
  sym->add_option("--n", n, "rank")->required();
  sym->add_option("--eps", eps, "+ or - for even orthogonal");
  auto* defect_opt = sym->add_option("--defect", defect_filter, "keep only this defect");
  add_format(sym);

  std::string pair_name, lambda, symbol_filter;
  bool with_first = false, with_conservation = false;
  auto* th = app.add_subcommand("theta", "dump a correspondence relation");
  th->add_option("--pair", pair_name, "sp-o, o-sp, u-u or gl-gl")->required();
  th->add_option("--n", n, "left rank");
  th->add_option("--nprime", nprime, "right rank");
  th->add_option("--eps", eps, "+ or - for the even orthogonal member");
  th->add_option("--lambda", lambda, "single left partition for gl-gl, e.g. 4,1,1");
  th->add_option("--symbol", symbol_filter, "restrict to one left symbol, e.g. \"0,1,3/1,2\"");
  th->add_flag("--first", with_first, "append first occurrence columns");
  th->add_flag("--conservation", with_conservation, "append conservation columns");
  add_format(th);

  std::string case_name;
  int nbar = -1, nbarp = -1;
  auto* wy = app.add_subcommand("weyl", "decompose the graded correspondence character");
  wy->add_option("--case", case_name, "u-odd, u-even, u-zero, spo-1 or spo-2")->required();
  wy->add_option("--nbar", nbar, "left reflection rank")->required();
  wy->add_option("--nbarp", nbarp, "right reflection rank")->required();
  add_format(wy);

  long long series_q = 3;
  auto* se = app.add_subcommand("series", "unipotent dimensions and group orders");
  se->add_option("--group", group, "sp, o, so, gl or u")->required();
  se->add_option("--n", n, "rank")->required();
  se->add_option("--eps", eps, "+ or - for even orthogonal");
  se->add_option("--q", series_q, "field size");
  add_format(se);

  int oracle_q = 3, oracle_a = 1;
  bool compare = false;
  auto* orc = app.add_subcommand("oracle", "exact Weil restriction multiplicities");
  orc->add_option("--pair", pair_name,
                  "sp2-o1, sp2-o2p, sp2-o2m, o1-sp2, o2p-sp2, o2m-sp2, gl1-gl1 or gl1-gl2")
      ->required();
  orc->add_option("--q", oracle_q, "field size (3 or 5)");
  orc->add_option("--a", oracle_a, "additive character parameter");
  orc->add_flag("--compare", compare, "diff against the combinatorial relation");
  format = "pretty";
  add_format(orc);

  std::string module = "all";
  auto* au = app.add_subcommand("audit", "run module property checks");
  au->add_option("--module", module, "all, partitions, symbols, weyl, theta or series");
  add_format(au);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitFlags;
  }

  try {
    if (sym->parsed())
      return run_symbols(group, n, eps, defect_filter, defect_opt->count() > 0, format);
    if (th->parsed())
      return run_theta(pair_name, n, nprime, eps, lambda, symbol_filter, with_first,
                       with_conservation, format);
    if (wy->parsed()) return run_weyl(case_name, nbar, nbarp, format);
    if (se->parsed()) return run_series(group, n, eps, series_q, format);
    if (orc->parsed()) {
      try {
        return run_oracle(pair_name, oracle_q, oracle_a, compare,
                          orc->count("--format") ? format : "json");
      } catch (const std::invalid_argument& e) {
        std::cerr << "guard: " << e.what() << "\n";
        return kExitGuard;
      }
    }
    if (au->parsed()) return run_audit(module, format);
  } catch (const ScanLimitExceeded& e) {
    std::cerr << "scan limit: " << e.what << "\n";
    return kExitScanLimit;
  } catch (const std::exception& e) {
    return flag_error(e.what());
  }
  return flag_error("no verb given");
}
