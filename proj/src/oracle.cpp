#include "fftheta/oracle.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fftheta {

namespace {

bool all_ones(const std::vector<Cyc>& row) {
  for (const Cyc& v : row)
    if (!(v == Cyc(Rat(1)))) return false;
  return true;
}

int find_trivial_row(const CharTable& T, const char* who) {
  int found = -1;
  for (int r = 0; r < (int)T.rows.size(); ++r) {
    if (T.degrees[r] == 1 && all_ones(T.rows[r])) {
      if (found >= 0) throw std::runtime_error(std::string(who) + ": two all-one rows");
      found = r;
    }
  }
  if (found < 0) throw std::runtime_error(std::string(who) + ": trivial character missing");
  return found;
}

UnipIdent identify_sp1(const FiniteGroupTable& G, const CharTable& T) {
  UnipIdent id;
  int triv = find_trivial_row(T, "identify_unipotent(Sp)");
  int st = -1;
  for (int r = 0; r < (int)T.rows.size(); ++r) {
    if (T.degrees[r] == G.q) {
      if (st >= 0)
        throw std::runtime_error(
            "identify_unipotent(Sp): several characters of degree q, refusing to guess");
      st = r;
    }
  }
  if (st < 0) throw std::runtime_error("identify_unipotent(Sp): no character of degree q");
  id.rows = {triv, st};
  id.labels = {"triv", "St"};
  id.symbols = {Symbol{{1}, {}}, Symbol{{0, 1}, {1}}};
  return id;
}

UnipIdent identify_gl(const FiniteGroupTable& G, const CharTable& T) {
  UnipIdent id;
  int triv = find_trivial_row(T, "identify_unipotent(GL)");
  if (G.kind.n == 1) {
    id.rows = {triv};
    id.labels = {"triv"};
    id.partitions = {{1}};
    return id;
  }
  // Steinberg row pinned through the action on the projective line
  const Fq& F = G.field;
  int q = G.q;
  std::vector<std::vector<int>> lines;  // representative vectors
  for (int x = 0; x < q; ++x) lines.push_back({1, x});
  lines.push_back({0, 1});
  std::vector<Cyc> stvals(T.classes);
  for (int c = 0; c < T.classes; ++c) {
    const PMat& g = G.elems[G.reps[c]];
    int fix = 0;
    for (const auto& v : lines) {
      int w0 = F.add(F.mul(g.at(0, 0), v[0]), F.mul(g.at(0, 1), v[1]));
      int w1 = F.add(F.mul(g.at(1, 0), v[0]), F.mul(g.at(1, 1), v[1]));
      // w parallel to v
      if (F.sub(F.mul(w0, v[1]), F.mul(w1, v[0])) == 0) ++fix;
    }
    stvals[c] = Cyc(Rat(fix - 1));
  }
  int st = -1;
  for (int r = 0; r < (int)T.rows.size(); ++r) {
    if (T.degrees[r] != q) continue;
    bool same = true;
    for (int c = 0; c < T.classes && same; ++c) same = T.rows[r][c] == stvals[c];
    if (same) {
      if (st >= 0) throw std::runtime_error("identify_unipotent(GL): Steinberg row not unique");
      st = r;
    }
  }
  if (st < 0) throw std::runtime_error("identify_unipotent(GL): Steinberg row not found");
  id.rows = {triv, st};
  id.labels = {"triv", "St"};
  id.partitions = {{2}, {1, 1}};
  return id;
}

UnipIdent identify_oeven1(const FiniteGroupTable& G, const CharTable& T) {
  UnipIdent id;
  std::vector<int> so_trivial;
  for (int r = 0; r < (int)T.rows.size(); ++r) {
    if (T.degrees[r] != 1) continue;
    bool triv_on_so = true;
    for (int c = 0; c < T.classes && triv_on_so; ++c) {
      if (pm_det(G.field, G.elems[G.reps[c]]) == 1)
        triv_on_so = T.rows[r][c] == Cyc(Rat(1));
    }
    if (triv_on_so) so_trivial.push_back(r);
  }
  if (so_trivial.size() != 2)
    throw std::runtime_error(
        "identify_unipotent(O even): expected exactly two characters trivial on the rotation "
        "subgroup, found " +
        std::to_string(so_trivial.size()));
  int triv = all_ones(T.rows[so_trivial[0]]) ? so_trivial[0] : so_trivial[1];
  int detc = so_trivial[0] == triv ? so_trivial[1] : so_trivial[0];
  if (!all_ones(T.rows[triv]))
    throw std::runtime_error("identify_unipotent(O even): trivial character missing");
  id.rows = {triv, detc};
  id.labels = {"triv", "det"};
  if (G.kind.eps == 1)
    id.symbols = {Symbol{{1}, {0}}, Symbol{{0}, {1}}};
  else
    id.symbols = {Symbol{{0, 1}, {}}, Symbol{{}, {0, 1}}};
  return id;
}

UnipIdent identify_o1(const FiniteGroupTable& G, const CharTable& T) {
  UnipIdent id;
  if (T.rows.size() != 2)
    throw std::runtime_error("identify_unipotent(O_1): unexpected character count");
  int triv = find_trivial_row(T, "identify_unipotent(O_1)");
  int sgn = 1 - triv;
  id.rows = {triv, sgn};
  id.labels = {"triv", "sgn"};
  id.symbols = {Symbol{{0}, {}}, Symbol{{}, {0}}};
  (void)G;
  return id;
}

}  // namespace

UnipIdent identify_unipotent(const FiniteGroupTable& G, const CharTable& T) {
  switch (G.kind.family) {
    case GroupFamily::Sp:
      if (G.kind.n == 1) return identify_sp1(G, T);
      break;
    case GroupFamily::GL:
      if (G.kind.n <= 2) return identify_gl(G, T);
      break;
    case GroupFamily::Oeven:
      if (G.kind.n == 1) return identify_oeven1(G, T);
      break;
    case GroupFamily::Oodd:
      if (G.kind.n == 0) return identify_o1(G, T);
      break;
    default:
      break;
  }
  throw std::invalid_argument("identify_unipotent: no dictionary for this group kind");
}

OracleReport multiplicity_matrix(const DualPairSpec& pair, int q, int a) {
  PairModel pm = build_pair_model(pair, q, a);
  apply_pair_twist(pm);
  RestrictionCheck rc = verify_restriction(pm);
  if (!rc.ok)
    throw std::runtime_error("multiplicity_matrix: restricted operators failed verification");

  CharTable TL = character_table(pm.left);
  CharTable TR = character_table(pm.right);
  int kl = TL.classes, kr = TR.classes;
  int nl = (int)TL.rows.size(), nr = (int)TR.rows.size();

  std::vector<std::vector<Cyc>> tr(kl, std::vector<Cyc>(kr));
  for (int cl = 0; cl < kl; ++cl)
    for (int cr = 0; cr < kr; ++cr)
      tr[cl][cr] = joint_trace(pm, pm.left.reps[cl], pm.right.reps[cr]);

  long long denom = pm.left.order() * pm.right.order();
  OracleReport rep;
  rep.pair = pair;
  rep.q = q;
  rep.a = a;
  rep.twisted = pm.twisted;
  rep.matrix.assign(nl, std::vector<long long>(nr, 0));
  for (int r = 0; r < nl; ++r)
    for (int s = 0; s < nr; ++s) {
      Cyc acc;
      for (int cl = 0; cl < kl; ++cl)
        for (int cr = 0; cr < kr; ++cr) {
          long long w = (long long)pm.left.classes[cl].size() * pm.right.classes[cr].size();
          acc += Cyc(Rat(w)) * TL.rows[r][cl].conj() * TR.rows[s][cr].conj() * tr[cl][cr];
        }
      acc *= Cyc(Rat(1, denom));
      if (!acc.is_rational())
        throw std::runtime_error("multiplicity_matrix: inner product is irrational");
      Rat v = acc.rational_value();
      if (denominator(v) != 1 || v < 0)
        throw std::runtime_error("multiplicity_matrix: inner product is not a non-negative integer");
      rep.matrix[r][s] = numerator(v).convert_to<long long>();
    }

  long long mass = 0;
  for (int r = 0; r < nl; ++r)
    for (int s = 0; s < nr; ++s) mass += rep.matrix[r][s] * TL.degrees[r] * TR.degrees[s];
  if (mass != pm.model.dim())
    throw std::runtime_error("multiplicity_matrix: dimensions fail to add up to the space");

  for (int r = 0; r < nl; ++r) {
    rep.row_labels.push_back("chi" + std::to_string(r));
    rep.row_dims.push_back(TL.degrees[r]);
  }
  for (int s = 0; s < nr; ++s) {
    rep.col_labels.push_back("chi'" + std::to_string(s));
    rep.col_dims.push_back(TR.degrees[s]);
  }
  rep.row_ident = identify_unipotent(pm.left, TL);
  rep.col_ident = identify_unipotent(pm.right, TR);
  rep.unipotent_rows = rep.row_ident.rows;
  rep.unipotent_cols = rep.col_ident.rows;
  if (pair.pair_type == PairType::I && pair.right.family == GroupFamily::Oeven)
    rep.twist_certificate =
        "orthogonal column dictionary is canonical up to tensoring by the determinant "
        "character; compare under both labelings";
  else if (pair.pair_type == PairType::I && pair.left.family == GroupFamily::Oeven)
    rep.twist_certificate =
        "orthogonal row dictionary is canonical up to tensoring by the determinant "
        "character; compare under both labelings";
  return rep;
}

std::string report_json(const OracleReport& rep) {
  nlohmann::json j;
  j["pair"] = to_string(rep.pair.left) + " x " + to_string(rep.pair.right);
  j["q"] = rep.q;
  j["a"] = std::to_string(rep.a);
  j["matrix"] = rep.matrix;
  j["row_labels"] = rep.row_labels;
  j["col_labels"] = rep.col_labels;
  j["row_dims"] = rep.row_dims;
  j["col_dims"] = rep.col_dims;
  j["unipotent_rows"] = rep.unipotent_rows;
  j["unipotent_cols"] = rep.unipotent_cols;
  auto ident_labels = [](const UnipIdent& id, bool gl) {
    std::vector<std::string> out;
    for (size_t i = 0; i < id.rows.size(); ++i) {
      std::string s = id.labels[i];
      if (gl && i < id.partitions.size())
        s += " " + to_string(id.partitions[i]);
      else if (!gl && i < id.symbols.size())
        s += " " + to_string(id.symbols[i]);
      out.push_back(s);
    }
    return out;
  };
  bool gl = rep.pair.pair_type == PairType::II;
  j["unipotent_row_labels"] = ident_labels(rep.row_ident, gl);
  j["unipotent_col_labels"] = ident_labels(rep.col_ident, gl);
  j["twisted"] = rep.twisted;
  if (rep.twist_certificate.empty())
    j["twist_certificate"] = nullptr;
  else
    j["twist_certificate"] = rep.twist_certificate;
  return j.dump(2);
}

BlockCompare compare_unipotent_block(const OracleReport& rep, const ThetaRelation& expected) {
  BlockCompare out;
  bool gl = rep.pair.pair_type == PairType::II;
  auto key_of = [&](const UnipLabel& u) {
    return gl ? to_string(u.plabel) : to_string(u.symbol);
  };
  std::map<std::pair<std::string, std::string>, long long> want;
  for (const ThetaTriple& t : expected.triples) want[{key_of(t.l), key_of(t.r)}] += t.m;

  auto row_key = [&](size_t i, bool swapped) {
    size_t ii = i;
    if (swapped && rep.row_ident.rows.size() == 2) ii = 1 - i;
    return gl ? to_string(rep.row_ident.partitions[ii]) : to_string(rep.row_ident.symbols[ii]);
  };
  auto col_key = [&](size_t j, bool swapped) {
    size_t jj = j;
    if (swapped && rep.col_ident.rows.size() == 2) jj = 1 - j;
    return gl ? to_string(rep.col_ident.partitions[jj]) : to_string(rep.col_ident.symbols[jj]);
  };

  auto attempt = [&](bool swap_rows, bool swap_cols, std::vector<std::string>* diag) {
    bool ok = true;
    std::map<std::pair<std::string, std::string>, long long> got;
    for (size_t i = 0; i < rep.unipotent_rows.size(); ++i)
      for (size_t j = 0; j < rep.unipotent_cols.size(); ++j) {
        long long v = rep.matrix[rep.unipotent_rows[i]][rep.unipotent_cols[j]];
        got[{row_key(i, swap_rows), col_key(j, swap_cols)}] = v;
      }
    for (const auto& [k, v] : got) {
      auto it = want.find(k);
      long long w = it == want.end() ? 0 : it->second;
      if (v != w) {
        ok = false;
        if (diag) {
          std::ostringstream os;
          os << "(" << k.first << ", " << k.second << "): oracle " << v << ", relation " << w;
          diag->push_back(os.str());
        }
      }
    }
    for (const auto& [k, w] : want) {
      if (got.count(k)) continue;
      ok = false;
      if (diag) {
        std::ostringstream os;
        os << "(" << k.first << ", " << k.second << "): relation " << w
           << " but the pair is absent from the identified block";
        diag->push_back(os.str());
      }
    }
    return ok;
  };

  if (attempt(false, false, nullptr)) {
    out.match = true;
    return out;
  }
  bool may_swap_cols = !gl && rep.pair.right.family == GroupFamily::Oeven;
  bool may_swap_rows = !gl && rep.pair.left.family == GroupFamily::Oeven;
  if ((may_swap_cols && attempt(false, true, nullptr)) ||
      (may_swap_rows && attempt(true, false, nullptr))) {
    out.match = true;
    out.relabeled = true;
    return out;
  }
  attempt(false, false, &out.mismatches);
  return out;
}

}  // namespace fftheta
