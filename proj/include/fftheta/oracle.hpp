#pragma once

#include <string>
#include <vector>

#include "fftheta/groups.hpp"
#include "fftheta/theta.hpp"
#include "fftheta/weil.hpp"

namespace fftheta {

// character-table rows recognized as unipotent, with combinatorial labels
struct UnipIdent {
  std::vector<int> rows;
  std::vector<std::string> labels;
  std::vector<Symbol> symbols;        // classical kinds
  std::vector<Partition> partitions;  // GL kinds
};

// Matches the explicitly known unipotent characters of the desk-scale groups
// against table rows; throws with a diagnostic when the expected pattern is
// not found or not unique.
UnipIdent identify_unipotent(const FiniteGroupTable& G, const CharTable& T);

struct OracleReport {
  DualPairSpec pair{};
  int q = 0;
  int a = 1;
  std::vector<std::vector<long long>> matrix;  // rows: left characters
  std::vector<std::string> row_labels, col_labels;
  std::vector<long long> row_dims, col_dims;
  std::vector<int> unipotent_rows, unipotent_cols;
  UnipIdent row_ident, col_ident;
  bool twisted = false;
  std::string twist_certificate;  // empty means null
};

// Decomposes the modified oscillator bimodule of the pair over F_q with
// additive character psi_a.  Exact arithmetic throughout; throws when any
// inner product fails to be a non-negative integer or when the operator
// tables fail verification.
OracleReport multiplicity_matrix(const DualPairSpec& pair, int q, int a);

std::string report_json(const OracleReport& rep);

struct BlockCompare {
  bool match = false;
  bool relabeled = false;  // orthogonal columns exchanged by the det relabel
  std::vector<std::string> mismatches;
};

// compares the unipotent block of a report against a combinatorial relation,
// allowing the reported determinant relabel on an even orthogonal member
BlockCompare compare_unipotent_block(const OracleReport& rep, const ThetaRelation& expected);

}  // namespace fftheta
