#pragma once

#include <compare>
#include <string>
#include <vector>

#include "fftheta/partitions.hpp"
#include "fftheta/poly.hpp"

namespace fftheta {

// strictly increasing non-negative integers
using BetaSet = std::vector<int>;

struct Symbol {
  BetaSet top;  // Lambda^*, A
  BetaSet bot;  // Lambda_*, B
  bool operator==(const Symbol&) const = default;
  auto operator<=>(const Symbol&) const = default;
};

enum class GroupFamily { GL, U, Sp, SOodd, Oeven, Oodd };

struct GroupKind {
  GroupFamily family{};
  int n = 0;
  int eps = 0;  // +1 / -1 tower sign where applicable, else 0
  bool operator==(const GroupKind&) const = default;
  auto operator<=>(const GroupKind&) const = default;
};

struct SymbolInfo {
  int rank = 0;
  int defect = 0;
  Symbol reduced_form;
  bool distinguished = false;
  bool degenerate = false;
};

// beta sets -----------------------------------------------------------------

bool is_beta_set(const BetaSet& x);
int beta_rank(const BetaSet& x);
BetaSet beta_shift(const BetaSet& x, int k = 1);
BetaSet beta_reduced(BetaSet x);

// beta set X_lambda with rank |lambda|; parity of |X| controlled by the
// 2-core so that the odd entries outnumber the even ones by l(core)
BetaSet beta_of_partition(const Partition& p);
Partition partition_of_beta(const BetaSet& x);

// symbols -------------------------------------------------------------------

bool is_symbol(const Symbol& s);
int srank(const Symbol& s);
int defect(const Symbol& s);
Symbol shifted(const Symbol& s, int k = 1);
Symbol reduced(Symbol s);
bool equivalent(const Symbol& a, const Symbol& b);
Symbol transposed(const Symbol& s);
bool is_distinguished(const Symbol& s);
bool is_degenerate(const Symbol& s);
SymbolInfo analyze(const Symbol& s);

// rows of X_lambda split by parity, odd entries in the top row when l(core)
// is even; defect comes out as +l(core) / -l(core)
Symbol symbol_of_partition(const Partition& p);

// the same rows halved and destaircased: the 2-quotient as a bipartition,
// in the slot order of symbol_of_partition
Bipartition quotient_bipartition(const Partition& p);

// inverse of quotient_bipartition for a prescribed 2-core staircase length c
Partition partition_of_quotient(const Bipartition& q, int c);

Bipartition upsilon(const Symbol& s);
Symbol upsilon_inv(const Bipartition& b, int defect);

// rank offset of the defect-d stratum: rank = |upsilon| + offset
int upsilon_offset(int defect);

// families ------------------------------------------------------------------

Symbol distinguished_core(const Symbol& s);    // Z
Symbol singles(const Symbol& z);               // Z_I, rows as in Z
bool is_subsymbol(const Symbol& m, const Symbol& z);
Symbol family_member(const Symbol& z, const Symbol& m);  // Lambda_M
Symbol family_add(const Symbol& a, const Symbol& b);
// all Lambda_M with |M| of the given parity (0 = even, 1 = odd)
std::vector<Symbol> family_of(const Symbol& z, int size_parity);

// enumeration ---------------------------------------------------------------

std::vector<Symbol> enumerate_symbols(const GroupKind& kind);
Symbol cuspidal_symbol(GroupFamily family, int c);

// generic degrees -----------------------------------------------------------

// degree polynomial of pi_Lambda; for a degenerate symbol this is the degree
// of each of the two constituents (the halving is applied)
Poly generic_degree(const Symbol& s);
int ord(const Symbol& s);
Int dimension_at(const Symbol& s, const Int& q);

std::string to_string(const Symbol& s);
std::string to_string(const GroupKind& k);

}  // namespace fftheta
