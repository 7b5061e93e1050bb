#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fftheta/symbols.hpp"

namespace fftheta {

enum class PairType { I, II };

struct DualPairSpec {
  GroupKind left;
  GroupKind right;
  PairType pair_type = PairType::I;
  bool operator==(const DualPairSpec&) const = default;
};

DualPairSpec spo_pair(int n, int nprime, int eps);
DualPairSpec osp_pair(int n, int nprime, int eps);
DualPairSpec u_pair(int n, int nprime);
DualPairSpec gl_pair(int n, int nprime);

enum class TowerFamily { OPlusEven, OMinusEven, OPlusOdd, OMinusOdd, UEven, UOdd, Sp };

struct TowerSpec {
  TowerFamily family = TowerFamily::OPlusEven;
  int anisotropic_dim() const;
};

// unipotent representation label: a symbol for Sp / even O, a partition for
// GL / U
struct UnipLabel {
  GroupKind kind;
  Symbol symbol;
  Partition plabel;
  bool operator==(const UnipLabel&) const = default;
  auto operator<=>(const UnipLabel&) const = default;
};

UnipLabel symbol_label(const GroupKind& kind, const Symbol& s);
UnipLabel partition_label(const GroupKind& kind, const Partition& p);
std::vector<UnipLabel> unipotent_labels(const GroupKind& kind);
std::string to_string(const UnipLabel& x);

struct ThetaTriple {
  UnipLabel l;
  UnipLabel r;
  long long m = 1;
  bool operator==(const ThetaTriple&) const = default;
  auto operator<=>(const ThetaTriple&) const = default;
};

struct ThetaRelation {
  DualPairSpec pair;
  std::vector<ThetaTriple> triples;
};

enum class FReading { Literal, PresentParts, Successor };

long long f_value(const Partition& mu, FReading reading);

std::vector<std::pair<Partition, long long>> theta_gl(
    const Partition& lam, int nprime, FReading reading = FReading::Successor);

ThetaRelation unitary_pairs(int n, int nprime);
ThetaRelation spo_pairs(int n, int nprime, int eps);
ThetaRelation principal_series_pairs(int n, int nprime, int eps);

// the full unipotent relation for any supported dual pair, with left/right
// slots matching the spec
ThetaRelation compute_relation(const DualPairSpec& pair);

// partners of x on the other side of the pair
std::vector<std::pair<UnipLabel, long long>> theta_set(const UnipLabel& x,
                                                       const GroupKind& target);

struct CuspidalTarget {
  int cprime = 0;
  int flavor = 0;  // +1 / -1
};

CuspidalTarget cuspidal_theta(int c, const DualPairSpec& pair);

struct FirstOccurrence {
  UnipLabel label;
  TowerSpec tower;
  int index = -1;  // tower rank n' of first occurrence
  int dim = -1;    // dim V' there
  bool resolved = false;
  bool persistent = false;  // non-empty at every scanned larger index
  std::vector<UnipLabel> lift;
};

FirstOccurrence first_occurrence(const UnipLabel& x, const TowerSpec& tower,
                                 int scan_limit);

int default_scan_limit(int n);

struct ConservationRecord {
  int dim_plus = -1;
  int dim_minus = -1;
  int c_inferred = -1;
  bool holds = false;
};

ConservationRecord conservation_check(const UnipLabel& x, int scan_limit = -1);

// the defect-respecting injection; throws std::domain_error
// "not defined at this rank" when the padding size comes out negative
UnipLabel underline_theta(const UnipLabel& x, const GroupKind& target);
std::optional<UnipLabel> try_underline(const UnipLabel& x,
                                       const GroupKind& target);

using LabelOrder = std::function<bool(const UnipLabel&, const UnipLabel&)>;
LabelOrder default_label_order();

struct OverlineResult {
  std::map<UnipLabel, UnipLabel> assigned;
  std::vector<UnipLabel> unmatched;
};

OverlineResult overline_theta(const DualPairSpec& pair,
                              const LabelOrder& order = nullptr);

struct RelationProps {
  bool symmetric = false;
  bool one_to_one = false;
  bool subrelation_of_theta = false;
  std::vector<std::string> semi_persistent_witnesses;
};

RelationProps relation_props(const ThetaRelation& r);

}  // namespace fftheta
