#pragma once

#include <map>
#include <string>
#include <vector>

#include "fftheta/partitions.hpp"

namespace fftheta {

// irreducible of W_n labeled E_{top,bottom}; E_{(n),()} is trivial
using BIrrLabel = Bipartition;

// finitely supported integer combination of labels
using VirtualBChar = std::map<Bipartition, long long>;

// conjugacy class of W_n: cycle types of the positive and negative cycles
struct SignedClassLabel {
  Partition pos;
  Partition neg;
  bool operator==(const SignedClassLabel&) const = default;
  auto operator<=>(const SignedClassLabel&) const = default;
};

long long lr_coefficient(const Partition& mu, const Partition& nu,
                         const Partition& lam);

// Ind_{W_r x W_s}^{W_{r+s}} E_a (x) E_b expanded into irreducibles
VirtualBChar induce(const Bipartition& a, const Bipartition& b);

Bipartition sgn_twist(const Bipartition& x);

enum class OmegaCase { UOddC, UEvenC, UZero, SpOCase1, SpOCase2 };

struct OmegaTriple {
  Bipartition left;
  Bipartition right;
  long long mult = 0;
  bool operator==(const OmegaTriple&) const = default;
};

// the graded correspondence character on W_nbar x W_nbarp, expanded into
// irreducible pairs
std::vector<OmegaTriple> omega(OmegaCase c, int nbar, int nbarp);

long long char_value(const Bipartition& x, const SignedClassLabel& cls);
long long b_dimension(const Bipartition& x);

std::vector<SignedClassLabel> signed_classes(int n);
long long signed_class_centralizer(const SignedClassLabel& cls);

std::string to_string(const SignedClassLabel& cls);

}  // namespace fftheta
