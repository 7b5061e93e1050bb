#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fftheta/theta.hpp"

namespace fftheta {

// Semisimple conjugacy classes enter only through eigenvalue multiplicities:
// nu1 and nu_minus1 count torus coordinates at +-1, and every other
// eigenvalue class is one duality-closed packet.  `size` is the number of
// torus coordinates one copy of the packet consumes; GL-type packets hold an
// orbit together with its distinct dual, U-type packets are self-dual.
enum class OrbitType { GLPair, USelfDual };

struct SpectrumOrbit {
  int size = 0;
  int mult = 0;
  OrbitType type = OrbitType::GLPair;
  bool operator==(const SpectrumOrbit&) const = default;
  auto operator<=>(const SpectrumOrbit&) const = default;
};

struct SemisimpleSpectrum {
  int nu1 = 0;
  int nu_minus1 = 0;
  std::vector<SpectrumOrbit> other_orbits;
  int weighted_size() const;
  bool operator==(const SemisimpleSpectrum&) const = default;
};

// number of torus coordinates of the ambient group
int spectrum_rank(const GroupKind& g);

// `slots` records the coordinates the factor consumes, `field_degree` the
// extension over which a GL/U factor lives.
struct EndoFactor {
  GroupKind kind;
  int field_degree = 1;
  int slots = 0;
  bool operator==(const EndoFactor&) const = default;
};

enum class NaturalPart { MinusSide, PlusSide };

struct EndoscopicShape {
  EndoFactor factor_1;
  EndoFactor factor_minus1;
  std::vector<EndoFactor> factor_ne;
  NaturalPart natural = NaturalPart::MinusSide;
};

// All shapes compatible with the spectrum; the sign of an even orthogonal
// factor is not determined by multiplicities alone, so each consistent
// choice is emitted as its own shape.
std::vector<EndoscopicShape> endoscopic_decompose(const GroupKind& g,
                                                  const SemisimpleSpectrum& s);

// A point of a Lusztig series: the spectrum plus one unipotent label per
// factor.  u_ne[i] labels the factor of other_orbits[i].  zeta is the
// {+,-} tag of a full odd orthogonal group.  central_sign records the sign
// of the central character when it is tracked separately; 0 means "equal to
// zeta".
struct SeriesLabel {
  GroupKind group;
  SemisimpleSpectrum spectrum;
  UnipLabel u1;
  UnipLabel u_minus1;
  std::vector<Partition> u_ne;
  int zeta = 0;
  int central_sign = 0;
};

// s = 1 series of the label's own group
SeriesLabel unipotent_series_label(const UnipLabel& x);

void validate_series(const SeriesLabel& x);

Int group_order(const GroupKind& kind, const Int& q);
// order with the q-power factor removed
Int group_order_pprime(const GroupKind& kind, const Int& q);

// dimension of the unipotent representation with this label
Int unipotent_dim(const UnipLabel& x, const Int& q);

Int jordan_dim(const SeriesLabel& x, long long q);

// the four sgn-twist variants of the two even orthogonal components
std::vector<std::pair<Symbol, Symbol>> e_pi_set(const SeriesLabel& x);

struct AdmissibleResult {
  bool ok = false;
  std::vector<std::string> reasons;
};

using UnipPairOracle = std::function<bool(const DualPairSpec&, const UnipLabel&,
                                          const UnipLabel&)>;

// Clause-by-clause reduction of theta membership to the unipotent relation
// of the reduced dual pair.  A null oracle means membership in
// compute_relation of the reduced pair.
AdmissibleResult admissible(const DualPairSpec& pair, const SeriesLabel& left,
                            const SeriesLabel& right,
                            UnipPairOracle unip_oracle = nullptr);

// Cuspidal support in the one-cuspidal-factor-plus-torus shape: a cuspidal
// unipotent of tag c on a classical group of rank n0 and r copies of GL1,
// n0 + r = rank.  The relative Weyl group has type B_r.
struct CuspidalSupport {
  GroupKind group;
  int n0 = 0;
  int r = 0;
  int c = 0;
  bool operator==(const CuspidalSupport&) const = default;
};

// rank occupied by the cuspidal unipotent of tag c
int cuspidal_rank(GroupFamily family, int c);

CuspidalSupport hc_transport(const CuspidalSupport& support,
                             const DualPairSpec& pair);

std::string to_string(const SemisimpleSpectrum& s);

}  // namespace fftheta
