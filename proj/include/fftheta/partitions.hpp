#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace fftheta {

// A partition is stored as its weakly decreasing positive parts;
// trailing zeros are never stored.
using Partition = std::vector<int>;

struct Bipartition {
  Partition top;
  Partition bottom;
  bool operator==(const Bipartition&) const = default;
  auto operator<=>(const Bipartition&) const = default;
};

// inner must be contained in outer
struct SkewDiagram {
  Partition outer;
  Partition inner;
};

// Sorts decreasing, strips zeros, rejects negative entries.
Partition normalized(std::vector<int> parts);
bool is_partition(const Partition& p);

int weight(const Partition& p);
int weight(const Bipartition& b);
inline int length(const Partition& p) { return static_cast<int>(p.size()); }

// 1-based row access; 0 past the end
int part(const Partition& p, int i);

Partition transpose(const Partition& p);
Bipartition transpose(const Bipartition& b);  // componentwise

// multiset union of parts
Partition union_parts(const Partition& a, const Partition& b);
Partition union_part(const Partition& a, int extra);

// Dominance order; both arguments must have the same weight.
bool dominates(const Partition& a, const Partition& b);

// a <= b rowwise interleaving: b_{i+1} <= a_i <= b_i for all i.
// Equivalently b/a is a horizontal strip.
bool preceq(const Partition& a, const Partition& b);

// a_i >= b_i for all i
bool contains(const Partition& a, const Partition& b);

// |a_i - b_i| <= 1 for all i (zero padded)
bool close(const Partition& a, const Partition& b);

// (a meet b, parts of the meet at rows where a_i = b_i)
std::pair<Partition, Partition> intersections(const Partition& a, const Partition& b);

// hook length at (i,j), 1-based: p_i + p*_j - i - j + 1
std::vector<std::vector<int>> hook_lengths(const Partition& p);

// (2-core staircase [d,...,1], d)
std::pair<Partition, int> two_core(const Partition& p);

std::vector<Partition> partitions_of(int n);
std::vector<Bipartition> bipartitions_of(int n);

std::string to_string(const Partition& p);
std::string to_string(const Bipartition& b);

}  // namespace fftheta
