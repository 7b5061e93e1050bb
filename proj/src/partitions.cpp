#include "fftheta/partitions.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace fftheta {

Partition normalized(std::vector<int> parts) {
  for (int x : parts)
    if (x < 0) throw std::invalid_argument("negative part");
  std::sort(parts.begin(), parts.end(), std::greater<int>());
  while (!parts.empty() && parts.back() == 0) parts.pop_back();
  return parts;
}

bool is_partition(const Partition& p) {
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0) return false;
    if (i + 1 < p.size() && p[i] < p[i + 1]) return false;
  }
  return true;
}

int weight(const Partition& p) {
  int s = 0;
  for (int x : p) s += x;
  return s;
}

int weight(const Bipartition& b) { return weight(b.top) + weight(b.bottom); }

int part(const Partition& p, int i) {
  if (i < 1) throw std::invalid_argument("row index is 1-based");
  return i <= length(p) ? p[i - 1] : 0;
}

Partition transpose(const Partition& p) {
  Partition t;
  if (p.empty()) return t;
  t.reserve(p[0]);
  for (int j = 1; j <= p[0]; ++j) {
    int c = 0;
    for (int x : p) c += (x >= j);
    t.push_back(c);
  }
  return t;
}

Bipartition transpose(const Bipartition& b) {
  return {transpose(b.top), transpose(b.bottom)};
}

Partition union_parts(const Partition& a, const Partition& b) {
  Partition u;
  u.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u),
             std::greater<int>());
  return u;
}

Partition union_part(const Partition& a, int extra) {
  if (extra < 0) throw std::invalid_argument("negative part");
  if (extra == 0) return a;
  return union_parts(a, Partition{extra});
}

bool dominates(const Partition& a, const Partition& b) {
  if (weight(a) != weight(b))
    throw std::invalid_argument("dominance needs equal weights");
  int sa = 0, sb = 0;
  int rows = std::max(length(a), length(b));
  for (int i = 1; i <= rows; ++i) {
    sa += part(a, i);
    sb += part(b, i);
    if (sa < sb) return false;
  }
  return true;
}

bool preceq(const Partition& a, const Partition& b) {
  int rows = std::max(length(a), length(b)) + 1;
  for (int i = 1; i <= rows; ++i) {
    int ai = part(a, i);
    if (part(b, i + 1) > ai || ai > part(b, i)) return false;
  }
  return true;
}

bool contains(const Partition& a, const Partition& b) {
  for (int i = 1; i <= length(b); ++i)
    if (part(a, i) < part(b, i)) return false;
  return true;
}

bool close(const Partition& a, const Partition& b) {
  int rows = std::max(length(a), length(b));
  for (int i = 1; i <= rows; ++i)
    if (std::abs(part(a, i) - part(b, i)) > 1) return false;
  return true;
}

std::pair<Partition, Partition> intersections(const Partition& a, const Partition& b) {
  Partition meet, eq;
  int rows = std::max(length(a), length(b));
  for (int i = 1; i <= rows; ++i) {
    int m = std::min(part(a, i), part(b, i));
    if (m > 0) meet.push_back(m);
    if (part(a, i) == part(b, i) && m > 0) eq.push_back(m);
  }
  return {meet, eq};
}

std::vector<std::vector<int>> hook_lengths(const Partition& p) {
  Partition t = transpose(p);
  std::vector<std::vector<int>> h(p.size());
  for (int i = 1; i <= length(p); ++i) {
    h[i - 1].resize(p[i - 1]);
    for (int j = 1; j <= p[i - 1]; ++j)
      h[i - 1][j - 1] = p[i - 1] + t[j - 1] - i - j + 1;
  }
  return h;
}

std::pair<Partition, int> two_core(const Partition& p) {
  // Pack the even and odd entries of a beta set for p separately; the
  // repacked set is a beta set for the core.
  int h = length(p);
  int evens = 0, odds = 0;
  for (int i = 1; i <= h; ++i) {
    if ((p[i - 1] + h - i) % 2 == 0)
      ++evens;
    else
      ++odds;
  }
  std::vector<int> beta;
  for (int i = 0; i < evens; ++i) beta.push_back(2 * i);
  for (int i = 0; i < odds; ++i) beta.push_back(2 * i + 1);
  std::sort(beta.begin(), beta.end());
  Partition core;
  int m = static_cast<int>(beta.size());
  for (int i = m - 1; i >= 0; --i) {
    int v = beta[i] - i;
    if (v > 0) core.push_back(v);
  }
  return {core, static_cast<int>(core.size())};
}

static void gen_partitions(int n, int cap, Partition& cur, std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(n, cap); k >= 1; --k) {
    cur.push_back(k);
    gen_partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  if (n < 0) return out;
  Partition cur;
  gen_partitions(n, n, cur, out);
  return out;
}

std::vector<Bipartition> bipartitions_of(int n) {
  std::vector<Bipartition> out;
  for (int k = 0; k <= n; ++k)
    for (const auto& t : partitions_of(k))
      for (const auto& b : partitions_of(n - k)) out.push_back({t, b});
  return out;
}

std::string to_string(const Partition& p) {
  if (p.empty()) return "[]";
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ']';
  return os.str();
}

std::string to_string(const Bipartition& b) {
  return to_string(b.top) + ";" + to_string(b.bottom);
}

}  // namespace fftheta
