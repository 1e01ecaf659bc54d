#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "quartred/bitangents.hpp"

namespace quartred {

// Conic conditions of a bitangent: a conic C satisfies both rows iff its restriction
// to the line is proportional to q, i.e. C is tangent to the curve's contact divisor
// (this covers hyperflexes and contact points outside K).
std::array<std::array<Padic, 6>, 2> tangency_rows(const Bitangent& b);

// 6x6 determinant; zero iff some conic passes through the three contact divisors
Padic syzygy_determinant(const Bitangent& b1, const Bitangent& b2, const Bitangent& b3);
bool is_syzygetic(const Bitangent& b1, const Bitangent& b2, const Bitangent& b3, int guard);

class SyzygyTable {
 public:
  SyzygyTable() = default;
  SyzygyTable(const std::vector<Bitangent>& lines, int guard);

  int size() const { return n_; }
  bool syzygetic(int i, int j, int k) const { return bits_[index(i, j, k)]; }
  int syzygetic_count() const { return syz_count_; }
  // valuation of each triple's determinant (INT_MAX when zero at precision)
  const std::vector<int>& valuations() const { return vals_; }
  // largest valuation of a determinant judged nonzero
  int max_azygetic_valuation() const { return max_az_; }

 private:
  int index(int i, int j, int k) const;
  int n_ = 0;
  int syz_count_ = 0;
  int max_az_ = -1;
  std::vector<bool> bits_;
  std::vector<int> vals_;
  std::vector<int> offset_;
};

struct AronholdCandidate {
  std::vector<int> indices;  // into the bitangent list
};

// Depth-first search in index order, starting from the pair {0, 1}; throws when
// no set exists at precision.
AronholdCandidate find_aronhold(const SyzygyTable& table);
// every Aronhold set, as sorted index 7-tuples
std::vector<std::array<int, 7>> all_aronhold_sets(const SyzygyTable& table);
long count_aronhold(const SyzygyTable& table);
bool is_aronhold(const SyzygyTable& table, const std::vector<int>& s);

}  // namespace quartred
