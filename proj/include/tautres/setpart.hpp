#pragma once

#include <string>
#include <vector>

#include "tautres/rational.hpp"

namespace tautres {

inline constexpr int kMaxPartitionK = 12;

struct SetPartition {
  int k = 0;
  std::vector<std::vector<int>> blocks;  // sorted blocks, ordered by minimum element

  std::size_t size() const { return blocks.size(); }
  std::vector<int> block_sizes() const;
  std::string str() const;  // [[1,2],[3]]
  bool operator==(const SetPartition&) const = default;
};

// Canonical order: restricted-growth strings in lexicographic order.
std::vector<SetPartition> enumerate_partitions(int k, int max_k = kMaxPartitionK);
SetPartition partition_from_rgs(const std::vector<int>& rgs);

// (-1)^{s-1} (s-1)!
Rational sieve_coefficient(const SetPartition& beta);

// Every block of alpha lies inside a block of beta.
bool refines(const SetPartition& alpha, const SetPartition& beta);

Integer bell_number(int k);

}  // namespace tautres
