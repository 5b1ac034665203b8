#include "tautres/setpart.hpp"

#include <stdexcept>

namespace tautres {

std::vector<int> SetPartition::block_sizes() const {
  std::vector<int> s;
  for (const auto& b : blocks) s.push_back(static_cast<int>(b.size()));
  return s;
}

std::string SetPartition::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) s += ",";
    s += "[";
    for (std::size_t j = 0; j < blocks[i].size(); ++j) {
      if (j) s += ",";
      s += std::to_string(blocks[i][j]);
    }
    s += "]";
  }
  return s + "]";
}

SetPartition partition_from_rgs(const std::vector<int>& rgs) {
  SetPartition p;
  p.k = static_cast<int>(rgs.size());
  for (int i = 0; i < p.k; ++i) {
    const auto b = static_cast<std::size_t>(rgs[static_cast<std::size_t>(i)]);
    if (b > p.blocks.size()) throw std::invalid_argument("not a restricted growth string");
    if (b == p.blocks.size()) p.blocks.emplace_back();
    p.blocks[b].push_back(i + 1);
  }
  return p;
}

std::vector<SetPartition> enumerate_partitions(int k, int max_k) {
  if (k < 1 || k > max_k)
    throw std::out_of_range("k=" + std::to_string(k) + " outside supported range 1.." + std::to_string(max_k));
  std::vector<SetPartition> out;
  std::vector<int> a(static_cast<std::size_t>(k), 0), mx(static_cast<std::size_t>(k), 0);
  // a[i] <= 1 + max(a[0..i-1]); mx[i] = max(a[0..i])
  while (true) {
    out.push_back(partition_from_rgs(a));
    int i = k - 1;
    while (i > 0 && a[static_cast<std::size_t>(i)] > mx[static_cast<std::size_t>(i - 1)]) --i;
    if (i == 0) break;
    ++a[static_cast<std::size_t>(i)];
    mx[static_cast<std::size_t>(i)] = std::max(mx[static_cast<std::size_t>(i - 1)], a[static_cast<std::size_t>(i)]);
    for (int j = i + 1; j < k; ++j) {
      a[static_cast<std::size_t>(j)] = 0;
      mx[static_cast<std::size_t>(j)] = mx[static_cast<std::size_t>(i)];
    }
  }
  return out;
}

Rational sieve_coefficient(const SetPartition& beta) {
  const auto s = static_cast<unsigned>(beta.size());
  Integer f = factorial(s - 1);
  return Rational(s % 2 == 1 ? f : Integer(-f));
}

bool refines(const SetPartition& alpha, const SetPartition& beta) {
  if (alpha.k != beta.k) throw std::invalid_argument("refines: partitions of different sets");
  std::vector<std::size_t> owner(static_cast<std::size_t>(beta.k) + 1);
  for (std::size_t b = 0; b < beta.blocks.size(); ++b)
    for (int e : beta.blocks[b]) owner[static_cast<std::size_t>(e)] = b;
  for (const auto& blk : alpha.blocks)
    for (int e : blk)
      if (owner[static_cast<std::size_t>(e)] != owner[static_cast<std::size_t>(blk.front())]) return false;
  return true;
}

Integer bell_number(int k) {
  // Bell triangle
  std::vector<Integer> row{1};
  for (int i = 1; i < k; ++i) {
    std::vector<Integer> next{row.back()};
    for (const auto& x : row) next.push_back(next.back() + x);
    row = std::move(next);
  }
  return row.back();
}

}  // namespace tautres
