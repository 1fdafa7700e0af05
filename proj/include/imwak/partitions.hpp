#pragma once

#include <vector>

#include "fock.hpp"

namespace imwak {

// A partition is its multiset of parts, sorted ascending — the same canonical
// shape as the b-part of a FockMonomial, so b_pi words convert for free.
using Partition = std::vector<long>;

inline void partitions_of_rec(long n, long min_part, Partition& acc,
                              std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back(acc);
    return;
  }
  for (long k = min_part; k <= n; ++k) {
    acc.push_back(k);
    partitions_of_rec(n - k, k, acc, out);
    acc.pop_back();
  }
}

// All partitions of n in a fixed deterministic (ascending lexicographic) order.
inline std::vector<Partition> partitions_of(long n) {
  std::vector<Partition> out;
  Partition acc;
  partitions_of_rec(n, 1, acc, out);
  return out;
}

// All partitions of weight 0..n (the weight-0 entry is the empty partition).
inline std::vector<Partition> partitions_up_to(long n) {
  std::vector<Partition> out;
  for (long w = 0; w <= n; ++w) {
    auto pw = partitions_of(w);
    out.insert(out.end(), pw.begin(), pw.end());
  }
  return out;
}

inline long partition_weight(const Partition& pi) {
  long w = 0;
  for (long k : pi) w += k;
  return w;
}

inline long part_multiplicity(const Partition& pi, long k) {
  return FockMonomial::count_of(pi, k);
}

inline Partition with_part(const Partition& pi, long k) {
  Partition out = pi;
  FockMonomial::insert_sorted(out, k);
  return out;
}

inline Partition without_part(const Partition& pi, long k) {
  Partition out = pi;
  FockMonomial::erase_one(out, k);
  return out;
}

}  // namespace imwak
