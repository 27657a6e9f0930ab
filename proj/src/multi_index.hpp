// Copyright 2026 The Focklab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FOCKLAB_MULTI_INDEX_HPP
#define FOCKLAB_MULTI_INDEX_HPP

#include <cstdint>
#include <vector>

namespace focklab {

// Occupation multi-index alpha in N^d.
using MultiIndex = std::vector<int>;

inline int degree(const MultiIndex& a) {
  int s = 0;
  for (int x : a) s += x;
  return s;
}

// Graded lexicographic order: compare |alpha| first, then entries left to right.
// This is the basis order of the whole library; serialized operators depend on it.
struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    const int da = degree(a), db = degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

using IndexPair = std::pair<MultiIndex, MultiIndex>;

struct IndexPairLess {
  bool operator()(const IndexPair& a, const IndexPair& b) const {
    GradedLexLess less;
    if (less(a.first, b.first)) return true;
    if (less(b.first, a.first)) return false;
    return less(a.second, b.second);
  }
};

// C(n+d-1, d-1), saturating at INT64_MAX.
std::int64_t composition_count(int n, int d);

// All alpha in N^d with |alpha| = n, listed in lexicographic ascending order.
std::vector<MultiIndex> compositions(int n, int d);

// log(n!)
double log_factorial(int n);

// sqrt(n!) as double (n <= 170 stays finite; callers work in log space beyond that)
double factorial(int n);

}  // namespace focklab

#endif
