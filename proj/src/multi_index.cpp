// Copyright 2026 The Focklab Authors
// SPDX-License-Identifier: Apache-2.0

#include "multi_index.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace focklab {

std::int64_t composition_count(int n, int d) {
  if (n < 0 || d < 1) return 0;
  // C(n+d-1, d-1) with overflow saturation
  long double approx = 0.0L;
  std::int64_t result = 1;
  for (int i = 1; i <= d - 1; ++i) {
    approx += std::log1p(static_cast<long double>(n) / i);
  }
  if (approx > 62.0L * std::log(2.0L)) return std::numeric_limits<std::int64_t>::max();
  for (int i = 1; i <= d - 1; ++i) {
    result = result * (n + i) / i;  // exact: product of consecutive terms stays integral
  }
  return result;
}

std::vector<MultiIndex> compositions(int n, int d) {
  std::vector<MultiIndex> out;
  MultiIndex cur(d, 0);
  // lexicographic ascending enumeration
  auto rec = [&](auto&& self, int pos, int rest) -> void {
    if (pos == d - 1) {
      cur[pos] = rest;
      out.push_back(cur);
      return;
    }
    for (int k = 0; k <= rest; ++k) {
      cur[pos] = k;
      self(self, pos + 1, rest - k);
    }
  };
  if (d >= 1 && n >= 0) rec(rec, 0, n);
  return out;
}

double log_factorial(int n) {
  if (n < 0) throw std::invalid_argument("log_factorial: negative argument");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  if (n > 170) return std::numeric_limits<double>::infinity();
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace focklab
