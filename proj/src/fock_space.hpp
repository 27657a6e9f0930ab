// Copyright 2026 The Focklab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FOCKLAB_FOCK_SPACE_HPP
#define FOCKLAB_FOCK_SPACE_HPP

#include <complex>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "multi_index.hpp"

namespace focklab {

using Complex = std::complex<double>;

class GuardViolation : public std::runtime_error {
 public:
  explicit GuardViolation(const std::string& what) : std::runtime_error(what) {}
};

class BasisTable;

// Truncated symmetric Fock space over C^d with semiclassical parameter epsilon.
// States are indexed by occupation multi-indices |alpha| <= n_max, ordered
// graded-lexicographically. The basis enumeration is lazy: spaces whose total
// dimension would not fit in memory can still host sparse vectors.
class FockSpace {
 public:
  static constexpr std::int64_t kDefaultDimCap = 200'000'000;

  FockSpace(int d, int n_max, double epsilon,
            std::int64_t dim_cap = kDefaultDimCap);

  int dim() const { return d_; }
  int n_max() const { return n_max_; }
  double epsilon() const { return epsilon_; }

  std::int64_t block_dim(int n) const;  // C(n+d-1, d-1), 0 outside [0, n_max]
  std::int64_t total_dim() const { return total_dim_; }

  // Enumerated basis; built on first use. Throws when the space is too
  // large for dense work.
  const BasisTable& basis() const;

 private:
  int d_;
  int n_max_;
  double epsilon_;
  std::int64_t dim_cap_;
  std::int64_t total_dim_;
  mutable std::shared_ptr<const BasisTable> basis_;
};

using SpacePtr = std::shared_ptr<const FockSpace>;

SpacePtr make_space(int d, int n_max, double epsilon,
                    std::int64_t dim_cap = FockSpace::kDefaultDimCap);

// Deterministic graded-lex enumeration of all |alpha| <= n_max.
class BasisTable {
 public:
  static constexpr std::int64_t kEnumerationCap = 5'000'000;

  BasisTable(int d, int n_max);

  std::int64_t size() const { return static_cast<std::int64_t>(elements_.size()); }
  const MultiIndex& at(std::int64_t i) const { return elements_[i]; }
  std::int64_t index_of(const MultiIndex& alpha) const;  // -1 when absent
  std::int64_t block_offset(int n) const { return block_offsets_[n]; }
  std::int64_t block_size(int n) const {
    return block_offsets_[n + 1] - block_offsets_[n];
  }
  int n_max() const { return static_cast<int>(block_offsets_.size()) - 2; }

 private:
  std::vector<MultiIndex> elements_;
  std::vector<std::int64_t> block_offsets_;  // size n_max + 2
  std::map<MultiIndex, std::int64_t, GradedLexLess> lookup_;
};

}  // namespace focklab

#endif
