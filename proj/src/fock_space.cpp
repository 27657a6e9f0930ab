// Copyright 2026 The Focklab Authors
// SPDX-License-Identifier: Apache-2.0

#include "fock_space.hpp"

#include <limits>

namespace focklab {

FockSpace::FockSpace(int d, int n_max, double epsilon, std::int64_t dim_cap)
    : d_(d), n_max_(n_max), epsilon_(epsilon), dim_cap_(dim_cap) {
  if (d < 1) throw std::invalid_argument("FockSpace: d must be >= 1");
  if (n_max < 0) throw std::invalid_argument("FockSpace: n_max must be >= 0");
  if (!(epsilon > 0.0)) throw std::invalid_argument("FockSpace: epsilon must be > 0");
  total_dim_ = 0;
  for (int n = 0; n <= n_max_; ++n) {
    const std::int64_t b = composition_count(n, d_);
    if (b == std::numeric_limits<std::int64_t>::max() ||
        total_dim_ > dim_cap_ - b) {
      throw std::invalid_argument("FockSpace: truncation too large");
    }
    total_dim_ += b;
  }
}

std::int64_t FockSpace::block_dim(int n) const {
  if (n < 0 || n > n_max_) return 0;
  return composition_count(n, d_);
}

const BasisTable& FockSpace::basis() const {
  if (!basis_) {
    if (total_dim_ > BasisTable::kEnumerationCap) {
      throw std::invalid_argument(
          "FockSpace: truncation too large for dense enumeration");
    }
    basis_ = std::make_shared<const BasisTable>(d_, n_max_);
  }
  return *basis_;
}

SpacePtr make_space(int d, int n_max, double epsilon, std::int64_t dim_cap) {
  return std::make_shared<const FockSpace>(d, n_max, epsilon, dim_cap);
}

BasisTable::BasisTable(int d, int n_max) {
  block_offsets_.assign(n_max + 2, 0);
  for (int n = 0; n <= n_max; ++n) {
    auto block = compositions(n, d);
    block_offsets_[n + 1] = block_offsets_[n] + static_cast<std::int64_t>(block.size());
    for (auto& a : block) elements_.push_back(std::move(a));
  }
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(elements_.size()); ++i) {
    lookup_.emplace(elements_[i], i);
  }
}

std::int64_t BasisTable::index_of(const MultiIndex& alpha) const {
  auto it = lookup_.find(alpha);
  return it == lookup_.end() ? -1 : it->second;
}

}  // namespace focklab
