// Copyright 2026 The Focklab Authors
// SPDX-License-Identifier: Apache-2.0

#include "fock_vector.hpp"

#include <cmath>

namespace focklab {

Complex FockVector::coeff(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

void FockVector::set_coeff(const MultiIndex& alpha, Complex c) {
  if (static_cast<int>(alpha.size()) != space_->dim())
    throw std::invalid_argument("FockVector: multi-index dimension mismatch");
  if (degree(alpha) > space_->n_max())
    throw std::invalid_argument("FockVector: multi-index beyond truncation");
  if (c == Complex(0.0)) {
    terms_.erase(alpha);
  } else {
    terms_[alpha] = c;
  }
}

void FockVector::add_coeff(const MultiIndex& alpha, Complex c) {
  auto [it, inserted] = terms_.emplace(alpha, c);
  if (!inserted) it->second += c;
}

double FockVector::norm2() const {
  double s = 0.0;
  for (const auto& [a, c] : terms_) s += std::norm(c);
  return s;
}

double FockVector::norm() const { return std::sqrt(norm2()); }

FockVector& FockVector::operator+=(const FockVector& other) {
  for (const auto& [a, c] : other.terms_) add_coeff(a, c);
  return *this;
}

FockVector& FockVector::operator*=(Complex s) {
  for (auto& [a, c] : terms_) c *= s;
  return *this;
}

void FockVector::prune(double tol) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= tol) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

Vec FockVector::to_dense() const {
  const BasisTable& basis = space_->basis();
  Vec v = Vec::Zero(basis.size());
  for (const auto& [a, c] : terms_) v[basis.index_of(a)] = c;
  return v;
}

FockVector FockVector::from_dense(const SpacePtr& space, const Vec& v) {
  const BasisTable& basis = space->basis();
  if (v.size() != basis.size())
    throw std::invalid_argument("from_dense: size mismatch");
  FockVector out(space);
  for (std::int64_t i = 0; i < basis.size(); ++i) {
    if (v[i] != Complex(0.0)) out.set_coeff(basis.at(i), v[i]);
  }
  return out;
}

Complex inner(const FockVector& bra, const FockVector& ket) {
  // iterate the smaller map
  const auto& a = bra.terms();
  const auto& b = ket.terms();
  Complex s = 0.0;
  if (a.size() <= b.size()) {
    for (const auto& [idx, c] : a) {
      auto it = b.find(idx);
      if (it != b.end()) s += std::conj(c) * it->second;
    }
  } else {
    for (const auto& [idx, c] : b) {
      auto it = a.find(idx);
      if (it != a.end()) s += std::conj(a.at(idx)) * c;
    }
  }
  return s;
}

FockVector vacuum_state(const SpacePtr& space) {
  FockVector v(space);
  v.set_coeff(MultiIndex(space->dim(), 0), 1.0);
  return v;
}

FockVector hermite_state(const SpacePtr& space, const Vec& z, int k) {
  if (z.size() != space->dim())
    throw std::invalid_argument("hermite_state: z dimension mismatch");
  if (k < 0 || k > space->n_max())
    throw std::invalid_argument("hermite_state: k outside truncation");
  FockVector v(space);
  // coefficient at alpha, |alpha| = k: sqrt(k!/alpha!) prod z_j^{alpha_j};
  // only the support of z carries nonzero exponents
  std::vector<int> support;
  for (int j = 0; j < space->dim(); ++j) {
    if (z[j] != Complex(0.0)) support.push_back(j);
  }
  if (support.empty()) {
    if (k == 0) v.set_coeff(MultiIndex(space->dim(), 0), 1.0);
    return v;
  }
  for (const auto& packed : compositions(k, static_cast<int>(support.size()))) {
    MultiIndex alpha(space->dim(), 0);
    double logw = log_factorial(k);
    Complex mono = 1.0;
    for (size_t s = 0; s < support.size(); ++s) {
      alpha[support[s]] = packed[s];
      logw -= log_factorial(packed[s]);
      for (int r = 0; r < packed[s]; ++r) mono *= z[support[s]];
    }
    v.set_coeff(alpha, std::exp(0.5 * logw) * mono);
  }
  return v;
}

double coherent_tail_mass(const FockSpace& space, const Vec& z) {
  const double lambda = z.squaredNorm() / space.epsilon();
  if (lambda == 0.0) return 0.0;
  // Poisson(lambda) mass above n_max
  double head = 0.0;
  for (int n = 0; n <= space.n_max(); ++n) {
    head += std::exp(-lambda + n * std::log(lambda) - log_factorial(n));
  }
  return std::max(0.0, 1.0 - head);
}

FockVector coherent_state(const SpacePtr& space, const Vec& z, double tail_tol) {
  if (z.size() != space->dim())
    throw std::invalid_argument("coherent_state: z dimension mismatch");
  const double tail = coherent_tail_mass(*space, z);
  if (tail > tail_tol) {
    throw GuardViolation("coherent_state: truncation insufficient, tail " +
                         std::to_string(tail));
  }
  const double lambda = z.squaredNorm() / space->epsilon();
  FockVector v(space);
  // E(z) = e^{-|z|^2/2eps} sum_n eps^{-n/2} z^{tensor n} / sqrt(n!)
  for (int n = 0; n <= space->n_max(); ++n) {
    FockVector block = hermite_state(space, z, n);
    const double logc =
        -0.5 * lambda - 0.5 * n * std::log(space->epsilon()) - 0.5 * log_factorial(n);
    const double c = std::exp(logc);
    if (c == 0.0) continue;
    for (const auto& [a, amp] : block.terms()) v.add_coeff(a, c * amp);
  }
  v.set_tail_mass(tail);
  return v;
}

}  // namespace focklab
