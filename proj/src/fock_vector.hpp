// Copyright 2026 The Focklab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FOCKLAB_FOCK_VECTOR_HPP
#define FOCKLAB_FOCK_VECTOR_HPP

#include <Eigen/Dense>

#include "fock_space.hpp"

namespace focklab {

using Vec = Eigen::VectorXcd;

// Sparse state on a truncated Fock space. Coefficients outside
// |alpha| <= n_max are never stored. tail_mass reports the L2 mass an
// analytically defined state lost to the truncation.
class FockVector {
 public:
  using TermMap = std::map<MultiIndex, Complex, GradedLexLess>;

  explicit FockVector(SpacePtr space) : space_(std::move(space)) {}

  const SpacePtr& space() const { return space_; }
  const TermMap& terms() const { return terms_; }

  Complex coeff(const MultiIndex& alpha) const;
  void set_coeff(const MultiIndex& alpha, Complex c);
  void add_coeff(const MultiIndex& alpha, Complex c);

  double norm2() const;  // sum |c|^2, deterministic order
  double norm() const;

  double tail_mass() const { return tail_mass_; }
  void set_tail_mass(double t) { tail_mass_ = t; }

  FockVector& operator+=(const FockVector& other);
  FockVector& operator*=(Complex s);
  void prune(double tol = 0.0);

  // Dense coordinates in the space's enumerated basis.
  Vec to_dense() const;
  static FockVector from_dense(const SpacePtr& space, const Vec& v);

 private:
  SpacePtr space_;
  TermMap terms_;
  double tail_mass_ = 0.0;
};

Complex inner(const FockVector& bra, const FockVector& ket);  // antilinear in bra

FockVector vacuum_state(const SpacePtr& space);

// z^{\otimes k} in occupation coordinates; norm |z|^k.
FockVector hermite_state(const SpacePtr& space, const Vec& z, int k);

// Truncated coherent state; tail_mass = Poisson(|z|^2/eps) tail beyond n_max.
// Throws GuardViolation when the tail exceeds tail_tol.
FockVector coherent_state(const SpacePtr& space, const Vec& z,
                          double tail_tol = 1e-9);

double coherent_tail_mass(const FockSpace& space, const Vec& z);

}  // namespace focklab

#endif
