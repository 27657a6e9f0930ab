// Copyright 2026 The Focklab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FOCKLAB_OPERATORS_HPP
#define FOCKLAB_OPERATORS_HPP

#include <Eigen/Dense>
#include <functional>

#include "fock_vector.hpp"

namespace focklab {

using Mat = Eigen::MatrixXcd;

// Number-changing-by-a-fixed-offset operator stored blockwise:
// block n maps V_n -> V_{n+offset}. offset 0 commutes with N exactly.
class BlockOperator {
 public:
  BlockOperator(SpacePtr space, int offset);

  const SpacePtr& space() const { return space_; }
  int offset() const { return offset_; }

  Mat& block(int n) { return blocks_[n]; }
  const Mat& block(int n) const { return blocks_[n]; }

  FockVector apply(const FockVector& v) const;
  BlockOperator adjoint() const;

  // Assembled matrix over the enumerated basis.
  Mat to_dense() const;

 private:
  SpacePtr space_;
  int offset_;
  std::vector<Mat> blocks_;  // index n in [0, n_max]; empty when target block absent
};

class DenseOperator {
 public:
  DenseOperator(SpacePtr space, Mat mat);

  const SpacePtr& space() const { return space_; }
  const Mat& matrix() const { return mat_; }
  Mat& matrix() { return mat_; }

  FockVector apply(const FockVector& v) const;
  DenseOperator adjoint() const;

 private:
  SpacePtr space_;
  Mat mat_;
};

// --- sparse state-level actions (no enumeration required) ---

// a(f) v  with a(f) = sum_j conj(f_j) a_j, a_j |alpha> = sqrt(eps alpha_j)|alpha - e_j>
FockVector apply_annihilation(const Vec& f, const FockVector& v);
// a*(f) v; creation out of the top block truncates to zero.
FockVector apply_creation(const Vec& f, const FockVector& v);
// Phi(f) = (a*(f) + a(f)) / sqrt(2)
FockVector apply_field(const Vec& f, const FockVector& v);
// dGamma(A) v with dGamma(A)|alpha-basis assembled from eps-scaled ladder pairs
FockVector apply_dgamma(const Mat& A, const FockVector& v);
// Gamma(e^{i theta} I) v: phase e^{i theta n} per block
FockVector apply_gauge(double theta, const FockVector& v);

// W(f) v = exp(i Phi(f)) v on the truncated space. Uses a dense eigensolve of
// Phi(f) when the space is small, otherwise a Taylor sum of the truncated
// generator whose convergence is certified from the generator norm; throws
// GuardViolation when neither route is trustworthy.
FockVector weyl_apply(const Vec& f, const FockVector& v);

// --- materialized operators (require dense enumeration) ---

BlockOperator annihilation_operator(const SpacePtr& space, const Vec& f);  // offset -1
BlockOperator creation_operator(const SpacePtr& space, const Vec& f);      // offset +1
DenseOperator field_operator(const SpacePtr& space, const Vec& f);         // Phi(f)
DenseOperator conjugate_field_operator(const SpacePtr& space, const Vec& f);  // Pi(f) = Phi(i f)

// W(f) = exp(i Phi(f)) as exponential of the truncated generator; exactly
// unitary on the truncated space (up to eigensolver rounding).
DenseOperator weyl_operator(const SpacePtr& space, const Vec& f);

BlockOperator number_operator(const SpacePtr& space);          // dGamma(I)
BlockOperator dgamma_operator(const SpacePtr& space, const Mat& A);  // A Hermitian
BlockOperator gamma_operator(const SpacePtr& space, const Mat& S);   // Gamma(S), any S
BlockOperator gauge_rotation(const SpacePtr& space, double theta);

// Assemble a dense matrix column by column from a sparse action.
Mat dense_of(const SpacePtr& space,
             const std::function<FockVector(const FockVector&)>& action);

double operator_norm(const Mat& m);  // largest singular value

}  // namespace focklab

#endif
