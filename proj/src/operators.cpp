// Copyright 2026 The Focklab Authors
// SPDX-License-Identifier: Apache-2.0

#include "operators.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace focklab {

namespace {
constexpr std::int64_t kDenseDimCap = 4096;

void check_mode_vector(const SpacePtr& space, const Vec& f, const char* who) {
  if (f.size() != space->dim()) {
    throw std::invalid_argument(std::string(who) + ": mode vector dimension mismatch");
  }
}
}  // namespace

BlockOperator::BlockOperator(SpacePtr space, int offset)
    : space_(std::move(space)), offset_(offset) {
  blocks_.resize(space_->n_max() + 1);
  for (int n = 0; n <= space_->n_max(); ++n) {
    const int m = n + offset_;
    if (m < 0 || m > space_->n_max()) continue;
    blocks_[n] = Mat::Zero(space_->block_dim(m), space_->block_dim(n));
  }
}

FockVector BlockOperator::apply(const FockVector& v) const {
  const BasisTable& basis = space_->basis();
  std::vector<Vec> slices(space_->n_max() + 1);
  for (const auto& [alpha, c] : v.terms()) {
    const int n = degree(alpha);
    if (slices[n].size() == 0) slices[n] = Vec::Zero(space_->block_dim(n));
    slices[n][basis.index_of(alpha) - basis.block_offset(n)] = c;
  }
  FockVector out(space_);
  for (int n = 0; n <= space_->n_max(); ++n) {
    const int m = n + offset_;
    if (m < 0 || m > space_->n_max()) continue;
    if (blocks_[n].size() == 0 || slices[n].size() == 0) continue;
    Vec res = blocks_[n] * slices[n];
    for (std::int64_t i = 0; i < res.size(); ++i) {
      if (res[i] != Complex(0.0))
        out.add_coeff(basis.at(basis.block_offset(m) + i), res[i]);
    }
  }
  return out;
}

BlockOperator BlockOperator::adjoint() const {
  BlockOperator out(space_, -offset_);
  for (int n = 0; n <= space_->n_max(); ++n) {
    const int m = n + offset_;
    if (m < 0 || m > space_->n_max() || blocks_[n].size() == 0) continue;
    out.block(m) = blocks_[n].adjoint();
  }
  return out;
}

Mat BlockOperator::to_dense() const {
  const BasisTable& basis = space_->basis();
  Mat out = Mat::Zero(basis.size(), basis.size());
  for (int n = 0; n <= space_->n_max(); ++n) {
    const int m = n + offset_;
    if (m < 0 || m > space_->n_max() || blocks_[n].size() == 0) continue;
    out.block(basis.block_offset(m), basis.block_offset(n),
              space_->block_dim(m), space_->block_dim(n)) = blocks_[n];
  }
  return out;
}

DenseOperator::DenseOperator(SpacePtr space, Mat mat)
    : space_(std::move(space)), mat_(std::move(mat)) {
  if (mat_.rows() != space_->total_dim() || mat_.cols() != space_->total_dim())
    throw std::invalid_argument("DenseOperator: matrix size mismatch");
}

FockVector DenseOperator::apply(const FockVector& v) const {
  return FockVector::from_dense(space_, mat_ * v.to_dense());
}

DenseOperator DenseOperator::adjoint() const {
  return DenseOperator(space_, mat_.adjoint());
}

FockVector apply_annihilation(const Vec& f, const FockVector& v) {
  check_mode_vector(v.space(), f, "apply_annihilation");
  const double eps = v.space()->epsilon();
  FockVector out(v.space());
  for (const auto& [alpha, c] : v.terms()) {
    for (int j = 0; j < f.size(); ++j) {
      if (alpha[j] == 0 || f[j] == Complex(0.0)) continue;
      MultiIndex target = alpha;
      target[j] -= 1;
      out.add_coeff(target, std::conj(f[j]) * std::sqrt(eps * alpha[j]) * c);
    }
  }
  return out;
}

FockVector apply_creation(const Vec& f, const FockVector& v) {
  check_mode_vector(v.space(), f, "apply_creation");
  const double eps = v.space()->epsilon();
  const int n_max = v.space()->n_max();
  FockVector out(v.space());
  for (const auto& [alpha, c] : v.terms()) {
    if (degree(alpha) + 1 > n_max) continue;  // truncated
    for (int j = 0; j < f.size(); ++j) {
      if (f[j] == Complex(0.0)) continue;
      MultiIndex target = alpha;
      target[j] += 1;
      out.add_coeff(target, f[j] * std::sqrt(eps * (alpha[j] + 1)) * c);
    }
  }
  return out;
}

FockVector apply_field(const Vec& f, const FockVector& v) {
  FockVector out = apply_creation(f, v);
  out += apply_annihilation(f, v);
  out *= Complex(1.0 / std::sqrt(2.0));
  return out;
}

FockVector apply_dgamma(const Mat& A, const FockVector& v) {
  const SpacePtr& space = v.space();
  if (A.rows() != space->dim() || A.cols() != space->dim())
    throw std::invalid_argument("apply_dgamma: matrix dimension mismatch");
  const double eps = space->epsilon();
  FockVector out(space);
  for (const auto& [alpha, c] : v.terms()) {
    for (int j = 0; j < space->dim(); ++j) {
      for (int k = 0; k < space->dim(); ++k) {
        if (A(j, k) == Complex(0.0) || alpha[k] == 0) continue;
        if (j == k) {
          out.add_coeff(alpha, A(j, j) * eps * static_cast<double>(alpha[j]) * c);
        } else {
          MultiIndex target = alpha;
          target[k] -= 1;
          target[j] += 1;
          const double amp =
              std::sqrt(static_cast<double>(alpha[k]) * (alpha[j] + 1));
          out.add_coeff(target, A(j, k) * eps * amp * c);
        }
      }
    }
  }
  return out;
}

FockVector apply_gauge(double theta, const FockVector& v) {
  FockVector out(v.space());
  for (const auto& [alpha, c] : v.terms()) {
    out.set_coeff(alpha, c * std::exp(Complex(0.0, theta * degree(alpha))));
  }
  return out;
}

FockVector weyl_apply(const Vec& f, const FockVector& v) {
  const SpacePtr& space = v.space();
  check_mode_vector(space, f, "weyl_apply");
  if (f.squaredNorm() == 0.0) return v;
  // Taylor sum loses about e^{gen_norm} eps_mach in absolute precision; the
  // dense spectral route is exact but cubic in the dimension. Small spaces go
  // dense, large spaces go through the series when its precision certifies.
  const double gen_norm =
      std::sqrt(2.0) * f.norm() * std::sqrt(space->epsilon() * space->n_max()) +
      std::sqrt(space->epsilon() / 2.0) * f.norm();
  const bool series_ok = gen_norm <= 25.0;
  const bool use_series =
      (space->total_dim() > 1024 && series_ok) ||
      (space->total_dim() > kDenseDimCap);
  if (!use_series) {
    if (space->total_dim() <= kDenseDimCap) return weyl_operator(space, f).apply(v);
  }
  if (!series_ok) {
    throw GuardViolation("weyl_apply: generator norm too large for series on this space");
  }
  FockVector acc = v;
  FockVector term = v;
  const double ref = v.norm();
  for (int m = 1; m <= 400; ++m) {
    term = apply_field(f, term);
    term *= Complex(0.0, 1.0 / m);
    acc += term;
    if (m > gen_norm && term.norm() < 1e-16 * ref) break;
    if (m == 400) throw GuardViolation("weyl_apply: series did not converge");
  }
  acc.prune(0.0);
  return acc;
}

BlockOperator annihilation_operator(const SpacePtr& space, const Vec& f) {
  check_mode_vector(space, f, "annihilation_operator");
  const BasisTable& basis = space->basis();
  BlockOperator op(space, -1);
  const double eps = space->epsilon();
  for (int n = 1; n <= space->n_max(); ++n) {
    Mat& b = op.block(n);
    for (std::int64_t col = 0; col < space->block_dim(n); ++col) {
      const MultiIndex& alpha = basis.at(basis.block_offset(n) + col);
      for (int j = 0; j < space->dim(); ++j) {
        if (alpha[j] == 0 || f[j] == Complex(0.0)) continue;
        MultiIndex t = alpha;
        t[j] -= 1;
        const std::int64_t row = basis.index_of(t) - basis.block_offset(n - 1);
        b(row, col) += std::conj(f[j]) * std::sqrt(eps * alpha[j]);
      }
    }
  }
  return op;
}

BlockOperator creation_operator(const SpacePtr& space, const Vec& f) {
  return annihilation_operator(space, f).adjoint();
}

DenseOperator field_operator(const SpacePtr& space, const Vec& f) {
  return DenseOperator(
      space, dense_of(space, [&](const FockVector& v) { return apply_field(f, v); }));
}

DenseOperator conjugate_field_operator(const SpacePtr& space, const Vec& f) {
  return field_operator(space, Complex(0.0, 1.0) * f);
}

DenseOperator weyl_operator(const SpacePtr& space, const Vec& f) {
  check_mode_vector(space, f, "weyl_operator");
  if (space->total_dim() > kDenseDimCap)
    throw std::invalid_argument("weyl_operator: space too large for dense exponential");
  Mat phi = field_operator(space, f).matrix();
  // exp(i Phi) through the spectral decomposition of the Hermitian generator
  Eigen::SelfAdjointEigenSolver<Mat> es(phi);
  Vec phases(es.eigenvalues().size());
  for (std::int64_t i = 0; i < phases.size(); ++i) {
    phases[i] = std::exp(Complex(0.0, es.eigenvalues()[i]));
  }
  Mat w = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return DenseOperator(space, std::move(w));
}

BlockOperator number_operator(const SpacePtr& space) {
  BlockOperator op(space, 0);
  for (int n = 0; n <= space->n_max(); ++n) {
    op.block(n) = (space->epsilon() * n) *
                  Mat::Identity(space->block_dim(n), space->block_dim(n));
  }
  return op;
}

BlockOperator dgamma_operator(const SpacePtr& space, const Mat& A) {
  if (!A.isApprox(A.adjoint(), 1e-12))
    throw std::invalid_argument("dgamma_operator: A must be Hermitian");
  const BasisTable& basis = space->basis();
  BlockOperator op(space, 0);
  for (int n = 0; n <= space->n_max(); ++n) {
    Mat& b = op.block(n);
    for (std::int64_t col = 0; col < space->block_dim(n); ++col) {
      FockVector e(space);
      e.set_coeff(basis.at(basis.block_offset(n) + col), 1.0);
      FockVector r = apply_dgamma(A, e);
      for (const auto& [a, c] : r.terms()) {
        b(basis.index_of(a) - basis.block_offset(n), col) = c;
      }
    }
  }
  return op;
}

namespace {

// <e_alpha, S^{tensor n} e_beta> on the symmetric subspace:
// sqrt(alpha! beta!) * sum over nonneg integer matrices m with row sums alpha
// and column sums beta of prod S_{jk}^{m_jk} / m_jk!.
Complex gamma_entry(const Mat& S, const MultiIndex& alpha, const MultiIndex& beta) {
  const int d = static_cast<int>(alpha.size());
  Complex total = 0.0;
  std::vector<int> colrest(beta.begin(), beta.end());
  // recursive fill of the matrix, row by row
  std::function<void(int, Complex)> fill_row = [&](int row, Complex acc) {
    if (row == d) {
      bool done = true;
      for (int k = 0; k < d; ++k)
        if (colrest[k] != 0) done = false;
      if (done) total += acc;
      return;
    }
    // distribute alpha[row] over columns with available column budget
    std::function<void(int, int, Complex)> fill_cols = [&](int col, int rest,
                                                           Complex acc2) {
      if (col == d - 1) {
        if (rest > colrest[col]) return;
        Complex factor = 1.0;
        for (int r = 0; r < rest; ++r) factor *= S(row, col) / double(r + 1);
        colrest[col] -= rest;
        fill_row(row + 1, acc2 * factor);
        colrest[col] += rest;
        return;
      }
      Complex factor = 1.0;
      for (int m = 0; m <= std::min(rest, colrest[col]); ++m) {
        if (m > 0) factor *= S(row, col) / double(m);
        colrest[col] -= m;
        fill_cols(col + 1, rest - m, acc2 * factor);
        colrest[col] += m;
      }
    };
    fill_cols(0, alpha[row], acc);
  };
  fill_row(0, 1.0);
  double logw = 0.0;
  for (int j = 0; j < d; ++j) logw += log_factorial(alpha[j]) + log_factorial(beta[j]);
  return total * std::exp(0.5 * logw);
}

}  // namespace

BlockOperator gamma_operator(const SpacePtr& space, const Mat& S) {
  if (S.rows() != space->dim() || S.cols() != space->dim())
    throw std::invalid_argument("gamma_operator: matrix dimension mismatch");
  const BasisTable& basis = space->basis();
  BlockOperator op(space, 0);
  for (int n = 0; n <= space->n_max(); ++n) {
    Mat& b = op.block(n);
    for (std::int64_t col = 0; col < space->block_dim(n); ++col) {
      const MultiIndex& beta = basis.at(basis.block_offset(n) + col);
      for (std::int64_t row = 0; row < space->block_dim(n); ++row) {
        const MultiIndex& alpha = basis.at(basis.block_offset(n) + row);
        b(row, col) = gamma_entry(S, alpha, beta);
      }
    }
  }
  return op;
}

BlockOperator gauge_rotation(const SpacePtr& space, double theta) {
  BlockOperator op(space, 0);
  for (int n = 0; n <= space->n_max(); ++n) {
    op.block(n) = std::exp(Complex(0.0, theta * n)) *
                  Mat::Identity(space->block_dim(n), space->block_dim(n));
  }
  return op;
}

Mat dense_of(const SpacePtr& space,
             const std::function<FockVector(const FockVector&)>& action) {
  const BasisTable& basis = space->basis();
  Mat out = Mat::Zero(basis.size(), basis.size());
  for (std::int64_t col = 0; col < basis.size(); ++col) {
    FockVector e(space);
    e.set_coeff(basis.at(col), 1.0);
    FockVector r = action(e);
    for (const auto& [a, c] : r.terms()) out(basis.index_of(a), col) = c;
  }
  return out;
}

double operator_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
}

}  // namespace focklab
