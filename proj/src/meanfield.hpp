// Copyright 2026 The Focklab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FOCKLAB_MEANFIELD_HPP
#define FOCKLAB_MEANFIELD_HPP

#include "quantize.hpp"

namespace focklab {

// Mean-field model H = dGamma(A) + Q^Wick with Q(z) = <z^2, Qtilde z^2>.
// v_norm plays the interaction sup-norm in every regime condition; by default
// it is ||2 Qtilde||.
struct ModelSpec {
  Mat A;        // d x d Hermitian one-particle energy
  Mat Qtensor;  // Hermitian on sym^2 C^d (occupation basis of |mu| = 2)
  double epsilon = 1.0;
  int n_max = 0;
  double v_norm = 0.0;

  int dim() const { return static_cast<int>(A.rows()); }
  void validate() const;

  PolySymbol q_symbol() const;  // Q in P_{2,2}
  PolySymbol h_symbol() const;  // <z, A z> + Q(z)

  Complex q_value(const Vec& z) const;
  Vec q_gradient(const Vec& z) const;  // d_zbar Q(z)
  double energy(const Vec& z) const;   // h(z) = <z, A z> + Q(z)
};

ModelSpec make_model(const Mat& A, const Mat& Qtensor, double epsilon, int n_max);

BlockOperator hamiltonian(const SpacePtr& space, const ModelSpec& model);

// U(t) = exp(-i t H / eps); blockwise spectral decomposition, built lazily.
class Propagator {
 public:
  Propagator(SpacePtr space, const ModelSpec& model);
  FockVector apply(const FockVector& v, double t) const;

 private:
  struct BlockEig {
    Mat vectors;
    Eigen::VectorXd values;
    bool ready = false;
  };
  const BlockEig& block_eig(int n) const;

  SpacePtr space_;
  ModelSpec model_;
  mutable std::vector<BlockEig> eigs_;
};

struct HartreeTrajectory {
  std::vector<double> times;
  std::vector<Vec> z;
  std::vector<double> omega;  // int_0^t Q(z_s) ds
  double norm_drift = 0.0;
  double energy_drift = 0.0;  // relative
  const Vec& z_final() const { return z.back(); }
  double omega_final() const { return omega.back(); }
};

// Classic RK4 with fixed step plus a step-halving verification; throws
// when the halved run disagrees by more than 1e-7.
HartreeTrajectory hartree_flow(const ModelSpec& model, const Vec& z0, double T,
                               double dt);

// Quadratic expansion of Q around z_t: the total-degree-2 part of Q(z + z_t).
PolySymbol hepp_quadratic_symbol(const ModelSpec& model, const Vec& z_t);

struct HeppResult {
  explicit HeppResult(SpacePtr space) : approx(space), u2_vacuum(std::move(space)) {}

  FockVector approx;      // e^{i omega/eps} W(sqrt2 z_t/(i eps)) U2(t,0) Omega
  FockVector u2_vacuum;   // U2(t,0) Omega
  double u2_norm_drift = 0.0;
  double number_moment1 = 0.0;  // <N> on U2 Omega
  double number_moment2 = 0.0;  // <N^2>
  HartreeTrajectory trajectory;
};

// Squeezed-coherent-state approximation of exp(-itH/eps) E(z0): Hartree
// displacement plus the quadratically evolved vacuum, integrated by Strang
// splitting with an exact free step and a midpoint-frozen quadratic step.
HeppResult hepp_approximation(const SpacePtr& space, const ModelSpec& model,
                              const Vec& z0, double t, double dt);

// b(e^{-itA} z)
PolySymbol free_evolved(const ModelSpec& model, const PolySymbol& b, double t);

// Multi-time hierarchy: all grades r = 0..n at times (t_1, ..., t_n) applied
// innermost-first, observable seeded at time t.
std::vector<PolySymbol> dyson_symbols(const ModelSpec& model, const PolySymbol& b,
                                      const std::vector<double>& times, double t);
PolySymbol dyson_symbol(const ModelSpec& model, const PolySymbol& b,
                        const std::vector<double>& times, double t, int r);

// <z^{tensor k-m}, U(t)* b^Wick U(t) z^{tensor k}> computed exactly through the
// blockwise propagator.
Complex dyson_matrix_element(const SpacePtr& space, const ModelSpec& model,
                             const PolySymbol& b, const Vec& z, int k, int m,
                             double t);

struct DysonExpansion {
  std::vector<Complex> beta;  // beta^{(r)} for r < ell
  bool series_regime = true;  // 4(1+2 delta)|t| v_norm <= 1
  double tail_bound = 0.0;    // geometric certificate for the n-cut
};

// Truncated expansion of the matrix element above; nested Gauss-Legendre on
// the time simplex, n-sum cut at n_cut with a geometric tail certificate.
DysonExpansion dyson_expansion(const ModelSpec& model, const PolySymbol& b,
                               const Vec& z, int k, int m, double t, int ell,
                               int n_cut, int quad_order, double delta = 0.5);

// Coefficients alpha_j of eps^j in kappa (kappa-eps) ... (kappa-(p+n-r-1) eps).
std::vector<double> falling_factorial_alphas(int p, int n, int r, double kappa);

struct ConvergenceRow {
  double epsilon;
  Complex measured;
  Complex reference;
  double abs_err;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  bool decreasing = false;  // residuals decreasing up to one inversion
};

bool residuals_decreasing(const std::vector<double>& r, int allowed_inversions = 1);

// <U(t) E(z0), b^Wick U(t) E(z0)> across an epsilon grid against b(z_t).
ConvergenceReport coherent_wick_limit(const ModelSpec& base, const Vec& z0,
                                      const PolySymbol& b, double t,
                                      const std::vector<double>& eps_grid,
                                      double n_max_over_mean = 8.0);

}  // namespace focklab

#endif
