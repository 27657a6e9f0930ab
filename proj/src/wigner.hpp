// Copyright 2026 The Focklab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FOCKLAB_WIGNER_HPP
#define FOCKLAB_WIGNER_HPP

#include "meanfield.hpp"

namespace focklab {

// Statistical mixture of pure states (weights need not sum to one exactly;
// truncation tails are reported through trace()).
struct MixedState {
  std::vector<std::pair<double, FockVector>> components;

  double trace() const;
  static MixedState pure(FockVector v);
};

// G_eps(xi) = Tr[rho W(sqrt2 pi xi)] e^{-eps pi^2 |xi|^2 / 2}
Complex char_function(const FockVector& psi, const Vec& xi);
Complex char_function(const MixedState& rho, const Vec& xi);

// Limit characteristic functionals for the desk-scale experiments.
class LimitChar {
 public:
  static LimitChar dirac(Vec z);
  // (1/2pi) int e^{2 pi i S(e^{i theta} z, xi)} e^{-i m theta} d theta,
  // 256-point periodic trapezoid
  static LimitChar circle(Vec z, int m);
  static LimitChar mixture(std::vector<std::pair<Complex, LimitChar>> parts);
  static LimitChar constant(Complex c);

  Complex evaluate(const Vec& xi) const;

 private:
  enum class Kind { kDirac, kCircle, kMixture, kConstant };
  Kind kind_;
  Vec z_;
  int m_ = 0;
  Complex c_;
  std::vector<std::pair<Complex, LimitChar>> parts_;
};

using StateFamily = std::function<MixedState(double eps)>;

struct CharRow {
  double epsilon;
  int probe_id;
  Complex g;
  Complex limit;
  double abs_err;
};

struct CharReport {
  std::vector<CharRow> rows;
  std::vector<double> sup_residual;  // one per epsilon, grid order
  bool decreasing = false;
  bool pass = false;
  double tolerance = 0.0;
};

CharReport compare_limit(const StateFamily& family, const LimitChar& limit,
                         const std::vector<Vec>& probes,
                         const std::vector<double>& eps_grid, double tol);

// L^{-1/2} sum_l z_l^{tensor k}
FockVector hermite_superposition(const SpacePtr& space, const std::vector<Vec>& zs,
                                 int k);
// (E(z) + z^{tensor k})/sqrt(2)
FockVector coherent_hermite_superposition(const SpacePtr& space, const Vec& z, int k,
                                          double tail_tol = 1e-9);

using UnitaryHook = std::function<FockVector(const FockVector&)>;

// rho_phi = sum_n sqrt(eps) phi(sqrt(eps)(n - 1/eps)) |U z^n><U z^n|.
// Requires [N, U] = 0 (verified on a witness state).
MixedState gauge_average(const SpacePtr& space, const UnitaryHook& u, const Vec& z,
                         const std::function<double(double)>& phi);

// The circle average of |U E(z)><U E(z)| built two ways: 256-point theta
// quadrature of the gauge orbit, and the direct Poisson mixture over
// |U z^n><U z^n|. Returns the trace-norm distance of the two density matrices.
double gauge_average_two_ways(const SpacePtr& space, const UnitaryHook& u,
                              const Vec& z, double tail_tol = 1e-9);

// Tr[rho b^Wick]
Complex wick_moment(const MixedState& rho, const PolySymbol& b);

// Circle-average limit of a Wick observable on the Hermite family:
// delta_{p-q, m} b(z) for homogeneous b.
Complex hermite_wick_limit(const PolySymbol& b, const Vec& z, int m);

// Trace reconstruction of Tr[rho W(xi)] through the Hermite/Wick series,
// following the number-representation expansion of the Weyl operator.
Complex hermite_series_trace(const MixedState& rho, const Vec& xi, int n_terms);

// Tr[rho W(xi)] directly.
Complex weyl_trace(const MixedState& rho, const Vec& xi);

// Positive-type check: min eigenvalue of [G(xi_i - xi_j)]_{ij}.
double positive_type_min_eigenvalue(const MixedState& rho,
                                    const std::vector<Vec>& probes);

// Poisson sum versus normal-approximation integral of a bounded-growth rule.
struct NormalApproxResult {
  Complex lhs;  // sum_n Poisson(lambda)(n) a_n(lambda)
  Complex rhs;  // int a_{[sqrt(lambda)s + lambda]}(lambda) gauss(s) ds
};
NormalApproxResult normal_approx(
    const std::function<Complex(std::int64_t, double)>& rule, double lambda);

}  // namespace focklab

#endif
