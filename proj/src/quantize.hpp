// Copyright 2026 The Focklab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FOCKLAB_QUANTIZE_HPP
#define FOCKLAB_QUANTIZE_HPP

#include "poly_symbol.hpp"
#include "special_functions.hpp"

namespace focklab {

// Trigonometric symbol b(z) = sum_m c_m e^{2 pi i S(z, xi_m)}, S = Re<.,.>.
// A finite atomic Fourier measure; quantizations become finite Weyl sums.
struct TrigSymbol {
  struct Atom {
    Complex coeff;
    Vec xi;
  };
  std::vector<Atom> atoms;

  Complex evaluate(const Vec& z) const;
  double coeff_l1() const;  // sum |c_m| >= sup |b|
};

// V[phi, psi](xi) = <psi, W(sqrt2 pi xi) phi>
Complex fourier_wigner(const FockVector& phi, const FockVector& psi, const Vec& xi);

// Closed form of V[z^{tensor k}, z^{tensor j}] at the scaled point
// xi / (pi sqrt(2 eps)); requires |z| = 1.
Complex laguerre_vw(int k, int j, const Vec& z, const Vec& xi, double eps);

// b^Weyl = sum_m c_m W(sqrt2 pi xi_m)
DenseOperator weyl_quantize_trig(const SpacePtr& space, const TrigSymbol& b);
FockVector weyl_trig_apply(const TrigSymbol& b, const FockVector& v);

// b^{A-Wick} = sum_m c_m W(sqrt2 pi xi_m) e^{-eps pi^2 |xi_m|^2 / 2}
DenseOperator anti_wick_quantize_trig(const SpacePtr& space, const TrigSymbol& b);
FockVector anti_wick_trig_apply(const TrigSymbol& b, const FockVector& v);

// Quadrature route through coherent projectors, for general bounded symbols.
// Tensor Gauss-Hermite grid over the real coordinates; d <= 2 only.
DenseOperator anti_wick_quadrature(const SpacePtr& space,
                                   const std::function<Complex(const Vec&)>& b,
                                   int order);

// Partial sum of the Hermite expansion of W(xi):
//   sum_{n < n_terms} (|sqrt(eps) xi|^n / (2^n n!)) h_n(i sqrt2 S(xi,z)/|sqrt(eps) xi|)^Wick
DenseOperator weyl_hermite_series(const SpacePtr& space, const Vec& xi, int n_terms);

// Hermite polynomial of a symbol argument, for the series above and for the
// trace reconstruction checks.
PolySymbol hermite_symbol(int n, const PolySymbol& x);

// || b^Wick - b^Weyl || restricted to blocks n <= n_guard, with the Weyl side
// realized as (b * Gaussian(eps/2))^Wick (polynomial deconvolution identity).
double weyl_wick_gap(const SpacePtr& space, const PolySymbol& b, int n_guard);

}  // namespace focklab

#endif
