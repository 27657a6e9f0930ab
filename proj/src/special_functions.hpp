// Copyright 2026 The Focklab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FOCKLAB_SPECIAL_FUNCTIONS_HPP
#define FOCKLAB_SPECIAL_FUNCTIONS_HPP

#include <complex>
#include <vector>

namespace focklab {

// Physicists' Hermite polynomial h_n, three-term recurrence.
std::complex<double> hermite_h(int n, std::complex<double> x);

// Generalized Laguerre polynomial L_k^{(j)}, evaluated by the explicit sum.
std::complex<double> laguerre_l(int k, int j, std::complex<double> t);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre on [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

// Gauss-Hermite with weight e^{-x^2} on the real line.
QuadratureRule gauss_hermite(int n);

// Riemann zeta via Euler-Maclaurin with a certified remainder; s > 1.
struct ZetaResult {
  double value;
  double tail_bound;
};
ZetaResult zeta_certified(double s);

}  // namespace focklab

#endif
