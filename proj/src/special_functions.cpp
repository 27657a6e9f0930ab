// Copyright 2026 The Focklab Authors
// SPDX-License-Identifier: Apache-2.0

#include "special_functions.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "multi_index.hpp"

namespace focklab {

std::complex<double> hermite_h(int n, std::complex<double> x) {
  if (n < 0) throw std::invalid_argument("hermite_h: negative order");
  std::complex<double> hm1 = 1.0;  // h_0
  if (n == 0) return hm1;
  std::complex<double> h = 2.0 * x;  // h_1
  for (int k = 1; k < n; ++k) {
    std::complex<double> next = 2.0 * x * h - 2.0 * double(k) * hm1;
    hm1 = h;
    h = next;
  }
  return h;
}

std::complex<double> laguerre_l(int k, int j, std::complex<double> t) {
  if (k < 0 || j < 0) throw std::invalid_argument("laguerre_l: negative index");
  // three-term recurrence, stable where the explicit alternating sum cancels
  std::complex<double> lm1 = 1.0;  // L_0
  if (k == 0) return lm1;
  std::complex<double> l = 1.0 + double(j) - t;  // L_1
  for (int n = 1; n < k; ++n) {
    std::complex<double> next =
        ((2.0 * n + j + 1.0 - t) * l - (double(n) + j) * lm1) / (n + 1.0);
    lm1 = l;
    l = next;
  }
  return l;
}

namespace {

// Golub-Welsch from the Jacobi matrix of the orthogonal family.
QuadratureRule golub_welsch(const std::vector<double>& sub_diag, double mu0) {
  const int n = static_cast<int>(sub_diag.size()) + 1;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    J(i, i + 1) = sub_diag[i];
    J(i + 1, i) = sub_diag[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = es.eigenvalues()[i];
    const double v0 = es.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

}  // namespace

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: order < 1");
  std::vector<double> sub(n - 1);
  for (int k = 1; k < n; ++k) {
    sub[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  }
  QuadratureRule rule = golub_welsch(sub, 2.0);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[i];
    rule.weights[i] *= 0.5 * (b - a);
  }
  return rule;
}

QuadratureRule gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: order < 1");
  std::vector<double> sub(n - 1);
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(k / 2.0);
  return golub_welsch(sub, std::sqrt(M_PI));
}

ZetaResult zeta_certified(double s) {
  if (!(s > 1.0)) throw std::invalid_argument("zeta_certified: need s > 1");
  // Euler-Maclaurin: sum_{k<=N} k^{-s} + N^{1-s}/(s-1) - N^{-s}/2
  //   + s N^{-s-1}/12 - s(s+1)(s+2) N^{-s-3}/720 + R,
  // |R| <= |next term| = s(s+1)(s+2)(s+3)(s+4) N^{-s-5}/30240.
  const int N = 2000;
  double sum = 0.0;
  for (int k = N; k >= 1; --k) sum += std::pow(double(k), -s);
  sum += std::pow(double(N), 1.0 - s) / (s - 1.0);
  sum -= 0.5 * std::pow(double(N), -s);
  sum += s * std::pow(double(N), -s - 1.0) / 12.0;
  sum -= s * (s + 1.0) * (s + 2.0) * std::pow(double(N), -s - 3.0) / 720.0;
  const double rem = s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) *
                     std::pow(double(N), -s - 5.0) / 30240.0;
  return {sum, rem};
}

}  // namespace focklab
