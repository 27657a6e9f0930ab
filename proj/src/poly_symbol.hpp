// Copyright 2026 The Focklab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FOCKLAB_POLY_SYMBOL_HPP
#define FOCKLAB_POLY_SYMBOL_HPP

#include <optional>

#include "operators.hpp"

namespace focklab {

// Finitely supported polynomial b(z) = sum c_{beta gamma} conj(z)^beta z^gamma.
// beta carries the conjugated exponents, gamma the holomorphic ones. A
// (p,q)-homogeneous symbol has |gamma| = p and |beta| = q for every term.
class PolySymbol {
 public:
  using TermMap = std::map<IndexPair, Complex, IndexPairLess>;

  explicit PolySymbol(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  Complex coeff(const MultiIndex& beta, const MultiIndex& gamma) const;
  void add_term(const MultiIndex& beta, const MultiIndex& gamma, Complex c);

  PolySymbol& operator+=(const PolySymbol& other);
  PolySymbol& operator*=(Complex s);
  PolySymbol conj() const;  // bar b: swaps beta/gamma, conjugates coefficients

  // Max degrees present: (max |gamma|, max |beta|). (0,0) for constants.
  std::pair<int, int> max_degrees() const;
  // Homogeneity (p,q) when every term satisfies |gamma|=p, |beta|=q.
  std::optional<std::pair<int, int>> homogeneity() const;

  Complex evaluate(const Vec& z) const;

 private:
  int dim_;
  TermMap terms_;
};

PolySymbol operator*(const PolySymbol& a, const PolySymbol& b);  // pointwise product
PolySymbol operator+(PolySymbol a, const PolySymbol& b);
PolySymbol operator*(Complex s, PolySymbol b);

// Finitely many epsilon grades, each a polynomial symbol.
class GradedSymbol {
 public:
  explicit GradedSymbol(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  const std::map<int, PolySymbol>& grades() const { return grades_; }
  PolySymbol grade(int r) const;
  void add_grade(int r, const PolySymbol& s);

  // sum_r eps^r grade_r, collapsed at a concrete epsilon
  PolySymbol collapse(double epsilon) const;

 private:
  int dim_;
  std::map<int, PolySymbol> grades_;
};

// --- convenience builders ---
PolySymbol symbol_zero(int d);
PolySymbol symbol_constant(int d, Complex c);
PolySymbol symbol_norm_squared(int d);                 // |z|^2
PolySymbol symbol_inner_z_xi(int d, const Vec& xi);    // <z, xi> = sum conj(z_j) xi_j
PolySymbol symbol_inner_xi_z(int d, const Vec& xi);    // <xi, z> = sum conj(xi_j) z_j
PolySymbol symbol_s_form(int d, const Vec& xi);        // S(xi, z) = Re<xi, z>

// --- Wick machinery ---

// Normal-ordered action of b on a state (creations from beta, annihilations
// from gamma, each ladder factor carrying sqrt(eps)).
FockVector apply_wick(const PolySymbol& b, const FockVector& v);

// Materialized operator; requires dense enumeration.
DenseOperator wick_quantize_dense(const SpacePtr& space, const PolySymbol& b);
// Number-conserving case (p == q for every term).
BlockOperator wick_quantize_block(const SpacePtr& space, const PolySymbol& b);

// d_z^k b1 . d_zbar^k b2 (contraction of the k-th derivatives)
PolySymbol derivative_pairing(const PolySymbol& b1, const PolySymbol& b2, int k);

// {b1, b2}^{(k)} = d_z^k b1 . d_zbar^k b2 - d_z^k b2 . d_zbar^k b1
PolySymbol poisson_bracket_k(const PolySymbol& b1, const PolySymbol& b2, int k);

// Wick product: grade k carries (1/k!) d_z^k b1 . d_zbar^k b2
GradedSymbol wick_product(const PolySymbol& b1, const PolySymbol& b2);
GradedSymbol wick_product(const GradedSymbol& b1, const GradedSymbol& b2);
// Wick commutator: grade k >= 1 carries (1/k!) {b1, b2}^{(k)}
GradedSymbol wick_commutator(const PolySymbol& b1, const PolySymbol& b2);

// --- substitutions ---
PolySymbol substitute_translate(const PolySymbol& b, const Vec& z0);   // z -> z + z0
PolySymbol substitute_linear(const PolySymbol& b, const Mat& B);       // z -> B z
PolySymbol substitute_real_linear(const PolySymbol& b, const Mat& B,
                                  const Mat& B2);  // z -> B z + B2 conj(z)

// --- tensor form ---
// Matrix of b-tilde in the occupation bases of sym^p -> sym^q; requires a
// homogeneous symbol.
Mat tensor_of(const PolySymbol& b);
PolySymbol symbol_from_tensor(int d, int p, int q, const Mat& m);
double tensor_norm(const PolySymbol& b);  // |b-tilde| as largest singular value

// e^{sigma Laplacian} b with Laplacian = sum_j d_{z_j} d_{conj z_j}
// (Gaussian convolution of a polynomial is again a polynomial).
PolySymbol gaussian_convolve(const PolySymbol& b, double sigma);

// <E(z), T E(z)> over probe points; the Wick symbol sampled on coherent states.
std::vector<Complex> wick_symbol_of(
    const SpacePtr& space, const std::function<FockVector(const FockVector&)>& op,
    const std::vector<Vec>& probes, double tail_tol = 1e-9);

// Checks |b^Wick|_{L(V_k, V_j)} <= delta^+ (j eps)^{q/2} (k eps)^{p/2} |b-tilde|
// on every stored block; returns the max ratio over blocks (<= 1 expected).
struct NumberEstimateReport {
  double max_ratio = 0.0;
  int worst_block = -1;
};
NumberEstimateReport number_estimate_check(const SpacePtr& space, const PolySymbol& b);

}  // namespace focklab

#endif
