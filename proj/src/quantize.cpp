// Copyright 2026 The Focklab Authors
// SPDX-License-Identifier: Apache-2.0

#include "quantize.hpp"

#include <cmath>

namespace focklab {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

Complex TrigSymbol::evaluate(const Vec& z) const {
  Complex s = 0.0;
  for (const auto& atom : atoms) {
    const double sform = 0.5 * (z.dot(atom.xi) + atom.xi.dot(z)).real();
    s += atom.coeff * std::exp(Complex(0.0, kTwoPi * sform));
  }
  return s;
}

double TrigSymbol::coeff_l1() const {
  double s = 0.0;
  for (const auto& atom : atoms) s += std::abs(atom.coeff);
  return s;
}

Complex fourier_wigner(const FockVector& phi, const FockVector& psi, const Vec& xi) {
  Vec f = std::sqrt(2.0) * M_PI * xi;
  return inner(psi, weyl_apply(f, phi));
}

// Closed form of <z^{tensor j}, W(sqrt(2/eps) xi) z^{tensor k}>, i.e. the
// Fourier-Wigner transform at the scaled point xi/(pi sqrt(eps)). The scaling
// was pinned numerically against the Weyl matrix (the k=j=0 case is the
// Gaussian e^{-|xi|^2/2}).
Complex laguerre_vw(int k, int j, const Vec& z, const Vec& xi, double eps) {
  if (std::abs(z.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("laguerre_vw: |z| must be 1");
  if (k < 0 || j < 0) throw std::invalid_argument("laguerre_vw: negative index");
  const Complex xi_z = xi.dot(z);   // <xi, z>, antilinear left
  const Complex z_xi = z.dot(xi);   // <z, xi>
  const double t = std::norm(xi_z);
  const double gauss = std::exp(-0.5 * xi.squaredNorm());
  const Complex i_unit(0.0, 1.0);
  (void)eps;  // the point xi/(pi sqrt(eps)) is chosen by the caller's probe
  if (k >= j) {
    const double amp = std::exp(0.5 * (log_factorial(j) - log_factorial(k)));
    return std::pow(i_unit, k - j) * amp * laguerre_l(j, k - j, t) *
           std::pow(xi_z, k - j) * gauss;
  }
  const double amp = std::exp(0.5 * (log_factorial(k) - log_factorial(j)));
  return std::pow(i_unit, j - k) * amp * laguerre_l(k, j - k, t) *
         std::pow(z_xi, j - k) * gauss;
}

DenseOperator weyl_quantize_trig(const SpacePtr& space, const TrigSymbol& b) {
  Mat acc = Mat::Zero(space->total_dim(), space->total_dim());
  for (const auto& atom : b.atoms) {
    acc += atom.coeff * weyl_operator(space, Vec(std::sqrt(2.0) * M_PI * atom.xi)).matrix();
  }
  return DenseOperator(space, std::move(acc));
}

FockVector weyl_trig_apply(const TrigSymbol& b, const FockVector& v) {
  FockVector out(v.space());
  for (const auto& atom : b.atoms) {
    FockVector w = weyl_apply(Vec(std::sqrt(2.0) * M_PI * atom.xi), v);
    w *= atom.coeff;
    out += w;
  }
  return out;
}

DenseOperator anti_wick_quantize_trig(const SpacePtr& space, const TrigSymbol& b) {
  Mat acc = Mat::Zero(space->total_dim(), space->total_dim());
  const double eps = space->epsilon();
  for (const auto& atom : b.atoms) {
    const double damp = std::exp(-0.5 * eps * M_PI * M_PI * atom.xi.squaredNorm());
    acc += atom.coeff * damp *
           weyl_operator(space, Vec(std::sqrt(2.0) * M_PI * atom.xi)).matrix();
  }
  return DenseOperator(space, std::move(acc));
}

FockVector anti_wick_trig_apply(const TrigSymbol& b, const FockVector& v) {
  const double eps = v.space()->epsilon();
  FockVector out(v.space());
  for (const auto& atom : b.atoms) {
    FockVector w = weyl_apply(Vec(std::sqrt(2.0) * M_PI * atom.xi), v);
    w *= atom.coeff * std::exp(-0.5 * eps * M_PI * M_PI * atom.xi.squaredNorm());
    out += w;
  }
  return out;
}

DenseOperator anti_wick_quadrature(const SpacePtr& space,
                                   const std::function<Complex(const Vec&)>& b,
                                   int order) {
  const int d = space->dim();
  if (d > 2)
    throw std::invalid_argument("anti_wick_quadrature: only d <= 2 supported");
  const double eps = space->epsilon();
  const BasisTable& basis = space->basis();
  const std::int64_t dim = basis.size();
  QuadratureRule gh = gauss_hermite(order);

  // After xi = sqrt(eps) u the integrand carries exactly the weight
  // e^{-|u|^2}; the rescaled coherent vector has entries prod u^alpha/sqrt(alpha!).
  Mat acc = Mat::Zero(dim, dim);
  std::vector<int> idx(2 * d, 0);
  const std::int64_t nodes_total = [&] {
    std::int64_t t = 1;
    for (int i = 0; i < 2 * d; ++i) t *= order;
    return t;
  }();
  for (std::int64_t flat = 0; flat < nodes_total; ++flat) {
    std::int64_t rest = flat;
    double weight = 1.0;
    Vec u(d);
    for (int c = 0; c < d; ++c) {
      const int ix = static_cast<int>(rest % order);
      rest /= order;
      const int iy = static_cast<int>(rest % order);
      rest /= order;
      weight *= gh.weights[ix] * gh.weights[iy];
      u[c] = Complex(gh.nodes[ix], gh.nodes[iy]);
    }
    Vec coeff(dim);
    for (std::int64_t i = 0; i < dim; ++i) {
      const MultiIndex& alpha = basis.at(i);
      Complex m = 1.0;
      double logf = 0.0;
      for (int c = 0; c < d; ++c) {
        for (int r = 0; r < alpha[c]; ++r) m *= u[c];
        logf += log_factorial(alpha[c]);
      }
      coeff[i] = m * std::exp(-0.5 * logf);
    }
    const Complex bval = b(Vec(std::sqrt(eps) * u));
    acc.noalias() += (weight * bval / std::pow(M_PI, d)) * (coeff * coeff.adjoint());
  }
  return DenseOperator(space, std::move(acc));
}

namespace {

// Drop monomials that act as zero on every block |alpha| <= n_max (a term
// needs |gamma| <= n_max and |beta| <= n_max to connect two stored blocks).
PolySymbol drop_unreachable_terms(const PolySymbol& b, int n_max) {
  PolySymbol out(b.dim());
  for (const auto& [k, c] : b.terms()) {
    if (degree(k.first) > n_max || degree(k.second) > n_max) continue;
    out.add_term(k.first, k.second, c);
  }
  return out;
}

}  // namespace

PolySymbol hermite_symbol(int n, const PolySymbol& x) {
  PolySymbol hm1 = symbol_constant(x.dim(), 1.0);
  if (n == 0) return hm1;
  PolySymbol h = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    PolySymbol next = 2.0 * (x * h);
    PolySymbol low = hm1;
    low *= Complex(-2.0 * k);
    next += low;
    hm1 = h;
    h = next;
  }
  return h;
}

DenseOperator weyl_hermite_series(const SpacePtr& space, const Vec& xi, int n_terms) {
  const double eps = space->epsilon();
  const double norm_xi = std::sqrt(eps) * xi.norm();
  if (norm_xi == 0.0) {
    return DenseOperator(space,
                         Mat::Identity(space->total_dim(), space->total_dim()));
  }
  // x = i sqrt2 S(xi, z) / |sqrt(eps) xi|
  PolySymbol x = symbol_s_form(space->dim(), xi);
  x *= Complex(0.0, std::sqrt(2.0) / norm_xi);
  PolySymbol sum(space->dim());
  PolySymbol h_prev = symbol_constant(space->dim(), 1.0);  // h_0
  PolySymbol h_cur = 2.0 * x;                              // h_1
  for (int n = 0; n < n_terms; ++n) {
    PolySymbol term = (n == 0) ? h_prev : h_cur;
    term *= Complex(std::exp(n * std::log(norm_xi / 2.0) - log_factorial(n)));
    sum += term;
    if (n >= 1) {
      PolySymbol next = 2.0 * (x * h_cur);
      PolySymbol low = h_prev;
      low *= Complex(-2.0 * n);
      next += low;
      h_prev = h_cur;
      h_cur = next;
    }
  }
  return wick_quantize_dense(space, drop_unreachable_terms(sum, space->n_max()));
}

double weyl_wick_gap(const SpacePtr& space, const PolySymbol& b, int n_guard) {
  if (n_guard > space->n_max())
    throw std::invalid_argument("weyl_wick_gap: guard exceeds truncation");
  // b^Weyl = (b * Gaussian(eps/2))^Wick for polynomials, so the gap symbol is
  // b - b * G, an epsilon-graded polynomial starting at grade 1.
  PolySymbol conv = gaussian_convolve(b, 0.5 * space->epsilon());
  PolySymbol gap = b;
  conv *= Complex(-1.0);
  gap += conv;
  Mat m = wick_quantize_dense(space, gap).matrix();
  const BasisTable& basis = space->basis();
  const std::int64_t cut = basis.block_offset(n_guard + 1);
  return operator_norm(Mat(m.topLeftCorner(cut, cut)));
}

}  // namespace focklab
