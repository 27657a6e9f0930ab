// Copyright 2026 The Focklab Authors
// SPDX-License-Identifier: Apache-2.0

#include "wigner.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace focklab {

namespace {
constexpr int kCirclePoints = 256;
}

double MixedState::trace() const {
  double t = 0.0;
  for (const auto& [w, v] : components) t += w * v.norm2();
  return t;
}

MixedState MixedState::pure(FockVector v) {
  MixedState rho;
  rho.components.emplace_back(1.0, std::move(v));
  return rho;
}

Complex char_function(const FockVector& psi, const Vec& xi) {
  const double eps = psi.space()->epsilon();
  const Complex val = inner(psi, weyl_apply(Vec(std::sqrt(2.0) * M_PI * xi), psi));
  return val * std::exp(-0.5 * eps * M_PI * M_PI * xi.squaredNorm());
}

Complex char_function(const MixedState& rho, const Vec& xi) {
  if (rho.components.empty()) return 0.0;
  const SpacePtr& space = rho.components.front().second.space();
  const double eps = space->epsilon();
  const double gauss = std::exp(-0.5 * eps * M_PI * M_PI * xi.squaredNorm());
  // for larger mixtures build the Weyl matrix once
  if (rho.components.size() > 4 && space->total_dim() <= 4096) {
    DenseOperator w_op = weyl_operator(space, Vec(std::sqrt(2.0) * M_PI * xi));
    Complex s = 0.0;
    for (const auto& [w, v] : rho.components) {
      if (w == 0.0) continue;
      s += w * inner(v, w_op.apply(v));
    }
    return s * gauss;
  }
  Complex s = 0.0;
  for (const auto& [w, v] : rho.components) {
    if (w == 0.0) continue;
    s += w * char_function(v, xi);
  }
  return s;
}

LimitChar LimitChar::dirac(Vec z) {
  LimitChar l;
  l.kind_ = Kind::kDirac;
  l.z_ = std::move(z);
  return l;
}

LimitChar LimitChar::circle(Vec z, int m) {
  LimitChar l;
  l.kind_ = Kind::kCircle;
  l.z_ = std::move(z);
  l.m_ = m;
  return l;
}

LimitChar LimitChar::mixture(std::vector<std::pair<Complex, LimitChar>> parts) {
  LimitChar l;
  l.kind_ = Kind::kMixture;
  l.parts_ = std::move(parts);
  return l;
}

LimitChar LimitChar::constant(Complex c) {
  LimitChar l;
  l.kind_ = Kind::kConstant;
  l.c_ = c;
  return l;
}

Complex LimitChar::evaluate(const Vec& xi) const {
  switch (kind_) {
    case Kind::kDirac: {
      const double sform = 0.5 * (xi.dot(z_) + z_.dot(xi)).real();
      return std::exp(Complex(0.0, 2.0 * M_PI * sform));
    }
    case Kind::kCircle: {
      Complex acc = 0.0;
      for (int k = 0; k < kCirclePoints; ++k) {
        const double theta = 2.0 * M_PI * k / kCirclePoints;
        Vec zt = std::exp(Complex(0.0, theta)) * z_;
        const double sform = 0.5 * (xi.dot(zt) + zt.dot(xi)).real();
        acc += std::exp(Complex(0.0, 2.0 * M_PI * sform - m_ * theta));
      }
      return acc / double(kCirclePoints);
    }
    case Kind::kMixture: {
      Complex acc = 0.0;
      for (const auto& [w, sub] : parts_) acc += w * sub.evaluate(xi);
      return acc;
    }
    case Kind::kConstant:
      return c_;
  }
  return 0.0;
}

CharReport compare_limit(const StateFamily& family, const LimitChar& limit,
                         const std::vector<Vec>& probes,
                         const std::vector<double>& eps_grid, double tol) {
  CharReport report;
  report.tolerance = tol;
  for (double eps : eps_grid) {
    MixedState rho = family(eps);
    double sup = 0.0;
    for (size_t p = 0; p < probes.size(); ++p) {
      const Complex g = char_function(rho, probes[p]);
      const Complex l = limit.evaluate(probes[p]);
      const double err = std::abs(g - l);
      sup = std::max(sup, err);
      report.rows.push_back({eps, static_cast<int>(p), g, l, err});
    }
    report.sup_residual.push_back(sup);
  }
  report.decreasing = residuals_decreasing(report.sup_residual);
  report.pass = report.decreasing && !report.sup_residual.empty() &&
                report.sup_residual.back() <= tol;
  return report;
}

FockVector hermite_superposition(const SpacePtr& space, const std::vector<Vec>& zs,
                                 int k) {
  if (zs.empty()) throw std::invalid_argument("hermite_superposition: empty list");
  FockVector acc(space);
  for (const Vec& z : zs) acc += hermite_state(space, z, k);
  acc *= Complex(1.0 / std::sqrt(double(zs.size())));
  return acc;
}

FockVector coherent_hermite_superposition(const SpacePtr& space, const Vec& z, int k,
                                          double tail_tol) {
  FockVector acc = coherent_state(space, z, tail_tol);
  acc += hermite_state(space, z, k);
  acc *= Complex(1.0 / std::sqrt(2.0));
  return acc;
}

namespace {

void check_number_commutes(const SpacePtr& space, const UnitaryHook& u) {
  // witness: U must keep a two-block state block-separated
  FockVector witness(space);
  witness.set_coeff(MultiIndex(space->dim(), 0), 1.0);
  MultiIndex one(space->dim(), 0);
  one[0] = std::min(2, space->n_max());
  witness.set_coeff(one, 1.0);
  FockVector moved = u(witness);
  for (const auto& [alpha, c] : moved.terms()) {
    const int n = degree(alpha);
    if (n != 0 && n != degree(one) && std::abs(c) > 1e-10)
      throw std::invalid_argument("gauge_average: U does not commute with N");
  }
}

Mat density_matrix(const SpacePtr& space,
                   const std::vector<std::pair<double, FockVector>>& comps) {
  const BasisTable& basis = space->basis();
  Mat rho = Mat::Zero(basis.size(), basis.size());
  for (const auto& [w, v] : comps) {
    Vec dense = v.to_dense();
    rho.noalias() += w * (dense * dense.adjoint());
  }
  return rho;
}

}  // namespace

MixedState gauge_average(const SpacePtr& space, const UnitaryHook& u, const Vec& z,
                         const std::function<double(double)>& phi) {
  check_number_commutes(space, u);
  const double eps = space->epsilon();
  MixedState rho;
  for (int n = 0; n <= space->n_max(); ++n) {
    const double w = std::sqrt(eps) * phi(std::sqrt(eps) * (n - 1.0 / eps));
    if (w <= 0.0) continue;
    rho.components.emplace_back(w, u(hermite_state(space, z, n)));
  }
  return rho;
}

double gauge_average_two_ways(const SpacePtr& space, const UnitaryHook& u,
                              const Vec& z, double tail_tol) {
  check_number_commutes(space, u);
  const double eps = space->epsilon();

  // theta quadrature of the gauge orbit of U E(z)
  FockVector e = coherent_state(space, z, tail_tol);
  std::vector<std::pair<double, FockVector>> orbit;
  for (int k = 0; k < kCirclePoints; ++k) {
    const double theta = 2.0 * M_PI * k / kCirclePoints;
    orbit.emplace_back(1.0 / kCirclePoints, u(apply_gauge(theta, e)));
  }
  Mat sigma_quad = density_matrix(space, orbit);

  // direct Poisson mixture over Hermite states
  const double lambda = z.squaredNorm() / eps;
  std::vector<std::pair<double, FockVector>> poisson;
  for (int n = 0; n <= space->n_max(); ++n) {
    const double w = std::exp(-lambda + n * std::log(lambda) - log_factorial(n));
    if (w < 1e-18) continue;
    poisson.emplace_back(w, u(hermite_state(space, z, n)));
  }
  Mat sigma_poisson = density_matrix(space, poisson);

  Eigen::BDCSVD<Mat> svd(sigma_quad - sigma_poisson);
  return svd.singularValues().sum();
}

Complex wick_moment(const MixedState& rho, const PolySymbol& b) {
  Complex s = 0.0;
  for (const auto& [w, v] : rho.components) {
    if (w == 0.0) continue;
    s += w * inner(v, apply_wick(b, v));
  }
  return s;
}

Complex hermite_wick_limit(const PolySymbol& b, const Vec& z, int m) {
  auto hom = b.homogeneity();
  if (!hom) throw std::invalid_argument("hermite_wick_limit: homogeneous b required");
  const auto [p, q] = *hom;
  if (p - q != m) return 0.0;
  return b.evaluate(z);
}

Complex weyl_trace(const MixedState& rho, const Vec& xi) {
  Complex s = 0.0;
  for (const auto& [w, v] : rho.components) {
    if (w == 0.0) continue;
    s += w * inner(v, weyl_apply(xi, v));
  }
  return s;
}

Complex hermite_series_trace(const MixedState& rho, const Vec& xi, int n_terms) {
  if (rho.components.empty()) return 0.0;
  const SpacePtr& space = rho.components.front().second.space();
  const double eps = space->epsilon();
  const double norm_xi = std::sqrt(eps) * xi.norm();
  if (norm_xi == 0.0) return rho.trace();
  PolySymbol x = symbol_s_form(space->dim(), xi);
  x *= Complex(0.0, std::sqrt(2.0) / norm_xi);
  Complex acc = 0.0;
  PolySymbol h_prev = symbol_constant(space->dim(), 1.0);
  PolySymbol h_cur = 2.0 * x;
  for (int n = 0; n < n_terms; ++n) {
    const PolySymbol& hn = (n == 0) ? h_prev : h_cur;
    PolySymbol reachable(space->dim());
    for (const auto& [k, c] : hn.terms()) {
      if (degree(k.first) <= space->n_max() && degree(k.second) <= space->n_max())
        reachable.add_term(k.first, k.second, c);
    }
    const double coeff = std::exp(n * std::log(norm_xi / 2.0) - log_factorial(n));
    acc += coeff * wick_moment(rho, reachable);
    if (n >= 1) {
      PolySymbol next = 2.0 * (x * h_cur);
      PolySymbol low = h_prev;
      low *= Complex(-2.0 * n);
      next += low;
      h_prev = h_cur;
      h_cur = next;
    }
  }
  return acc;
}

double positive_type_min_eigenvalue(const MixedState& rho,
                                    const std::vector<Vec>& probes) {
  const int n = static_cast<int>(probes.size());
  Mat m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m(i, j) = char_function(rho, Vec(probes[i] - probes[j]));
    }
  }
  Eigen::SelfAdjointEigenSolver<Mat> es((m + m.adjoint()) / 2.0);
  return es.eigenvalues().minCoeff();
}

NormalApproxResult normal_approx(
    const std::function<Complex(std::int64_t, double)>& rule, double lambda) {
  NormalApproxResult res;
  // Poisson sum until the tail is certified below 1e-14
  const std::int64_t hi =
      static_cast<std::int64_t>(lambda + 20.0 * std::sqrt(lambda) + 60.0);
  Complex lhs = 0.0;
  for (std::int64_t n = 0; n <= hi; ++n) {
    const double w = std::exp(-lambda + n * std::log(lambda) - log_factorial(
                                                                   static_cast<int>(n)));
    if (w < 1e-300) continue;
    lhs += w * rule(n, lambda);
  }
  res.lhs = lhs;

  // composite midpoint over s in [-12, 12]; the integrand is piecewise
  // constant on steps of width 1/sqrt(lambda)
  const double h = std::min(0.01, 0.5 / std::sqrt(lambda));
  const std::int64_t cells = static_cast<std::int64_t>(std::ceil(24.0 / h));
  Complex rhs = 0.0;
  for (std::int64_t c = 0; c < cells; ++c) {
    const double s = -12.0 + (c + 0.5) * h;
    const double arg = std::sqrt(lambda) * s + lambda;
    const std::int64_t n = static_cast<std::int64_t>(std::floor(arg));
    if (n < 0) continue;
    rhs += rule(n, lambda) * std::exp(-0.5 * s * s) / std::sqrt(2.0 * M_PI) * h;
  }
  res.rhs = rhs;
  return res;
}

}  // namespace focklab
