// Copyright 2026 The Focklab Authors
// SPDX-License-Identifier: Apache-2.0

#include "meanfield.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace focklab {

void ModelSpec::validate() const {
  if (A.rows() != A.cols() || Qtensor.rows() != Qtensor.cols())
    throw std::invalid_argument("ModelSpec: square matrices required");
  const std::int64_t d2 = composition_count(2, dim());
  if (Qtensor.rows() != d2)
    throw std::invalid_argument("ModelSpec: Qtensor must act on sym^2");
  if (!A.isApprox(A.adjoint(), 1e-12))
    throw std::invalid_argument("ModelSpec: A must be Hermitian");
  if (!Qtensor.isApprox(Qtensor.adjoint(), 1e-12))
    throw std::invalid_argument("ModelSpec: Qtensor must be Hermitian");
  if (!(epsilon > 0.0)) throw std::invalid_argument("ModelSpec: epsilon > 0 required");
}

PolySymbol ModelSpec::q_symbol() const { return symbol_from_tensor(dim(), 2, 2, Qtensor); }

PolySymbol ModelSpec::h_symbol() const {
  PolySymbol h(dim());
  for (int j = 0; j < dim(); ++j) {
    for (int k = 0; k < dim(); ++k) {
      if (A(j, k) == Complex(0.0)) continue;
      MultiIndex ej(dim(), 0), ek(dim(), 0);
      ej[j] = 1;
      ek[k] = 1;
      h.add_term(ej, ek, A(j, k));
    }
  }
  h += q_symbol();
  return h;
}

Complex ModelSpec::q_value(const Vec& z) const { return q_symbol().evaluate(z); }

Vec ModelSpec::q_gradient(const Vec& z) const {
  // d_zbar_j Q: lower one conjugated exponent and evaluate
  PolySymbol q = q_symbol();
  Vec g = Vec::Zero(dim());
  for (const auto& [key, c] : q.terms()) {
    for (int j = 0; j < dim(); ++j) {
      if (key.first[j] == 0) continue;
      Complex m = c * double(key.first[j]);
      for (int i = 0; i < dim(); ++i) {
        const int be = key.first[i] - (i == j ? 1 : 0);
        for (int r = 0; r < be; ++r) m *= std::conj(z[i]);
        for (int r = 0; r < key.second[i]; ++r) m *= z[i];
      }
      g[j] += m;
    }
  }
  return g;
}

double ModelSpec::energy(const Vec& z) const {
  return (z.dot(A * z) + q_value(z)).real();
}

ModelSpec make_model(const Mat& A, const Mat& Qtensor, double epsilon, int n_max) {
  ModelSpec m;
  m.A = A;
  m.Qtensor = Qtensor;
  m.epsilon = epsilon;
  m.n_max = n_max;
  m.v_norm = 2.0 * operator_norm(Qtensor);
  m.validate();
  return m;
}

BlockOperator hamiltonian(const SpacePtr& space, const ModelSpec& model) {
  if (space->dim() != model.dim())
    throw std::invalid_argument("hamiltonian: dimension mismatch");
  BlockOperator h = wick_quantize_block(space, model.h_symbol());
  for (int n = 0; n <= space->n_max(); ++n) {
    if (h.block(n).size() == 0) continue;
    if ((h.block(n) - h.block(n).adjoint()).norm() >
        1e-11 * std::max(1.0, h.block(n).norm()))
      throw std::runtime_error("hamiltonian: non-Hermitian block");
  }
  return h;
}

Propagator::Propagator(SpacePtr space, const ModelSpec& model)
    : space_(std::move(space)), model_(model) {
  eigs_.resize(space_->n_max() + 1);
}

const Propagator::BlockEig& Propagator::block_eig(int n) const {
  BlockEig& e = eigs_[n];
  if (!e.ready) {
    const BasisTable& basis = space_->basis();
    Mat blk = Mat::Zero(space_->block_dim(n), space_->block_dim(n));
    PolySymbol h = model_.h_symbol();
    for (std::int64_t col = 0; col < space_->block_dim(n); ++col) {
      FockVector ecol(space_);
      ecol.set_coeff(basis.at(basis.block_offset(n) + col), 1.0);
      FockVector r = apply_wick(h, ecol);
      for (const auto& [a, c] : r.terms())
        blk(basis.index_of(a) - basis.block_offset(n), col) = c;
    }
    if ((blk - blk.adjoint()).norm() > 1e-11 * std::max(1.0, blk.norm()))
      throw std::runtime_error("Propagator: non-Hermitian block");
    Eigen::SelfAdjointEigenSolver<Mat> es((blk + blk.adjoint()) / 2.0);
    e.vectors = es.eigenvectors();
    e.values = es.eigenvalues();
    e.ready = true;
  }
  return e;
}

FockVector Propagator::apply(const FockVector& v, double t) const {
  const BasisTable& basis = space_->basis();
  std::vector<Vec> slices(space_->n_max() + 1);
  for (const auto& [alpha, c] : v.terms()) {
    const int n = degree(alpha);
    if (slices[n].size() == 0) slices[n] = Vec::Zero(space_->block_dim(n));
    slices[n][basis.index_of(alpha) - basis.block_offset(n)] = c;
  }
  FockVector out(space_);
  for (int n = 0; n <= space_->n_max(); ++n) {
    if (slices[n].size() == 0) continue;
    const BlockEig& e = block_eig(n);
    Vec coeffs = e.vectors.adjoint() * slices[n];
    for (std::int64_t i = 0; i < coeffs.size(); ++i) {
      coeffs[i] *= std::exp(Complex(0.0, -t * e.values[i] / model_.epsilon));
    }
    Vec res = e.vectors * coeffs;
    for (std::int64_t i = 0; i < res.size(); ++i) {
      if (res[i] != Complex(0.0))
        out.add_coeff(basis.at(basis.block_offset(n) + i), res[i]);
    }
  }
  return out;
}

namespace {

Vec hartree_rhs(const ModelSpec& model, const Vec& z) {
  return Complex(0.0, -1.0) * (model.A * z + model.q_gradient(z));
}

std::vector<Vec> rk4_path(const ModelSpec& model, const Vec& z0, double T,
                          double dt, int steps) {
  std::vector<Vec> path;
  path.reserve(steps + 1);
  path.push_back(z0);
  Vec z = z0;
  for (int s = 0; s < steps; ++s) {
    const double h = dt;
    Vec k1 = hartree_rhs(model, z);
    Vec k2 = hartree_rhs(model, Vec(z + 0.5 * h * k1));
    Vec k3 = hartree_rhs(model, Vec(z + 0.5 * h * k2));
    Vec k4 = hartree_rhs(model, Vec(z + h * k3));
    z = z + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    path.push_back(z);
  }
  (void)T;
  return path;
}

}  // namespace

HartreeTrajectory hartree_flow(const ModelSpec& model, const Vec& z0, double T,
                               double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("hartree_flow: dt must be positive");
  const int steps = std::max(1, static_cast<int>(std::ceil(T / dt - 1e-12)));
  const double h = T / steps;
  std::vector<Vec> coarse = rk4_path(model, z0, T, h, steps);
  std::vector<Vec> fine = rk4_path(model, z0, T, h / 2.0, 2 * steps);
  if ((coarse.back() - fine.back()).norm() > 1e-7)
    throw std::runtime_error("hartree_flow: step too large");

  HartreeTrajectory traj;
  traj.times.resize(steps + 1);
  traj.z.resize(steps + 1);
  traj.omega.assign(steps + 1, 0.0);
  const double e0 = model.energy(z0);
  const double r0 = z0.norm();
  for (int s = 0; s <= steps; ++s) {
    traj.times[s] = s * h;
    traj.z[s] = fine[2 * s];
    traj.norm_drift = std::max(traj.norm_drift, std::abs(traj.z[s].norm() - r0));
    traj.energy_drift =
        std::max(traj.energy_drift, std::abs(model.energy(traj.z[s]) - e0) /
                                        std::max(1.0, std::abs(e0)));
    if (s > 0) {
      // Simpson on [t_{s-1}, t_s] with the midpoint from the halved run
      const double qa = model.q_value(fine[2 * s - 2]).real();
      const double qm = model.q_value(fine[2 * s - 1]).real();
      const double qb = model.q_value(fine[2 * s]).real();
      traj.omega[s] = traj.omega[s - 1] + h / 6.0 * (qa + 4.0 * qm + qb);
    }
  }
  return traj;
}

PolySymbol hepp_quadratic_symbol(const ModelSpec& model, const Vec& z_t) {
  PolySymbol shifted = substitute_translate(model.q_symbol(), z_t);
  PolySymbol q2(model.dim());
  for (const auto& [k, c] : shifted.terms()) {
    if (degree(k.first) + degree(k.second) == 2) q2.add_term(k.first, k.second, c);
  }
  return q2;
}

HeppResult hepp_approximation(const SpacePtr& space, const ModelSpec& model,
                              const Vec& z0, double t, double dt) {
  if (space->dim() != model.dim())
    throw std::invalid_argument("hepp_approximation: dimension mismatch");
  // trajectory with midpoint samples for the frozen quadratic step
  const int steps = std::max(1, static_cast<int>(std::ceil(t / dt - 1e-12)));
  const double h = t / steps;
  HartreeTrajectory traj = hartree_flow(model, z0, t, h);
  std::vector<Vec> mids(steps);
  {
    std::vector<Vec> fine = rk4_path(model, z0, t, h / 2.0, 2 * steps);
    for (int s = 0; s < steps; ++s) mids[s] = fine[2 * s + 1];
  }

  // coherent guard along the trajectory (|z_t| is conserved, check once)
  const double tail = coherent_tail_mass(*space, z0);
  if (tail > 1e-9)
    throw GuardViolation("hepp_approximation: truncation too small for E(z0)");

  // free half-step exp(-i h/2 dGamma(A)/eps), blockwise spectral
  const BasisTable& basis = space->basis();
  std::vector<Mat> free_vectors(space->n_max() + 1);
  std::vector<Eigen::VectorXd> free_values(space->n_max() + 1);
  {
    BlockOperator dg = dgamma_operator(space, model.A);
    for (int n = 0; n <= space->n_max(); ++n) {
      Eigen::SelfAdjointEigenSolver<Mat> es(dg.block(n));
      free_vectors[n] = es.eigenvectors();
      free_values[n] = es.eigenvalues();
    }
  }
  const double eps = model.epsilon;
  auto free_half = [&](Vec& psi) {
    for (int n = 0; n <= space->n_max(); ++n) {
      const std::int64_t off = basis.block_offset(n);
      const std::int64_t len = space->block_dim(n);
      Vec seg = free_vectors[n].adjoint() * psi.segment(off, len);
      for (std::int64_t i = 0; i < len; ++i)
        seg[i] *= std::exp(Complex(0.0, -0.5 * h * free_values[n][i] / eps));
      psi.segment(off, len) = free_vectors[n] * seg;
    }
  };

  Vec psi = vacuum_state(space).to_dense();
  for (int s = 0; s < steps; ++s) {
    free_half(psi);
    PolySymbol q2 = hepp_quadratic_symbol(model, mids[s]);
    Mat q2m = wick_quantize_dense(space, q2).matrix();
    Eigen::SelfAdjointEigenSolver<Mat> es((q2m + q2m.adjoint()) / 2.0);
    Vec seg = es.eigenvectors().adjoint() * psi;
    for (std::int64_t i = 0; i < seg.size(); ++i)
      seg[i] *= std::exp(Complex(0.0, -h * es.eigenvalues()[i] / eps));
    psi = es.eigenvectors() * seg;
    free_half(psi);
  }

  HeppResult res(space);
  res.trajectory = std::move(traj);
  res.u2_vacuum = FockVector::from_dense(space, psi);
  res.u2_norm_drift = std::abs(res.u2_vacuum.norm() - 1.0);
  if (res.u2_norm_drift > 1e-6)
    throw std::runtime_error("hepp_approximation: norm drift in the quadratic flow");
  FockVector nv = apply_dgamma(Mat::Identity(model.dim(), model.dim()), res.u2_vacuum);
  res.number_moment1 = inner(res.u2_vacuum, nv).real();
  res.number_moment2 = nv.norm2();

  const Vec& zt = res.trajectory.z_final();
  Vec f = Vec(std::sqrt(2.0) / Complex(0.0, eps) * zt);
  FockVector displaced = weyl_apply(f, res.u2_vacuum);
  displaced *= std::exp(Complex(0.0, res.trajectory.omega_final() / eps));
  res.approx = std::move(displaced);
  return res;
}

PolySymbol free_evolved(const ModelSpec& model, const PolySymbol& b, double t) {
  Eigen::SelfAdjointEigenSolver<Mat> es(model.A);
  Vec phases(es.eigenvalues().size());
  for (std::int64_t i = 0; i < phases.size(); ++i)
    phases[i] = std::exp(Complex(0.0, -t * es.eigenvalues()[i]));
  Mat flow = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return substitute_linear(b, flow);
}

std::vector<PolySymbol> dyson_symbols(const ModelSpec& model, const PolySymbol& b,
                                      const std::vector<double>& times, double t) {
  std::vector<PolySymbol> cur{free_evolved(model, b, t)};
  for (double s : times) {
    PolySymbol qs = free_evolved(model, model.q_symbol(), s);
    std::vector<PolySymbol> next(cur.size() + 1, PolySymbol(model.dim()));
    for (size_t r = 0; r < next.size(); ++r) {
      if (r < cur.size()) next[r] += poisson_bracket_k(qs, cur[r], 1);
      if (r >= 1 && r - 1 < cur.size()) {
        PolySymbol second = poisson_bracket_k(qs, cur[r - 1], 2);
        second *= Complex(0.5);
        next[r] += second;
      }
    }
    cur = std::move(next);
  }
  return cur;
}

PolySymbol dyson_symbol(const ModelSpec& model, const PolySymbol& b,
                        const std::vector<double>& times, double t, int r) {
  if (r < 0 || r > static_cast<int>(times.size())) return PolySymbol(model.dim());
  return dyson_symbols(model, b, times, t)[r];
}

Complex dyson_matrix_element(const SpacePtr& space, const ModelSpec& model,
                             const PolySymbol& b, const Vec& z, int k, int m,
                             double t) {
  if (k - m < 0) throw std::invalid_argument("dyson_matrix_element: k - m < 0");
  Propagator u(space, model);
  FockVector ket = u.apply(hermite_state(space, z, k), t);
  FockVector bra = u.apply(hermite_state(space, z, k - m), t);
  return inner(bra, apply_wick(b, ket));
}

namespace {

// integral of C^{(n)}_r over the ordered simplex, nested Gauss-Legendre
void simplex_integrate(const ModelSpec& model, const PolySymbol& b, const Vec& z,
                       double t, int n, int quad_order,
                       std::vector<double>& stack, std::vector<Complex>& acc,
                       double weight, double upper) {
  if (static_cast<int>(stack.size()) == n) {
    // stack[0] = t_1 is the innermost bracket time and is applied first
    std::vector<PolySymbol> cs = dyson_symbols(model, b, stack, t);
    for (size_t r = 0; r < cs.size() && r < acc.size(); ++r) {
      acc[r] += weight * cs[r].evaluate(z);
    }
    return;
  }
  QuadratureRule gl = gauss_legendre(quad_order, 0.0, upper);
  for (size_t i = 0; i < gl.nodes.size(); ++i) {
    stack.push_back(gl.nodes[i]);
    simplex_integrate(model, b, z, t, n, quad_order, stack, acc,
                      weight * gl.weights[i], gl.nodes[i]);
    stack.pop_back();
  }
}

}  // namespace

DysonExpansion dyson_expansion(const ModelSpec& model, const PolySymbol& b,
                               const Vec& z, int k, int m, double t, int ell,
                               int n_cut, int quad_order, double delta) {
  auto hom = b.homogeneity();
  if (!hom) throw std::invalid_argument("dyson_expansion: homogeneous symbol required");
  const auto [p, q] = *hom;
  if (m != p - q)
    throw std::invalid_argument("dyson_expansion: m must equal p - q");
  DysonExpansion out;
  out.series_regime =
      4.0 * (1.0 + 2.0 * delta) * std::abs(t) * model.v_norm <= 1.0;

  const double eps = model.epsilon;
  out.beta.assign(ell, Complex(0.0));
  for (int n = 0; n <= n_cut; ++n) {
    std::vector<Complex> integrals(std::min(n, ell - 1) + 1, Complex(0.0));
    if (n == 0) {
      integrals[0] = free_evolved(model, b, t).evaluate(z);
    } else {
      std::vector<double> stack;
      std::vector<Complex> acc(n + 1, Complex(0.0));
      simplex_integrate(model, b, z, t, n, quad_order, stack, acc, 1.0, t);
      for (size_t r = 0; r < integrals.size(); ++r) integrals[r] = acc[r];
    }
    for (int r = 0; r < static_cast<int>(integrals.size()); ++r) {
      if (r >= ell || n < r) continue;
      // prefactor sqrt(k!(k-m)!) eps^{(p+q)/2 + (n-r)} / (k-(p+n-r))!
      const int drop = p + n - r;
      if (k - drop < 0) continue;
      const double logpref = 0.5 * (log_factorial(k) + log_factorial(k - m)) -
                             log_factorial(k - drop) +
                             (0.5 * (p + q) + (n - r)) * std::log(eps);
      out.beta[r] += std::exp(logpref) * std::pow(Complex(0.0, 1.0), n) * integrals[r];
    }
  }
  // geometric certificate for the dropped n > n_cut terms
  const double rho = 4.0 * (1.0 + delta) * std::abs(t) * model.v_norm;
  double tail = 0.0;
  const double bnorm = tensor_norm(b);
  for (int n = n_cut + 1; n < n_cut + 400; ++n) {
    const double term =
        std::pow(2.0, p) * std::pow(rho, n) * std::pow(n + p, 2.0 * ell) * bnorm;
    tail += term;
    if (term < 1e-18) break;
  }
  out.tail_bound = tail;
  return out;
}

std::vector<double> falling_factorial_alphas(int p, int n, int r, double kappa) {
  if (r > n) return {};
  const int L = p + n - r;
  if (L <= 0) return {};
  // prod_{i=0}^{L-1} (kappa - i eps): alpha_j = (-1)^j e_j(0..L-1) kappa^{L-j}
  std::vector<double> poly{1.0};
  for (int i = 0; i < L; ++i) {
    std::vector<double> next(poly.size() + 1, 0.0);
    for (size_t j = 0; j < poly.size(); ++j) {
      next[j] += poly[j];
      next[j + 1] += poly[j] * i;
    }
    poly = std::move(next);
  }
  std::vector<double> alphas(L, 0.0);
  for (int j = 0; j < L; ++j) {
    alphas[j] = ((j % 2 == 0) ? 1.0 : -1.0) * poly[j] * std::pow(kappa, L - j);
  }
  return alphas;
}

bool residuals_decreasing(const std::vector<double>& r, int allowed_inversions) {
  int inversions = 0;
  for (size_t i = 1; i < r.size(); ++i) {
    if (r[i] > r[i - 1]) ++inversions;
  }
  return inversions <= allowed_inversions;
}

ConvergenceReport coherent_wick_limit(const ModelSpec& base, const Vec& z0,
                                      const PolySymbol& b, double t,
                                      const std::vector<double>& eps_grid,
                                      double n_max_over_mean) {
  ConvergenceReport report;
  HartreeTrajectory traj = hartree_flow(base, z0, std::max(t, 1e-9), 1e-3);
  const Complex reference = b.evaluate(traj.z_final());
  for (double eps : eps_grid) {
    ModelSpec model = base;
    model.epsilon = eps;
    const double mean = z0.squaredNorm() / eps;
    model.n_max = static_cast<int>(std::ceil(n_max_over_mean * std::max(mean, 4.0)));
    auto space = make_space(model.dim(), model.n_max, eps);
    FockVector e = coherent_state(space, z0, 1e-9);
    Propagator u(space, model);
    FockVector evolved = u.apply(e, t);
    Complex measured = inner(evolved, apply_wick(b, evolved));
    report.rows.push_back({eps, measured, reference, std::abs(measured - reference)});
  }
  std::vector<double> errs;
  for (const auto& row : report.rows) errs.push_back(row.abs_err);
  report.decreasing = residuals_decreasing(errs);
  return report;
}

}  // namespace focklab
