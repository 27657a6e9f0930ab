// Copyright 2026 The Focklab Authors
// SPDX-License-Identifier: Apache-2.0

#include "poly_symbol.hpp"

#include <cmath>

namespace focklab {

Complex PolySymbol::coeff(const MultiIndex& beta, const MultiIndex& gamma) const {
  auto it = terms_.find({beta, gamma});
  return it == terms_.end() ? Complex(0.0) : it->second;
}

void PolySymbol::add_term(const MultiIndex& beta, const MultiIndex& gamma, Complex c) {
  if (static_cast<int>(beta.size()) != dim_ || static_cast<int>(gamma.size()) != dim_)
    throw std::invalid_argument("PolySymbol: exponent dimension mismatch");
  auto key = IndexPair{beta, gamma};
  auto [it, inserted] = terms_.emplace(key, c);
  if (!inserted) it->second += c;
  if (it->second == Complex(0.0)) terms_.erase(it);
}

PolySymbol& PolySymbol::operator+=(const PolySymbol& other) {
  for (const auto& [k, c] : other.terms_) add_term(k.first, k.second, c);
  return *this;
}

PolySymbol& PolySymbol::operator*=(Complex s) {
  if (s == Complex(0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, c] : terms_) c *= s;
  return *this;
}

PolySymbol PolySymbol::conj() const {
  PolySymbol out(dim_);
  for (const auto& [k, c] : terms_) out.add_term(k.second, k.first, std::conj(c));
  return out;
}

std::pair<int, int> PolySymbol::max_degrees() const {
  int p = 0, q = 0;
  for (const auto& [k, c] : terms_) {
    q = std::max(q, degree(k.first));
    p = std::max(p, degree(k.second));
  }
  return {p, q};
}

std::optional<std::pair<int, int>> PolySymbol::homogeneity() const {
  std::optional<std::pair<int, int>> hom;
  for (const auto& [k, c] : terms_) {
    std::pair<int, int> pq{degree(k.second), degree(k.first)};
    if (!hom) {
      hom = pq;
    } else if (*hom != pq) {
      return std::nullopt;
    }
  }
  if (!hom) hom = std::pair<int, int>{0, 0};
  return hom;
}

Complex PolySymbol::evaluate(const Vec& z) const {
  if (z.size() != dim_) throw std::invalid_argument("PolySymbol::evaluate: dim mismatch");
  Complex s = 0.0;
  for (const auto& [k, c] : terms_) {
    Complex m = c;
    for (int j = 0; j < dim_; ++j) {
      for (int r = 0; r < k.first[j]; ++r) m *= std::conj(z[j]);
      for (int r = 0; r < k.second[j]; ++r) m *= z[j];
    }
    s += m;
  }
  return s;
}

PolySymbol operator*(const PolySymbol& a, const PolySymbol& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("symbol product: dim mismatch");
  PolySymbol out(a.dim());
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      MultiIndex beta = ka.first, gamma = ka.second;
      for (int j = 0; j < a.dim(); ++j) {
        beta[j] += kb.first[j];
        gamma[j] += kb.second[j];
      }
      out.add_term(beta, gamma, ca * cb);
    }
  }
  return out;
}

PolySymbol operator+(PolySymbol a, const PolySymbol& b) {
  a += b;
  return a;
}

PolySymbol operator*(Complex s, PolySymbol b) {
  b *= s;
  return b;
}

PolySymbol GradedSymbol::grade(int r) const {
  auto it = grades_.find(r);
  return it == grades_.end() ? PolySymbol(dim_) : it->second;
}

void GradedSymbol::add_grade(int r, const PolySymbol& s) {
  if (s.empty()) return;
  auto it = grades_.find(r);
  if (it == grades_.end()) {
    grades_.emplace(r, s);
  } else {
    it->second += s;
    if (it->second.empty()) grades_.erase(it);
  }
}

PolySymbol GradedSymbol::collapse(double epsilon) const {
  PolySymbol out(dim_);
  for (const auto& [r, s] : grades_) {
    PolySymbol t = s;
    t *= Complex(std::pow(epsilon, r));
    out += t;
  }
  return out;
}

PolySymbol symbol_zero(int d) { return PolySymbol(d); }

PolySymbol symbol_constant(int d, Complex c) {
  PolySymbol out(d);
  if (c != Complex(0.0)) out.add_term(MultiIndex(d, 0), MultiIndex(d, 0), c);
  return out;
}

PolySymbol symbol_norm_squared(int d) {
  PolySymbol out(d);
  for (int j = 0; j < d; ++j) {
    MultiIndex e(d, 0);
    e[j] = 1;
    out.add_term(e, e, 1.0);
  }
  return out;
}

PolySymbol symbol_inner_z_xi(int d, const Vec& xi) {
  PolySymbol out(d);
  for (int j = 0; j < d; ++j) {
    if (xi[j] == Complex(0.0)) continue;
    MultiIndex e(d, 0);
    e[j] = 1;
    out.add_term(e, MultiIndex(d, 0), xi[j]);
  }
  return out;
}

PolySymbol symbol_inner_xi_z(int d, const Vec& xi) {
  PolySymbol out(d);
  for (int j = 0; j < d; ++j) {
    if (xi[j] == Complex(0.0)) continue;
    MultiIndex e(d, 0);
    e[j] = 1;
    out.add_term(MultiIndex(d, 0), e, std::conj(xi[j]));
  }
  return out;
}

PolySymbol symbol_s_form(int d, const Vec& xi) {
  PolySymbol out = symbol_inner_xi_z(d, xi);
  out += symbol_inner_z_xi(d, xi);
  out *= Complex(0.5);
  return out;
}

FockVector apply_wick(const PolySymbol& b, const FockVector& v) {
  const SpacePtr& space = v.space();
  if (b.dim() != space->dim())
    throw std::invalid_argument("apply_wick: symbol dimension mismatch");
  const double eps = space->epsilon();
  const int n_max = space->n_max();
  FockVector out(space);
  for (const auto& [key, c] : b.terms()) {
    const MultiIndex& beta = key.first;    // creations
    const MultiIndex& gamma = key.second;  // annihilations
    const int dn = degree(beta) - degree(gamma);
    const int total = degree(beta) + degree(gamma);
    for (const auto& [alpha, amp] : v.terms()) {
      if (degree(alpha) - degree(gamma) < 0) continue;
      if (degree(alpha) + dn > n_max) continue;
      double logfac = 0.0;
      bool dead = false;
      MultiIndex target = alpha;
      for (int j = 0; j < b.dim(); ++j) {
        if (target[j] < gamma[j]) {
          dead = true;
          break;
        }
        // a_j^{gamma_j}: sqrt(alpha_j!/(alpha_j-gamma_j)!), then
        // a_j*^{beta_j}: sqrt((alpha_j-gamma_j+beta_j)!/(alpha_j-gamma_j)!)
        const int low = target[j] - gamma[j];
        logfac += 0.5 * (log_factorial(target[j]) - log_factorial(low));
        logfac += 0.5 * (log_factorial(low + beta[j]) - log_factorial(low));
        target[j] = low + beta[j];
      }
      if (dead) continue;
      const double scale = std::exp(logfac + 0.5 * total * std::log(eps));
      out.add_coeff(target, c * amp * scale);
    }
  }
  out.prune(0.0);
  return out;
}

DenseOperator wick_quantize_dense(const SpacePtr& space, const PolySymbol& b) {
  auto [p, q] = b.max_degrees();
  if (p > space->n_max() || q > space->n_max())
    throw std::invalid_argument("wick_quantize: degree exceeds truncation window");
  return DenseOperator(
      space, dense_of(space, [&](const FockVector& v) { return apply_wick(b, v); }));
}

BlockOperator wick_quantize_block(const SpacePtr& space, const PolySymbol& b) {
  for (const auto& [k, c] : b.terms()) {
    if (degree(k.first) != degree(k.second))
      throw std::invalid_argument("wick_quantize_block: symbol is not number conserving");
  }
  auto [p, q] = b.max_degrees();
  if (p > space->n_max())
    throw std::invalid_argument("wick_quantize: degree exceeds truncation window");
  const BasisTable& basis = space->basis();
  BlockOperator op(space, 0);
  for (int n = 0; n <= space->n_max(); ++n) {
    Mat& blk = op.block(n);
    for (std::int64_t col = 0; col < space->block_dim(n); ++col) {
      FockVector e(space);
      e.set_coeff(basis.at(basis.block_offset(n) + col), 1.0);
      FockVector r = apply_wick(b, e);
      for (const auto& [a, c] : r.terms()) {
        blk(basis.index_of(a) - basis.block_offset(n), col) = c;
      }
    }
  }
  return op;
}

namespace {

// d_z^mu acting on the gamma exponents: z^gamma -> gamma!/(gamma-mu)! z^{gamma-mu}
PolySymbol holo_derivative(const PolySymbol& b, const MultiIndex& mu) {
  PolySymbol out(b.dim());
  for (const auto& [k, c] : b.terms()) {
    MultiIndex gamma = k.second;
    double logfac = 0.0;
    bool dead = false;
    for (int j = 0; j < b.dim(); ++j) {
      if (gamma[j] < mu[j]) {
        dead = true;
        break;
      }
      logfac += log_factorial(gamma[j]) - log_factorial(gamma[j] - mu[j]);
      gamma[j] -= mu[j];
    }
    if (dead) continue;
    out.add_term(k.first, gamma, c * std::exp(logfac));
  }
  return out;
}

PolySymbol anti_derivative(const PolySymbol& b, const MultiIndex& mu) {
  PolySymbol out(b.dim());
  for (const auto& [k, c] : b.terms()) {
    MultiIndex beta = k.first;
    double logfac = 0.0;
    bool dead = false;
    for (int j = 0; j < b.dim(); ++j) {
      if (beta[j] < mu[j]) {
        dead = true;
        break;
      }
      logfac += log_factorial(beta[j]) - log_factorial(beta[j] - mu[j]);
      beta[j] -= mu[j];
    }
    if (dead) continue;
    out.add_term(beta, k.second, c * std::exp(logfac));
  }
  return out;
}

}  // namespace

PolySymbol derivative_pairing(const PolySymbol& b1, const PolySymbol& b2, int k) {
  if (b1.dim() != b2.dim())
    throw std::invalid_argument("derivative_pairing: dim mismatch");
  if (k < 0) throw std::invalid_argument("derivative_pairing: negative order");
  PolySymbol out(b1.dim());
  // <d_z^k b1, d_zbar^k b2> = sum_{|mu|=k} (k!/mu!) (d_z^mu b1)(d_zbar^mu b2)
  for (const auto& mu : compositions(k, b1.dim())) {
    PolySymbol d1 = holo_derivative(b1, mu);
    if (d1.empty()) continue;
    PolySymbol d2 = anti_derivative(b2, mu);
    if (d2.empty()) continue;
    double logw = log_factorial(k);
    for (int j = 0; j < b1.dim(); ++j) logw -= log_factorial(mu[j]);
    PolySymbol prod = d1 * d2;
    prod *= Complex(std::exp(logw));
    out += prod;
  }
  return out;
}

PolySymbol poisson_bracket_k(const PolySymbol& b1, const PolySymbol& b2, int k) {
  PolySymbol out = derivative_pairing(b1, b2, k);
  PolySymbol rev = derivative_pairing(b2, b1, k);
  rev *= Complex(-1.0);
  out += rev;
  return out;
}

GradedSymbol wick_product(const PolySymbol& b1, const PolySymbol& b2) {
  GradedSymbol out(b1.dim());
  const int kmax = std::min(b1.max_degrees().first, b2.max_degrees().second);
  for (int k = 0; k <= kmax; ++k) {
    PolySymbol g = derivative_pairing(b1, b2, k);
    g *= Complex(1.0 / factorial(k));
    out.add_grade(k, g);
  }
  return out;
}

GradedSymbol wick_product(const GradedSymbol& b1, const GradedSymbol& b2) {
  GradedSymbol out(b1.dim());
  for (const auto& [r1, s1] : b1.grades()) {
    for (const auto& [r2, s2] : b2.grades()) {
      GradedSymbol partial = wick_product(s1, s2);
      for (const auto& [k, g] : partial.grades()) out.add_grade(r1 + r2 + k, g);
    }
  }
  return out;
}

GradedSymbol wick_commutator(const PolySymbol& b1, const PolySymbol& b2) {
  GradedSymbol out(b1.dim());
  const int kmax = std::max(std::min(b1.max_degrees().first, b2.max_degrees().second),
                            std::min(b2.max_degrees().first, b1.max_degrees().second));
  for (int k = 1; k <= kmax; ++k) {
    PolySymbol g = poisson_bracket_k(b1, b2, k);
    g *= Complex(1.0 / factorial(k));
    out.add_grade(k, g);
  }
  return out;
}

namespace {

// expand prod_j L_j(vars)^{e_j} where each L_j is a linear combination of
// monomial symbols; generic engine for the substitutions
PolySymbol power_product(const std::vector<PolySymbol>& linear, const MultiIndex& expo,
                         int d) {
  PolySymbol acc = symbol_constant(d, 1.0);
  for (size_t j = 0; j < linear.size(); ++j) {
    for (int r = 0; r < expo[j]; ++r) acc = acc * linear[j];
  }
  return acc;
}

}  // namespace

PolySymbol substitute_translate(const PolySymbol& b, const Vec& z0) {
  const int d = b.dim();
  if (z0.size() != d) throw std::invalid_argument("substitute_translate: dim mismatch");
  std::vector<PolySymbol> zs, zbars;
  for (int j = 0; j < d; ++j) {
    MultiIndex e(d, 0);
    e[j] = 1;
    PolySymbol zj(d);
    zj.add_term(MultiIndex(d, 0), e, 1.0);
    zj += symbol_constant(d, z0[j]);
    zs.push_back(zj);
    PolySymbol zbj(d);
    zbj.add_term(e, MultiIndex(d, 0), 1.0);
    zbj += symbol_constant(d, std::conj(z0[j]));
    zbars.push_back(zbj);
  }
  PolySymbol out(d);
  for (const auto& [k, c] : b.terms()) {
    PolySymbol term = power_product(zbars, k.first, d) * power_product(zs, k.second, d);
    term *= c;
    out += term;
  }
  return out;
}

PolySymbol substitute_linear(const PolySymbol& b, const Mat& B) {
  const int d = b.dim();
  if (B.rows() != d || B.cols() != d)
    throw std::invalid_argument("substitute_linear: dim mismatch");
  std::vector<PolySymbol> zs, zbars;
  for (int j = 0; j < d; ++j) {
    PolySymbol zj(d), zbj(d);
    for (int k = 0; k < d; ++k) {
      MultiIndex e(d, 0);
      e[k] = 1;
      if (B(j, k) != Complex(0.0)) {
        zj.add_term(MultiIndex(d, 0), e, B(j, k));
        zbj.add_term(e, MultiIndex(d, 0), std::conj(B(j, k)));
      }
    }
    zs.push_back(zj);
    zbars.push_back(zbj);
  }
  PolySymbol out(d);
  for (const auto& [k, c] : b.terms()) {
    PolySymbol term = power_product(zbars, k.first, d) * power_product(zs, k.second, d);
    term *= c;
    out += term;
  }
  return out;
}

PolySymbol substitute_real_linear(const PolySymbol& b, const Mat& B, const Mat& B2) {
  const int d = b.dim();
  if (B.rows() != d || B.cols() != d || B2.rows() != d || B2.cols() != d)
    throw std::invalid_argument("substitute_real_linear: dim mismatch");
  // z_j -> (B z)_j + (B2 conj z)_j ; conj z_j -> conj of that
  std::vector<PolySymbol> zs, zbars;
  for (int j = 0; j < d; ++j) {
    PolySymbol zj(d), zbj(d);
    for (int k = 0; k < d; ++k) {
      MultiIndex e(d, 0);
      e[k] = 1;
      if (B(j, k) != Complex(0.0)) {
        zj.add_term(MultiIndex(d, 0), e, B(j, k));
        zbj.add_term(e, MultiIndex(d, 0), std::conj(B(j, k)));
      }
      if (B2(j, k) != Complex(0.0)) {
        zj.add_term(e, MultiIndex(d, 0), B2(j, k));
        zbj.add_term(MultiIndex(d, 0), e, std::conj(B2(j, k)));
      }
    }
    zs.push_back(zj);
    zbars.push_back(zbj);
  }
  PolySymbol out(d);
  for (const auto& [k, c] : b.terms()) {
    PolySymbol term = power_product(zbars, k.first, d) * power_product(zs, k.second, d);
    term *= c;
    out += term;
  }
  return out;
}

Mat tensor_of(const PolySymbol& b) {
  auto hom = b.homogeneity();
  if (!hom) throw std::invalid_argument("tensor_of: symbol is not homogeneous");
  const auto [p, q] = *hom;
  const int d = b.dim();
  auto rows = compositions(q, d);
  auto cols = compositions(p, d);
  std::map<MultiIndex, std::int64_t, GradedLexLess> row_of, col_of;
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(rows.size()); ++i)
    row_of[rows[i]] = i;
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(cols.size()); ++i)
    col_of[cols[i]] = i;
  Mat m = Mat::Zero(rows.size(), cols.size());
  // c_{beta gamma} = sqrt(q!/beta!) sqrt(p!/gamma!) btilde_{beta gamma}
  for (const auto& [k, c] : b.terms()) {
    double logw = 0.5 * (log_factorial(q) + log_factorial(p));
    for (int j = 0; j < d; ++j)
      logw -= 0.5 * (log_factorial(k.first[j]) + log_factorial(k.second[j]));
    m(row_of.at(k.first), col_of.at(k.second)) = c / std::exp(logw);
  }
  return m;
}

PolySymbol symbol_from_tensor(int d, int p, int q, const Mat& m) {
  auto rows = compositions(q, d);
  auto cols = compositions(p, d);
  if (m.rows() != static_cast<std::int64_t>(rows.size()) ||
      m.cols() != static_cast<std::int64_t>(cols.size()))
    throw std::invalid_argument("symbol_from_tensor: size mismatch");
  PolySymbol out(d);
  for (std::int64_t r = 0; r < m.rows(); ++r) {
    for (std::int64_t c = 0; c < m.cols(); ++c) {
      if (m(r, c) == Complex(0.0)) continue;
      double logw = 0.5 * (log_factorial(q) + log_factorial(p));
      for (int j = 0; j < d; ++j)
        logw -= 0.5 * (log_factorial(rows[r][j]) + log_factorial(cols[c][j]));
      out.add_term(rows[r], cols[c], m(r, c) * std::exp(logw));
    }
  }
  return out;
}

double tensor_norm(const PolySymbol& b) {
  if (b.empty()) return 0.0;
  return operator_norm(tensor_of(b));
}

PolySymbol gaussian_convolve(const PolySymbol& b, double sigma) {
  // e^{sigma sum_j d_{z_j} d_{zbar_j}} b, truncated at the degree of b
  PolySymbol out = b;
  PolySymbol cur = b;
  const int kmax = std::min(b.max_degrees().first, b.max_degrees().second);
  for (int k = 1; k <= kmax; ++k) {
    PolySymbol next(b.dim());
    for (int j = 0; j < b.dim(); ++j) {
      MultiIndex e(b.dim(), 0);
      e[j] = 1;
      PolySymbol dz = holo_derivative(cur, e);
      next += anti_derivative(dz, e);
    }
    cur = next;
    if (cur.empty()) break;
    PolySymbol scaled = cur;
    scaled *= Complex(std::pow(sigma, k) / factorial(k));
    out += scaled;
  }
  return out;
}

std::vector<Complex> wick_symbol_of(
    const SpacePtr& space, const std::function<FockVector(const FockVector&)>& op,
    const std::vector<Vec>& probes, double tail_tol) {
  std::vector<Complex> out;
  out.reserve(probes.size());
  for (const Vec& z : probes) {
    FockVector e = coherent_state(space, z, tail_tol);
    out.push_back(inner(e, op(e)));
  }
  return out;
}

NumberEstimateReport number_estimate_check(const SpacePtr& space, const PolySymbol& b) {
  auto hom = b.homogeneity();
  if (!hom) throw std::invalid_argument("number_estimate_check: symbol not homogeneous");
  const auto [p, q] = *hom;
  const double eps = space->epsilon();
  const double bnorm = tensor_norm(b);
  const BasisTable& basis = space->basis();
  NumberEstimateReport report;
  for (int k = 0; k <= space->n_max(); ++k) {
    const int j = k - p + q;
    if (j < 0 || j > space->n_max()) continue;
    // materialize the block V_k -> V_j
    Mat blk = Mat::Zero(space->block_dim(j), space->block_dim(k));
    for (std::int64_t col = 0; col < space->block_dim(k); ++col) {
      FockVector e(space);
      e.set_coeff(basis.at(basis.block_offset(k) + col), 1.0);
      FockVector r = apply_wick(b, e);
      for (const auto& [a, c] : r.terms())
        blk(basis.index_of(a) - basis.block_offset(j), col) = c;
    }
    const double lhs = operator_norm(blk);
    if (k < p) {
      // delta^+ vanishes; block must be exactly zero
      if (lhs > 0.0 && report.max_ratio < 1.0) {
        report.max_ratio = std::max(report.max_ratio, lhs > 0 ? 2.0 : 0.0);
        report.worst_block = k;
      }
      continue;
    }
    const double rhs =
        std::pow(j * eps, 0.5 * q) * std::pow(k * eps, 0.5 * p) * bnorm;
    const double ratio = rhs == 0.0 ? (lhs == 0.0 ? 0.0 : 2.0) : lhs / rhs;
    if (ratio > report.max_ratio) {
      report.max_ratio = ratio;
      report.worst_block = k;
    }
  }
  return report;
}

}  // namespace focklab
