#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include "quantize.hpp"
#include "test_util.hpp"

using namespace focklab;
using testutil::Rng;
using boost::multiprecision::cpp_int;

namespace {

cpp_int factorial_int(int n) {
  cpp_int r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// h_n at integer x from the explicit finite sum, in exact integer arithmetic
cpp_int hermite_exact(int n, int x) {
  cpp_int sum = 0;
  for (int r = 0; 2 * r <= n; ++r) {
    cpp_int c = factorial_int(n) / (factorial_int(r) * factorial_int(n - 2 * r));
    cpp_int pw = 1;
    for (int i = 0; i < n - 2 * r; ++i) pw *= 2 * x;
    sum += ((r % 2 == 0) ? c : -c) * pw;
  }
  return sum;
}

// k! (j+k)!-scaled Laguerre value at integer t so everything stays integral:
// L_k^{(j)}(t) * k! (j+k)!... instead compare against the rational sum via
// a common denominator k! (j+k)!.
std::pair<cpp_int, cpp_int> laguerre_exact(int k, int j, int t) {
  // returns (numerator, denominator) with denominator = prod m!(k-m)!(j+m)! lcm
  // simpler: sum over m of (-1)^m C(k+j, k-m) t^m / m!  -- scale by k!
  // L_k^{(j)}(t) = sum_m (-1)^m (k+j)!/((k-m)!(j+m)!m!) t^m
  // common denominator k! (j+k)!: numerator_m = (-1)^m (k+j)! * [k!(j+k)!/((k-m)!(j+m)!m!)]
  cpp_int den = factorial_int(k) * factorial_int(j + k);
  cpp_int num = 0;
  for (int m = 0; m <= k; ++m) {
    cpp_int c = factorial_int(k + j) * den /
                (factorial_int(k - m) * factorial_int(j + m) * factorial_int(m));
    cpp_int pw = 1;
    for (int i = 0; i < m; ++i) pw *= t;
    num += ((m % 2 == 0) ? c : -c) * pw;
  }
  return {num, den};
}

}  // namespace

TEST_CASE("hermite and laguerre match their exact finite sums up to order 30") {
  for (int n = 0; n <= 30; ++n) {
    for (int x : {-3, -1, 0, 2}) {
      cpp_int exact = hermite_exact(n, x);
      const double expect = static_cast<double>(exact);
      const Complex got = hermite_h(n, Complex(double(x), 0.0));
      CHECK(std::abs(got - expect) <= 1e-11 * std::max(1.0, std::abs(expect)));
    }
  }
  for (int k = 0; k <= 30; k += 3) {
    for (int j : {0, 1, 4}) {
      for (int t : {0, 1, 3}) {
        auto [num, den] = laguerre_exact(k, j, t);
        const double expect = static_cast<double>(num) / static_cast<double>(den);
        const Complex got = laguerre_l(k, j, Complex(double(t), 0.0));
        CHECK(std::abs(got - expect) <= 1e-10 * std::max(1.0, std::abs(expect)));
      }
    }
  }
}

TEST_CASE("hermite generating function") {
  // sum t^n h_n(x)/n! = e^{2tx - t^2}, 40 terms, residual <= 1e-10
  for (double t : {-0.5, -0.1, 0.3, 0.6}) {
    for (double x : {-2.0, -0.7, 0.0, 1.3, 2.0}) {
      Complex sum = 0.0;
      double tp = 1.0;
      for (int n = 0; n < 40; ++n) {
        sum += tp / factorial(n) * hermite_h(n, x);
        tp *= t;
      }
      const double expect = std::exp(2.0 * t * x - t * t);
      CHECK(std::abs(sum - expect) < 1e-10);
    }
  }
}

TEST_CASE("gauss rules integrate polynomials") {
  QuadratureRule gl = gauss_legendre(8, 0.0, 2.0);
  double s = 0.0;
  for (size_t i = 0; i < gl.nodes.size(); ++i)
    s += gl.weights[i] * std::pow(gl.nodes[i], 7);
  CHECK(std::abs(s - 32.0) < 1e-12);  // int_0^2 x^7 = 2^8/8

  QuadratureRule gh = gauss_hermite(12);
  double m2 = 0.0, m0 = 0.0;
  for (size_t i = 0; i < gh.nodes.size(); ++i) {
    m0 += gh.weights[i];
    m2 += gh.weights[i] * gh.nodes[i] * gh.nodes[i];
  }
  CHECK(std::abs(m0 - std::sqrt(M_PI)) < 1e-12);
  CHECK(std::abs(m2 - 0.5 * std::sqrt(M_PI)) < 1e-12);
}

TEST_CASE("fourier-wigner basics") {
  auto s = make_space(1, 40, 0.5);
  FockVector omega = vacuum_state(s);
  Vec xi(1);
  xi[0] = Complex(0.4, 0.2);
  // V[Omega, Omega](xi) = e^{-eps pi^2 |xi|^2 / 2}
  Complex v = fourier_wigner(omega, omega, xi);
  CHECK(std::abs(v - std::exp(-0.5 * s->epsilon() * M_PI * M_PI * xi.squaredNorm())) <
        1e-10);

  // V[phi, psi](0) = <psi, phi>
  Rng rng(7);
  FockVector phi = rng.random_state(s, 6);
  FockVector psi = rng.random_state(s, 6);
  CHECK(std::abs(fourier_wigner(phi, psi, Vec::Zero(1)) - inner(psi, phi)) < 1e-13);
}

TEST_CASE("displaced vacuum is the coherent state") {
  auto s = make_space(1, 40, 0.4);
  Vec z(1);
  z[0] = Complex(0.5, -0.35);
  Vec f = Vec(std::sqrt(2.0) / Complex(0.0, s->epsilon()) * z);
  FockVector displaced = weyl_apply(f, vacuum_state(s));
  FockVector e = coherent_state(s, z);
  e *= Complex(-1.0);
  displaced += e;
  CHECK(displaced.norm() < 1e-9);
}

TEST_CASE("laguerre connection against the Weyl matrix") {
  for (int d : {1, 2}) {
    for (double eps : {0.25, 1.0}) {
      auto s = make_space(d, d == 1 ? 40 : 24, eps);
      Rng rng(131 + d);
      Vec z = rng.unit_vector(d);
      Vec xi = rng.complex_vector(d, 0.6);
      const Vec probe = xi / (M_PI * std::sqrt(eps));
      for (int k = 0; k <= 6; ++k) {
        for (int j = 0; j <= 6; ++j) {
          FockVector hk = hermite_state(s, z, k);
          FockVector hj = hermite_state(s, z, j);
          Complex lhs = fourier_wigner(hk, hj, probe);
          Complex rhs = laguerre_vw(k, j, z, xi, eps);
          CHECK(std::abs(lhs - rhs) < 1e-8);
        }
      }
    }
  }
  // k = j = 0 is the pure Gaussian
  Vec z1(1), xi1(1);
  z1[0] = 1.0;
  xi1[0] = Complex(0.3, 0.8);
  CHECK(std::abs(laguerre_vw(0, 0, z1, xi1, 0.5) -
                 std::exp(-0.5 * xi1.squaredNorm())) < 1e-14);
  // k = j: real value
  CHECK(std::abs(std::imag(laguerre_vw(3, 3, z1, xi1, 0.5))) < 1e-14);
  Vec bad(1);
  bad[0] = 2.0;
  CHECK_THROWS(laguerre_vw(1, 1, bad, xi1, 0.5));
}

TEST_CASE("weyl quantization of trigonometric symbols") {
  auto s = make_space(1, 30, 0.5);
  Rng rng(61);
  Vec xi(1);
  xi[0] = Complex(0.3, -0.4);

  TrigSymbol single{{{Complex(1.0), xi}}};
  Mat w1 = weyl_quantize_trig(s, single).matrix();
  Mat w2 = weyl_operator(s, Vec(std::sqrt(2.0) * M_PI * xi)).matrix();
  CHECK(operator_norm(w1 - w2) < 1e-12);

  // conjugate-pair symbol is real-valued, operator Hermitian
  TrigSymbol pair{{{Complex(0.7, 0.2), xi}, {Complex(0.7, -0.2), Vec(-xi)}}};
  Mat h = weyl_quantize_trig(s, pair).matrix();
  CHECK(operator_norm(Mat(h - h.adjoint())) < 1e-10);

  // norm bounded by the coefficient l1 norm
  TrigSymbol few{{{rng.complex_unit_box(), rng.complex_vector(1)},
                  {rng.complex_unit_box(), rng.complex_vector(1)},
                  {rng.complex_unit_box(), rng.complex_vector(1)}}};
  CHECK(operator_norm(weyl_quantize_trig(s, few).matrix()) <=
        few.coeff_l1() + 1e-10);
}

TEST_CASE("weyl covariance under displacement") {
  auto s = make_space(1, 45, 0.5);
  Rng rng(67);
  TrigSymbol b{{{rng.complex_unit_box(), rng.complex_vector(1, 0.5)},
                {rng.complex_unit_box(), rng.complex_vector(1, 0.5)}}};
  Vec w(1);
  w[0] = Complex(0.3, 0.15);
  Vec g = Vec(std::sqrt(2.0) / Complex(0.0, s->epsilon()) * w);
  Mat wg = weyl_operator(s, g).matrix();
  Mat lhs = wg.adjoint() * weyl_quantize_trig(s, b).matrix() * wg;
  // translated symbol: atoms pick up e^{2 pi i S(w, xi_m)}
  TrigSymbol bt = b;
  for (auto& atom : bt.atoms) {
    const double sform = 0.5 * (w.dot(atom.xi) + atom.xi.dot(w)).real();
    atom.coeff *= std::exp(Complex(0.0, 2.0 * M_PI * sform));
  }
  Mat rhs = weyl_quantize_trig(s, bt).matrix();
  const BasisTable& basis = s->basis();
  const std::int64_t cut = basis.block_offset(12);
  CHECK(operator_norm(Mat(lhs - rhs).topLeftCorner(cut, cut)) < 1e-8);
}

TEST_CASE("anti-wick: gap to weyl, positivity, sup-norm bound") {
  Rng rng(71);
  Vec xi(1);
  xi[0] = Complex(0.5, 0.3);
  TrigSymbol b{{{Complex(0.8, -0.1), xi}, {Complex(0.4, 0.2), Vec(-0.7 * xi)}}};

  double prev_gap = 1e9;
  for (double eps : {1.0, 0.5, 0.25}) {
    auto s = make_space(1, 30, eps);
    Mat aw = anti_wick_quantize_trig(s, b).matrix();
    Mat wl = weyl_quantize_trig(s, b).matrix();
    double gap = operator_norm(aw - wl);
    double bound = 0.0;
    for (const auto& atom : b.atoms) {
      bound += std::abs(atom.coeff) *
               (1.0 - std::exp(-0.5 * eps * M_PI * M_PI * atom.xi.squaredNorm()));
    }
    CHECK(gap <= bound + 1e-10);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }

  // b = |1 + e^{2 pi i S(z, xi)}|^2 >= 0 quantizes to a nonneg operator
  auto s = make_space(1, 30, 0.5);
  TrigSymbol pos{{{Complex(2.0), Vec::Zero(1)}, {Complex(1.0), xi}, {Complex(1.0), Vec(-xi)}}};
  Mat p = anti_wick_quantize_trig(s, pos).matrix();
  Eigen::SelfAdjointEigenSolver<Mat> es(p);
  CHECK(es.eigenvalues().minCoeff() >= -1e-10);

  // quadrature path agrees with the atomic path on guarded blocks (at the
  // truncation edge the two differ: compression of the true operator vs
  // exponential of the truncated generator) and obeys the sup bound
  auto s2 = make_space(1, 26, 0.5);
  DenseOperator quad = anti_wick_quadrature(
      s2, [&](const Vec& z) { return pos.evaluate(z); }, 56);
  Mat atomic = anti_wick_quantize_trig(s2, pos).matrix();
  const std::int64_t cut2 = s2->basis().block_offset(9);
  CHECK(operator_norm(Mat(quad.matrix() - atomic).topLeftCorner(cut2, cut2)) < 1e-7);
  // sup|b| = 4 at S = 0; compression to the truncated space cannot increase it
  CHECK(operator_norm(quad.matrix()) <= 4.0 + 1e-7);

  auto s3 = make_space(3, 3, 0.5);
  CHECK_THROWS(anti_wick_quadrature(s3, [](const Vec&) { return Complex(1.0); }, 4));
}

TEST_CASE("hermite expansion of the Weyl operator") {
  auto s = make_space(1, 40, 0.5);
  Vec xi(1);
  xi[0] = 1.0;

  Mat id = weyl_hermite_series(s, Vec::Zero(1), 1).matrix();
  CHECK(operator_norm(id - Mat::Identity(s->total_dim(), s->total_dim())) < 1e-14);

  Mat exact = weyl_operator(s, xi).matrix();
  const BasisTable& basis = s->basis();
  const std::int64_t cut = basis.block_offset(11);  // blocks <= 10
  double res25 = operator_norm(
      Mat(weyl_hermite_series(s, xi, 25).matrix() - exact).topLeftCorner(cut, cut));
  double res45 = operator_norm(
      Mat(weyl_hermite_series(s, xi, 45).matrix() - exact).topLeftCorner(cut, cut));
  CHECK(res45 < res25);
  CHECK(res45 < 1e-8);

  // term-norm bound: ||1_j(N) h_n(i sqrt2 S(xi,z))^Wick 1_k(N)||
  //   <= (1 + 2 sqrt(2(k+j) eps) |xi|)^n n!/[n/2]!
  PolySymbol sform = symbol_s_form(1, xi);
  sform *= Complex(0.0, std::sqrt(2.0));
  for (int n : {1, 2, 4, 5}) {
    Mat h = wick_quantize_dense(s, hermite_symbol(n, sform)).matrix();
    for (int k : {0, 3, 8}) {
      for (int dj = -n; dj <= n; ++dj) {
        const int j = k + dj;
        if (j < 0 || j > s->n_max()) continue;
        Mat blk = h.block(basis.block_offset(j), basis.block_offset(k),
                          s->block_dim(j), s->block_dim(k));
        const double bound =
            std::pow(1.0 + 2.0 * std::sqrt(2.0 * (k + j) * s->epsilon()) * xi.norm(),
                     n) *
            factorial(n) / factorial(n / 2);
        CHECK(operator_norm(blk) <= bound * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("weyl-wick gap") {
  // linear symbols: gap exactly zero
  auto s1 = make_space(1, 20, 0.5);
  Vec xi(1);
  xi[0] = Complex(0.3, 0.7);
  CHECK(weyl_wick_gap(s1, symbol_inner_xi_z(1, xi), 10) < 1e-14);

  // |z|^2 in d=1: gap operator is (eps/2) I on guarded blocks
  CHECK(std::abs(weyl_wick_gap(s1, symbol_norm_squared(1), 10) -
                 0.5 * s1->epsilon()) < 1e-12);

  // gap/eps bounded for a random P_{2,2} symbol in d=2, with the block guard
  // held fixed in number units (n_guard = N_guard/eps); a fixed block count
  // would shrink the surviving phase-space window with eps and send gap/eps
  // to zero instead of keeping it of order one
  Rng rng(83);
  PolySymbol b = rng.homogeneous_symbol(2, 2, 2);
  std::vector<double> ratios;
  for (double eps : {0.5, 0.25, 0.125}) {
    const int n_guard = static_cast<int>(std::lround(2.0 / eps));
    auto s = make_space(2, n_guard + 6, eps);
    ratios.push_back(weyl_wick_gap(s, b, n_guard) / eps);
  }
  const double lo = *std::min_element(ratios.begin(), ratios.end());
  const double hi = *std::max_element(ratios.begin(), ratios.end());
  CHECK(hi / lo <= 2.0);
}

TEST_CASE("weyl continuity in the displacement argument") {
  // ||(W(z1) - W(z2)) (N+1)^{-1/2}|| must vanish as z2 -> z1 with empirical
  // slope >= 0.9 at delta = 1
  auto s = make_space(1, 35, 0.5);
  Vec z1(1);
  z1[0] = Complex(0.8, 0.3);
  Mat w1 = weyl_operator(s, z1).matrix();
  Mat damp = Mat::Zero(s->total_dim(), s->total_dim());
  for (std::int64_t i = 0; i < s->total_dim(); ++i) {
    const int n = degree(s->basis().at(i));
    damp(i, i) = 1.0 / std::sqrt(1.0 + s->epsilon() * n);
  }
  std::vector<double> hs{0.2, 0.1, 0.05, 0.025};
  std::vector<double> errs;
  for (double h : hs) {
    Vec z2 = z1;
    z2[0] += Complex(h, -0.5 * h);
    Mat w2 = weyl_operator(s, z2).matrix();
    errs.push_back(operator_norm(Mat((w1 - w2) * damp)));
  }
  // least squares slope of log err vs log h
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < hs.size(); ++i) {
    const double x = std::log(hs[i]), y = std::log(errs[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = double(hs.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope >= 0.9);
}
