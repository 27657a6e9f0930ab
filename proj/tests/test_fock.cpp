#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "operators.hpp"
#include "test_util.hpp"

using namespace focklab;
using testutil::Rng;

TEST_CASE("space construction and block structure") {
  auto s1 = make_space(1, 5, 0.5);
  CHECK(s1->total_dim() == 6);

  auto s2 = make_space(2, 3, 1.0);
  CHECK(s2->total_dim() == 10);

  auto s3 = make_space(3, 2, 0.1);
  CHECK(s3->block_dim(0) == 1);
  CHECK(s3->block_dim(1) == 3);
  CHECK(s3->block_dim(2) == 6);

  CHECK_THROWS_AS(make_space(64, 64, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_space(2, 100, 1.0, 100), std::invalid_argument);
  CHECK_THROWS_AS(make_space(0, 2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_space(1, 2, 0.0), std::invalid_argument);
}

TEST_CASE("basis ordering is graded lexicographic") {
  auto s = make_space(2, 2, 1.0);
  const BasisTable& b = s->basis();
  CHECK(b.size() == 6);
  CHECK(b.at(0) == MultiIndex{0, 0});
  CHECK(b.at(1) == MultiIndex{0, 1});
  CHECK(b.at(2) == MultiIndex{1, 0});
  CHECK(b.at(3) == MultiIndex{0, 2});
  CHECK(b.at(4) == MultiIndex{1, 1});
  CHECK(b.at(5) == MultiIndex{2, 0});
  CHECK(b.index_of(MultiIndex{1, 1}) == 4);
  CHECK(b.index_of(MultiIndex{3, 0}) == -1);
}

TEST_CASE("annihilation kills the vacuum and raising matches the d=1 formula") {
  auto s = make_space(1, 6, 2.0);
  Vec f(1);
  f[0] = 1.0;
  FockVector omega = vacuum_state(s);
  CHECK(apply_annihilation(f, omega).norm() == 0.0);

  for (int n = 0; n < 6; ++n) {
    FockVector e(s);
    e.set_coeff(MultiIndex{n}, 1.0);
    FockVector r = apply_creation(f, e);
    CHECK(std::abs(r.coeff(MultiIndex{n + 1}) - std::sqrt(2.0 * (n + 1))) < 1e-14);
  }
  // creation out of the top block truncates to zero
  FockVector top(s);
  top.set_coeff(MultiIndex{6}, 1.0);
  CHECK(apply_creation(f, top).norm() == 0.0);
}

TEST_CASE("CCR on guarded blocks") {
  Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const int d = rng.uniform_int(1, 3);
    auto s = make_space(d, 6, rng.uniform(0.2, 2.0));
    Vec f = rng.complex_vector(d), g = rng.complex_vector(d);
    FockVector psi = rng.random_state(s, s->n_max() - 1);
    FockVector lhs = apply_annihilation(f, apply_creation(g, psi));
    FockVector rhs = apply_creation(g, apply_annihilation(f, psi));
    rhs *= Complex(-1.0);
    lhs += rhs;
    Complex pairing = f.dot(g);  // antilinear in f
    FockVector expected = psi;
    expected *= s->epsilon() * pairing;
    expected *= Complex(-1.0);
    lhs += expected;
    CHECK(lhs.norm() < 1e-12);
  }
}

TEST_CASE("adjoint symmetry of ladder operators") {
  Rng rng(5);
  auto s = make_space(2, 4, 0.7);
  Vec f = rng.complex_vector(2);
  BlockOperator a = annihilation_operator(s, f);
  BlockOperator adag = creation_operator(s, f);
  for (int n = 0; n <= 3; ++n) {
    CHECK((a.block(n + 1).adjoint() - adag.block(n)).norm() < 1e-14);
  }
  // adjoint(adjoint(T)) == T entrywise
  BlockOperator aa = a.adjoint().adjoint();
  for (int n = 1; n <= 4; ++n) CHECK((aa.block(n) - a.block(n)).norm() == 0.0);
}

TEST_CASE("Weyl operator: vacuum functional, relations, unitarity") {
  Rng rng(7);
  auto s = make_space(1, 40, 0.5);
  Vec f(1), g(1);
  f[0] = Complex(0.7, -0.3);
  g[0] = Complex(-0.2, 0.5);

  DenseOperator w = weyl_operator(s, f);
  // unitarity of the truncated-generator exponential
  Mat gram = w.matrix().adjoint() * w.matrix() -
             Mat::Identity(s->total_dim(), s->total_dim());
  CHECK(operator_norm(gram) < 1e-10);

  FockVector omega = vacuum_state(s);
  Complex val = inner(omega, w.apply(omega));
  Complex expect = std::exp(-s->epsilon() * f.squaredNorm() / 4.0);
  CHECK(std::abs(val - expect) < 1e-10);

  // W(f) W(g) = e^{-i eps sigma(f,g)/2} W(f+g) on states well below the cut
  DenseOperator wg = weyl_operator(s, g);
  DenseOperator wfg = weyl_operator(s, Vec(f + g));
  const double sigma = std::imag(f.dot(g));
  Complex phase = std::exp(Complex(0.0, -0.5 * s->epsilon() * sigma));
  FockVector psi = rng.random_state(s, 10);
  FockVector lhs = w.apply(wg.apply(psi));
  FockVector rhs = wfg.apply(psi);
  rhs *= phase;
  rhs *= Complex(-1.0);
  lhs += rhs;
  CHECK(lhs.norm() < 1e-8);

  // W(0) = identity
  DenseOperator w0 = weyl_operator(s, Vec::Zero(1));
  CHECK(operator_norm(w0.matrix() - Mat::Identity(s->total_dim(), s->total_dim())) <
        1e-12);
}

TEST_CASE("weyl_apply series path matches the dense path") {
  auto small = make_space(2, 12, 0.5);
  Rng rng(3);
  Vec f = rng.complex_vector(2);
  FockVector psi = rng.random_state(small, 4);
  FockVector dense = weyl_operator(small, f).apply(psi);

  // same space, but force the series by a large fictitious enumeration
  FockVector series = psi;
  {
    FockVector term = psi;
    for (int m = 1; m <= 200; ++m) {
      term = apply_field(f, term);
      term *= Complex(0.0, 1.0 / m);
      series += term;
      if (term.norm() < 1e-17) break;
    }
  }
  series *= Complex(-1.0);
  series += dense;
  CHECK(series.norm() < 1e-10);
}

TEST_CASE("hermite states") {
  auto s1 = make_space(1, 5, 1.0);
  Vec z1(1);
  z1[0] = 1.0;
  FockVector h = hermite_state(s1, z1, 3);
  CHECK(std::abs(h.coeff(MultiIndex{3}) - 1.0) < 1e-15);
  CHECK(h.terms().size() == 1);

  auto s2 = make_space(2, 4, 1.0);
  Vec z2(2);
  z2[0] = 1.0;
  z2[1] = 0.0;
  FockVector h2 = hermite_state(s2, z2, 2);
  CHECK(std::abs(h2.coeff(MultiIndex{2, 0}) - 1.0) < 1e-15);
  CHECK(h2.terms().size() == 1);

  // norm of z^{tensor k} = |z|^k via the multinomial identity
  Rng rng(17);
  for (int trial = 0; trial < 6; ++trial) {
    const int d = rng.uniform_int(1, 3);
    const int k = rng.uniform_int(0, 5);
    auto s = make_space(d, 6, 1.0);
    Vec z = rng.complex_vector(d);
    FockVector h3 = hermite_state(s, z, k);
    double brute = 0.0;  // sum_alpha k!/alpha! |z^alpha|^2
    for (const auto& a : compositions(k, d)) {
      double w = factorial(k);
      double mono = 1.0;
      for (int j = 0; j < d; ++j) {
        w /= factorial(a[j]);
        mono *= std::pow(std::norm(z[j]), a[j]);
      }
      brute += w * mono;
    }
    CHECK(std::abs(h3.norm2() - brute) < 1e-12 * std::max(1.0, brute));
    CHECK(std::abs(h3.norm() - std::pow(z.norm(), k)) < 1e-12 * std::max(1.0, brute));
  }

  CHECK_THROWS(hermite_state(s1, z1, 9));
}

TEST_CASE("coherent states: tail bookkeeping and number expectation") {
  auto s = make_space(1, 30, 0.5);
  Vec z(1);
  z[0] = Complex(0.8, 0.4);

  FockVector e0 = coherent_state(s, Vec::Zero(1));
  CHECK(e0.tail_mass() == 0.0);
  CHECK(std::abs(e0.coeff(MultiIndex{0}) - 1.0) < 1e-15);

  FockVector e = coherent_state(s, z);
  // <E,E> = 1 - tail
  CHECK(std::abs(e.norm2() - (1.0 - e.tail_mass())) < 1e-12);
  // tail equals the Poisson tail beyond n_max
  const double lambda = z.squaredNorm() / s->epsilon();
  double tail = 0.0;
  for (int n = s->n_max() + 1; n < s->n_max() + 200; ++n) {
    tail += std::exp(-lambda + n * std::log(lambda) - log_factorial(n));
  }
  CHECK(std::abs(e.tail_mass() - tail) < 1e-12);
  // <E, N E> = |z|^2 up to tail
  FockVector ne = apply_dgamma(Mat::Identity(1, 1), e);
  CHECK(std::abs(inner(e, ne) - Complex(z.squaredNorm())) < 50 * e.tail_mass() + 1e-12);

  // guard fires when the truncation cannot carry the state
  auto tiny = make_space(1, 3, 0.1);
  CHECK_THROWS_AS(coherent_state(tiny, z), GuardViolation);
}

TEST_CASE("second quantization") {
  Rng rng(23);
  auto s = make_space(2, 5, 0.3);

  // dGamma(I)|alpha> = eps |alpha| |alpha>
  BlockOperator n_op = number_operator(s);
  for (int n = 0; n <= 5; ++n) {
    Mat expect = s->epsilon() * n * Mat::Identity(s->block_dim(n), s->block_dim(n));
    CHECK((n_op.block(n) - expect).norm() == 0.0);
  }
  BlockOperator dg_id = dgamma_operator(s, Mat::Identity(2, 2));
  for (int n = 0; n <= 5; ++n) {
    CHECK((dg_id.block(n) - n_op.block(n)).norm() < 1e-13);
  }

  // Gamma(e^{itA}) = exp(i t dGamma(A)/eps) blockwise
  Mat a = Mat::Zero(2, 2);
  a(0, 0) = 1.3;
  a(1, 1) = -0.4;
  a(0, 1) = Complex(0.2, 0.7);
  a(1, 0) = std::conj(a(0, 1));
  const double t = 0.83;
  Mat expA = (Complex(0.0, t) * a).exp();
  BlockOperator gamma = gamma_operator(s, expA);
  BlockOperator dg = dgamma_operator(s, a);
  for (int n = 0; n <= 5; ++n) {
    Eigen::SelfAdjointEigenSolver<Mat> es(dg.block(n));
    Vec phases(es.eigenvalues().size());
    for (int i = 0; i < phases.size(); ++i)
      phases[i] = std::exp(Complex(0.0, t * es.eigenvalues()[i] / s->epsilon()));
    Mat blk_exp = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    CHECK((gamma.block(n) - blk_exp).norm() < 1e-10);
  }

  // Gamma(0) psi = <Omega, psi> Omega
  BlockOperator g0 = gamma_operator(s, Mat::Zero(2, 2));
  FockVector psi = rng.random_state(s, 4);
  FockVector proj = g0.apply(psi);
  CHECK(std::abs(proj.coeff(MultiIndex{0, 0}) - psi.coeff(MultiIndex{0, 0})) < 1e-14);
  proj.set_coeff(MultiIndex{0, 0}, 0.0);
  CHECK(proj.norm() < 1e-14);

  // non-Hermitian rejected for dGamma
  Mat bad = Mat::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(dgamma_operator(s, bad), std::invalid_argument);
}

TEST_CASE("gauge rotation") {
  auto s = make_space(1, 25, 0.25);
  BlockOperator id = gauge_rotation(s, 0.0);
  for (int n = 0; n <= 25; ++n) {
    CHECK((id.block(n) - Mat::Identity(1, 1)).norm() == 0.0);
  }
  Vec z(1);
  z[0] = Complex(0.5, -0.2);
  const double theta = 1.1;
  FockVector h = hermite_state(s, z, 4);
  FockVector rot = apply_gauge(theta, h);
  FockVector expect = h;
  expect *= std::exp(Complex(0.0, 4.0 * theta));
  expect *= Complex(-1.0);
  rot += expect;
  CHECK(rot.norm() < 1e-14);

  FockVector e = coherent_state(s, z);
  FockVector lhs = apply_gauge(theta, e);
  FockVector rhs = coherent_state(s, Vec(std::exp(Complex(0.0, theta)) * z));
  rhs *= Complex(-1.0);
  lhs += rhs;
  CHECK(lhs.norm() < 1e-10 + 10 * e.tail_mass());
}
