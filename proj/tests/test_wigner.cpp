#include <doctest.h>

#include "wigner.hpp"
#include "test_util.hpp"

using namespace focklab;
using testutil::Rng;

namespace {

std::vector<Vec> probe_grid_1d() {
  std::vector<Vec> probes;
  for (double re : {0.3, 0.9, 1.5}) {
    for (double im : {0.0, -0.6}) {
      probes.push_back(Vec::Constant(1, Complex(re, im)));
    }
  }
  return probes;
}

SpacePtr hermite_family_space(int k, double extra = 48.0) {
  return make_space(1, k + static_cast<int>(extra), 1.0 / k);
}

}  // namespace

TEST_CASE("characteristic function basics") {
  auto s = make_space(1, 50, 0.25);
  Vec xi(1);
  xi[0] = Complex(0.8, -0.4);

  // vacuum: both Gaussian factors -> e^{-eps pi^2 |xi|^2}
  FockVector omega = vacuum_state(s);
  Complex g = char_function(omega, xi);
  CHECK(std::abs(g - std::exp(-s->epsilon() * M_PI * M_PI * xi.squaredNorm())) <
        1e-12);
  CHECK(std::abs(char_function(omega, Vec::Zero(1)) - Complex(1.0)) < 1e-14);

  // coherent state: modulus e^{-eps pi^2 |xi|^2}, phase +2 pi S(xi, z)
  Vec z(1);
  z[0] = Complex(0.7, 0.3);
  FockVector e = coherent_state(s, z, 1e-10);
  Complex gc = char_function(e, xi);
  const double sform = (xi.dot(z) + z.dot(xi)).real() / 2.0;
  Complex expect = std::exp(Complex(-s->epsilon() * M_PI * M_PI * xi.squaredNorm(),
                                    2.0 * M_PI * sform));
  CHECK(std::abs(gc - expect) < 1e-9);
  // |G| <= 1 with tail slack
  CHECK(std::abs(gc) <= 1.0 + 1e-10);
  // G(0) = trace
  CHECK(std::abs(char_function(e, Vec::Zero(1)) - Complex(e.norm2())) < 1e-12);
}

TEST_CASE("coherent family reproduces the dirac limit with the exact residual") {
  Vec z(1);
  z[0] = Complex(0.6, -0.2);
  StateFamily family = [&](double eps) {
    auto s = make_space(1, static_cast<int>(std::ceil(12.0 * z.squaredNorm() / eps)) + 40,
                        eps);
    return MixedState::pure(coherent_state(s, z, 1e-10));
  };
  auto probes = probe_grid_1d();
  CharReport rep = compare_limit(family, LimitChar::dirac(z), probes,
                                 {1.0 / 4, 1.0 / 8, 1.0 / 16}, 0.9);
  CHECK(rep.pass);
  // residual is exactly 1 - e^{-eps pi^2 |xi|^2}: phase matches to 1e-9
  for (const auto& row : rep.rows) {
    const double expected_err =
        1.0 - std::exp(-row.epsilon * M_PI * M_PI *
                       probes[row.probe_id].squaredNorm());
    CHECK(std::abs(row.abs_err - expected_err) < 1e-9);
  }
}

TEST_CASE("hermite family reproduces the circle average") {
  Vec z(1);
  z[0] = 1.0;
  StateFamily family = [&](double eps) {
    const int k = static_cast<int>(std::lround(1.0 / eps));
    auto s = hermite_family_space(k);
    return MixedState::pure(hermite_state(s, z, k));
  };
  auto probes = probe_grid_1d();
  CharReport rep = compare_limit(family, LimitChar::circle(z, 0), probes,
                                 {1.0 / 16, 1.0 / 32, 1.0 / 64}, 0.10);
  CHECK(rep.pass);

  // gauge invariance: rotating z leaves the Hermite family char unchanged
  Vec zr = std::exp(Complex(0.0, 0.77)) * z;
  StateFamily family_r = [&](double eps) {
    const int k = static_cast<int>(std::lround(1.0 / eps));
    auto s = hermite_family_space(k);
    return MixedState::pure(hermite_state(s, zr, k));
  };
  for (const Vec& xi : probes) {
    Complex a = char_function(family(1.0 / 32), xi);
    Complex b = char_function(family_r(1.0 / 32), xi);
    CHECK(std::abs(std::abs(a) - std::abs(b)) < 1e-12);
  }
}

TEST_CASE("superpositions") {
  Vec z(1);
  z[0] = 1.0;

  // (E(z) + z^{tensor k})/sqrt2 against the half/half mixture
  StateFamily family = [&](double eps) {
    const int k = static_cast<int>(std::lround(1.0 / eps));
    auto s = hermite_family_space(k, 64.0);
    return MixedState::pure(coherent_hermite_superposition(s, z, k, 1e-7));
  };
  LimitChar lim = LimitChar::mixture(
      {{Complex(0.5), LimitChar::dirac(z)}, {Complex(0.5), LimitChar::circle(z, 0)}});
  auto probes = probe_grid_1d();
  // the residual floor is the coherent component's exact Gaussian envelope
  // (1 - e^{-eps pi^2 |xi|^2})/2, about 0.16 at eps = 1/64 on these probes
  CharReport rep =
      compare_limit(family, lim, probes, {1.0 / 16, 1.0 / 32, 1.0 / 64}, 0.25);
  CHECK(rep.decreasing);
  CHECK(rep.sup_residual.back() < 0.25);

  // cross term of two distinct coherent states dies like the overlap
  Vec z2(1);
  z2[0] = Complex(-0.4, 0.8);
  for (double eps : {0.5, 0.25, 0.125}) {
    auto s = make_space(1, static_cast<int>(40.0 / eps), eps);
    FockVector e1 = coherent_state(s, z, 1e-10);
    FockVector e2 = coherent_state(s, z2, 1e-10);
    const Complex overlap = inner(e1, e2);
    const Complex expect =
        std::exp((-z.squaredNorm() - z2.squaredNorm() + 2.0 * z.dot(z2)) /
                 (2.0 * eps));
    CHECK(std::abs(overlap - expect) < 1e-10);
  }

  // L = 1 degenerate superposition reduces to the single state
  auto s = make_space(1, 20, 0.25);
  FockVector one = hermite_superposition(s, {z}, 4);
  FockVector direct = hermite_state(s, z, 4);
  direct *= Complex(-1.0);
  one += direct;
  CHECK(one.norm() < 1e-14);
}

TEST_CASE("gauge averaging") {
  Vec z(1);
  z[0] = 1.0;
  const double eps = 1.0 / 24;
  auto s = make_space(1, 110, eps);

  // free mean-field propagator commutes with N
  ModelSpec m = make_model(Mat::Constant(1, 1, 0.6), Mat::Constant(1, 1, 0.15), eps,
                           s->n_max());
  Propagator u(s, m);
  UnitaryHook hook = [&](const FockVector& v) { return u.apply(v, 0.7); };

  CHECK(gauge_average_two_ways(s, hook, z) < 1e-8);

  // rho_phi with a Gaussian window matches the circle limit at moderate eps
  auto phi = [](double sVal) {
    return std::exp(-0.5 * sVal * sVal) / std::sqrt(2.0 * M_PI);
  };
  MixedState rho = gauge_average(s, hook, z, phi);
  CHECK(std::abs(rho.trace() - 1.0) < 0.05);

  // a non-number-conserving hook is rejected
  UnitaryHook bad = [&](const FockVector& v) {
    return weyl_apply(Vec::Constant(1, Complex(0.4, 0.0)), v);
  };
  CHECK_THROWS_AS(gauge_average(s, bad, z, phi), std::invalid_argument);
}

TEST_CASE("gauge averaged states converge to the circle limit") {
  Vec z(1);
  z[0] = 1.0;
  auto phi = [](double sVal) {
    return std::exp(-0.5 * sVal * sVal) / std::sqrt(2.0 * M_PI);
  };
  StateFamily family = [&](double eps) {
    auto s = make_space(1, static_cast<int>(1.0 / eps) + 70, eps);
    UnitaryHook id = [](const FockVector& v) { return v; };
    return gauge_average(s, id, z, phi);
  };
  auto probes = probe_grid_1d();
  CharReport rep = compare_limit(family, LimitChar::circle(z, 0), probes,
                                 {1.0 / 16, 1.0 / 32, 1.0 / 64}, 0.12);
  CHECK(rep.pass);
}

TEST_CASE("wick moments across the limit families") {
  Rng rng(5);
  Vec z(1);
  z[0] = 1.0;

  // p = q symbols converge to b(z) on the Hermite family (prefactor 1+O(eps));
  // p != q symbols have exactly vanishing diagonal elements. |z|^2 itself is
  // exact at k eps = 1, so use the quartic where the prefactor is 1 - eps.
  PolySymbol diag = symbol_norm_squared(1) * symbol_norm_squared(1);
  PolySymbol offd = rng.homogeneous_symbol(1, 2, 1);
  double prev_err = 1e9;
  for (double eps : {1.0 / 8, 1.0 / 16, 1.0 / 32}) {
    const int k = static_cast<int>(std::lround(1.0 / eps));
    auto s = make_space(1, k + 8, eps);
    MixedState rho = MixedState::pure(hermite_state(s, z, k));
    const Complex m_diag = wick_moment(rho, diag);
    const double err = std::abs(m_diag - hermite_wick_limit(diag, z, 0));
    CHECK(err < prev_err);
    prev_err = err;
    CHECK(std::abs(wick_moment(rho, offd)) < 1e-12);
  }

  // coherent family: exact at every eps
  PolySymbol b = rng.homogeneous_symbol(1, 1, 1);
  for (double eps : {0.5, 0.125}) {
    auto s = make_space(1, static_cast<int>(30.0 / eps), eps);
    MixedState rho = MixedState::pure(coherent_state(s, z, 1e-11));
    CHECK(std::abs(wick_moment(rho, b) - b.evaluate(z)) < 1e-8);
  }
}

TEST_CASE("hermite series reconstructs the Weyl trace") {
  Vec z(1);
  z[0] = 1.0;
  const double eps = 0.25;
  auto s = make_space(1, 60, eps);
  Vec xi(1);
  xi[0] = Complex(0.9, 0.4);

  MixedState rho = MixedState::pure(coherent_state(s, z, 1e-10));
  Complex direct = weyl_trace(rho, xi);
  Complex series = hermite_series_trace(rho, xi, 60);
  CHECK(std::abs(direct - series) < 1e-8);

  MixedState rho_h = MixedState::pure(hermite_state(s, z, 12));
  CHECK(std::abs(weyl_trace(rho_h, xi) - hermite_series_trace(rho_h, xi, 60)) < 1e-8);
}

TEST_CASE("positive type matrix") {
  Rng rng(9);
  auto s = make_space(1, 60, 0.25);
  Vec z(1);
  z[0] = Complex(0.5, 0.5);
  MixedState rho = MixedState::pure(coherent_state(s, z, 1e-10));
  std::vector<Vec> probes;
  for (int i = 0; i < 6; ++i) probes.push_back(rng.complex_vector(1, 0.8));
  CHECK(positive_type_min_eigenvalue(rho, probes) >= -1e-8);

  MixedState rho_h = MixedState::pure(hermite_state(s, z / z.norm(), 10));
  CHECK(positive_type_min_eigenvalue(rho_h, probes) >= -1e-8);
}

TEST_CASE("normal approximation to the Poisson distribution") {
  // a_n = 1: both sides equal 1 (integral misses only the s < -sqrt(lambda) part)
  auto one = [](std::int64_t, double) { return Complex(1.0); };
  for (double lambda : {25.0, 100.0, 400.0}) {
    auto r = normal_approx(one, lambda);
    CHECK(std::abs(r.lhs - Complex(1.0)) < 1e-12);
    CHECK(std::abs(r.rhs - Complex(1.0)) < 1e-6);
  }

  // indicator of alpha < (n - lambda)/sqrt(lambda) < beta -> Gaussian mass
  const double alpha = -0.8, beta = 1.3;
  auto indicator = [&](std::int64_t n, double lambda) {
    const double sVal = (double(n) - lambda) / std::sqrt(lambda);
    return Complex((sVal > alpha && sVal < beta) ? 1.0 : 0.0);
  };
  const double target = 0.5 * (std::erf(beta / std::sqrt(2.0)) -
                               std::erf(alpha / std::sqrt(2.0)));
  double prev = 1e9;
  for (double lambda : {25.0, 100.0, 400.0}) {
    auto r = normal_approx(indicator, lambda);
    const double err = std::abs(r.lhs - r.rhs);
    CHECK(err < prev + 1e-3);
    prev = err;
    if (lambda == 400.0) {
      CHECK(err < 0.05);
      CHECK(std::abs(r.lhs - target) < 0.15);
    }
  }

  // a_n = n / lambda: Poisson mean makes the sum exactly 1
  auto mean_rule = [](std::int64_t n, double lambda) {
    return Complex(double(n) / lambda);
  };
  prev = 1e9;
  for (double lambda : {25.0, 100.0, 400.0}) {
    auto r = normal_approx(mean_rule, lambda);
    CHECK(std::abs(r.lhs - Complex(1.0)) < 1e-12);
    const double err = std::abs(r.lhs - r.rhs);
    CHECK(err < prev);
    prev = err;
    if (lambda == 400.0) CHECK(err < 0.05);
  }
}
