#include <doctest.h>

#include <cmath>

#include "bec.hpp"
#include "special_functions.hpp"

using namespace focklab;
using Complex = std::complex<double>;

TEST_CASE("lattice density: limits, monotonicity, certified tails") {
  BecParams p{3, 1.0, 1.0, 1e-2};

  // z -> 0+ kills the density
  CHECK(nu_eps(p, 1e-12).value < 1e-9);
  CHECK_THROWS(nu_eps(p, 1.0));
  CHECK_THROWS(nu_eps(p, -0.1));

  // monotone increasing in z
  double prev = 0.0;
  for (double z : {0.1, 0.3, 0.6, 0.9, 0.99}) {
    const LatticeSum s = nu_eps(p, z);
    CHECK(s.value > prev);
    CHECK(s.tail_bound < 1e-10);
    prev = s.value;
  }

  // monotone decreasing in eps at fixed z
  double prev_eps_value = -1.0;
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    BecParams q = p;
    q.epsilon = eps;
    const double v = nu_eps(q, 0.7).value;
    if (prev_eps_value >= 0.0) CHECK(v >= prev_eps_value);
    prev_eps_value = v;
  }

  // nu_eps -> nu_0 with shrinking residual along the eps grid
  const double target = nu_zero(3, 1.0, 0.7);
  double prev_err = 1e18;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    BecParams q = p;
    q.epsilon = eps;
    const double err = std::abs(nu_eps(q, 0.7).value - target);
    CHECK(err < 0.55 * prev_err);
    prev_err = err;
  }
}

TEST_CASE("critical density and the zeta series") {
  const double crit = nu_crit(3, 1.0);
  const ZetaResult z32 = zeta_certified(1.5);
  CHECK(z32.tail_bound < 1e-14);
  CHECK(std::abs(crit - z32.value * std::pow(4.0 * M_PI, -1.5)) < 1e-15);
  // zeta(3/2) = 2.612375348...
  CHECK(std::abs(z32.value - 2.6123753486854883) < 1e-12);

  // scaling nu_crit(beta) = beta^{-d/2} nu_crit(1)
  CHECK(std::abs(nu_crit(3, 2.0) - std::pow(2.0, -1.5) * crit) < 1e-15);
  CHECK_THROWS(nu_crit(2, 1.0));

  // nu_zero increasing in z
  CHECK(nu_zero(3, 1.0, 0.4) < nu_zero(3, 1.0, 0.8));
  CHECK(nu_zero(3, 1.0, 0.9999) <= crit + 1e-12);
}

TEST_CASE("fugacity solver") {
  const double crit = nu_crit(3, 1.0);

  // below the critical density the condensate empties out
  {
    double prev_cond = 1e18;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
      BecParams p{3, 1.0, 0.5 * crit, eps};
      const FugacityResult r = solve_fugacity(p);
      CHECK(r.constraint_residual <= 1e-12);
      CHECK(r.condensate_density < prev_cond);
      prev_cond = r.condensate_density;
    }
    CHECK(prev_cond < 1e-3);
  }

  // above it the condensate carries nu - nu_crit and z = 1 - eps/(nu - nu0) + o(eps)
  {
    const double nu = 2.0 * crit;
    double prev_gap = 1e18;
    double prev_rel = 1e18;
    for (double eps : {1e-2, 1e-3, 1e-4, 1e-5}) {
      BecParams p{3, 1.0, nu, eps};
      const FugacityResult r = solve_fugacity(p);
      CHECK(r.constraint_residual <= 1e-12);
      const double gap = std::abs(r.condensate_density - (nu - crit));
      CHECK(gap < prev_gap);
      prev_gap = gap;
      // z = 1 - eps/(nu - nu0) + o(eps): the relative deviation of 1 - z
      // from eps/(nu - nu_crit) carries the lattice correction and shrinks
      const double rel = std::abs((1.0 - r.z) * (nu - crit) / eps - 1.0);
      CHECK(rel < prev_rel);
      prev_rel = rel;
    }
    CHECK(prev_gap < 5e-3);
    CHECK(prev_rel < 0.1);
  }

  // condensate fraction is continuous at nu = nu_crit
  BecParams at{3, 1.0, crit, 1e-3};
  CHECK(condensate_fraction(at) == 0.0);
  BecParams above{3, 1.0, crit * (1.0 + 1e-9), 1e-3};
  CHECK(condensate_fraction(above) < 1e-8);
  BecParams below{3, 1.0, crit * (1.0 - 1e-9), 1e-3};
  CHECK(condensate_fraction(below) == 0.0);
}

TEST_CASE("characteristic function of the gibbs family") {
  const double crit = nu_crit(3, 1.0);
  BecProbe f0_only;
  f0_only.modes.push_back({{0, 0, 0}, Complex(1.0, 0.0)});
  BecProbe mixed;
  mixed.modes.push_back({{0, 0, 0}, Complex(0.8, 0.0)});
  mixed.modes.push_back({{1, 0, 0}, Complex(0.0, 0.6)});
  BecProbe off_only;
  off_only.modes.push_back({{1, 1, 0}, Complex(1.0, 0.0)});
  BecProbe empty;

  for (double nu : {0.5 * crit, 2.0 * crit}) {
    for (double eps : {1e-2, 1e-4}) {
      BecParams p{3, 1.0, nu, eps};
      CHECK(std::abs(bec_char(p, f0_only)) <= 1.0);
      CHECK(std::abs(bec_char(p, empty) - Complex(1.0)) < 1e-14);
    }
  }

  // below the critical density every probe limit is 1
  {
    const double nu = 0.5 * crit;
    double prev = 1e9;
    for (double eps : {1e-2, 1e-3, 1e-4, 1e-5}) {
      BecParams p{3, 1.0, nu, eps};
      const double err = std::abs(bec_char(p, mixed) - bec_limit_char(mixed, 3, 1.0, nu));
      CHECK(bec_limit_char(mixed, 3, 1.0, nu) == Complex(1.0));
      CHECK(err < prev);
      prev = err;
    }
    CHECK(prev < 0.02);
  }

  // above it: gaussian in f_0, and pure nonzero modes become invisible.
  // The lattice correction to the condensate density decays like eps^{1/3}
  // in d = 3, so the residual scale is set by |f_0|^2.
  {
    const double nu = 2.0 * crit;
    BecProbe f0_half;
    f0_half.modes.push_back({{0, 0, 0}, Complex(0.5, 0.0)});
    double prev = 1e9, prev_half = 1e9;
    for (double eps : {1e-2, 1e-3, 1e-4, 1e-5}) {
      BecParams p{3, 1.0, nu, eps};
      const double err =
          std::abs(bec_char(p, f0_only) - bec_limit_char(f0_only, 3, 1.0, nu));
      CHECK(err < prev);
      prev = err;
      const double err_half =
          std::abs(bec_char(p, f0_half) - bec_limit_char(f0_half, 3, 1.0, nu));
      CHECK(err_half < prev_half);
      prev_half = err_half;
    }
    CHECK(prev < 0.03);
    CHECK(prev_half < 0.02);
    CHECK(std::abs(bec_limit_char(f0_only, 3, 1.0, nu) -
                   std::exp(-M_PI * M_PI * (nu - crit))) < 1e-15);
    CHECK(bec_limit_char(off_only, 3, 1.0, nu) == Complex(1.0));
    BecParams p{3, 1.0, nu, 1e-5};
    CHECK(std::abs(bec_char(p, off_only) - Complex(1.0)) < 0.02);
  }

  // d_phys = 4 behaves the same way
  {
    const double crit4 = nu_crit(4, 1.0);
    const double nu = 1.5 * crit4;
    BecProbe f0_4;
    f0_4.modes.push_back({{0, 0, 0, 0}, Complex(1.0, 0.0)});
    double prev = 1e9;
    for (double eps : {1e-2, 1e-3, 1e-4, 1e-5}) {
      BecParams p{4, 1.0, nu, eps};
      const double err =
          std::abs(bec_char(p, f0_4) - bec_limit_char(f0_4, 4, 1.0, nu));
      CHECK(err < prev);
      prev = err;
    }
    CHECK(prev < 0.02);
  }
}
