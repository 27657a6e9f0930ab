// Copyright 2026 The Focklab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FOCKLAB_BEC_HPP
#define FOCKLAB_BEC_HPP

#include <complex>
#include <vector>

namespace focklab {

// Free Bose gas at inverse temperature beta on the rescaled lattice, with the
// total density constrained to nu. Condensation analysis requires d_phys >= 3.
struct BecParams {
  int d_phys = 3;
  double beta = 1.0;
  double nu = 1.0;
  double epsilon = 1e-2;
};

struct LatticeSum {
  double value;
  double tail_bound;  // certified bound on the dropped shells
  int cutoff;         // largest |n|_inf kept
};

// eps sum_{n != 0} z E_n / (1 - z E_n) with E_n = e^{-beta eps^{2/d} |2 pi n|^2};
// the cutoff is chosen adaptively from the Gaussian shell bound.
LatticeSum nu_eps(const BecParams& p, double z);

// nu_0(beta, z) = sum_{k>=1} z^k (4 pi beta k)^{-d/2}, certified tails.
// z = 1 requires d_phys >= 3.
double nu_zero(int d_phys, double beta, double z);
double nu_crit(int d_phys, double beta);  // zeta(d/2) (4 pi beta)^{-d/2}

struct FugacityResult {
  double z;
  double constraint_residual;  // |eps z/(1-z) + nu_eps - nu|
  double condensate_density;   // eps z/(1-z)
};

// Bisection on the strictly increasing constraint map over z in (0,1).
FugacityResult solve_fugacity(const BecParams& p);

double condensate_fraction(const BecParams& p);  // max(0, 1 - nu_crit/nu)

// Characteristic function of the rescaled Gibbs state on a finite Fourier
// probe f = {f_n}: e^{-eps pi^2 |f|^2} exp[-eps pi^2 sum_n |f_n|^2 z E_n/(1 - z E_n)].
struct BecProbe {
  std::vector<std::pair<std::vector<int>, std::complex<double>>> modes;  // (n, f_n)
};

std::complex<double> bec_char(const BecParams& p, const BecProbe& f);
// eps -> 0 limit: e^{-pi^2 (nu - nu_crit) |f_0|^2} above the critical density,
// 1 at or below it.
std::complex<double> bec_limit_char(const BecProbe& f, int d_phys, double beta,
                                    double nu);

}  // namespace focklab

#endif
