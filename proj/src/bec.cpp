// Copyright 2026 The Focklab Authors
// SPDX-License-Identifier: Apache-2.0

#include "bec.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>

#include "special_functions.hpp"

namespace focklab {

namespace {

void check_params(const BecParams& p) {
  if (p.d_phys < 1) throw std::invalid_argument("BecParams: d_phys >= 1 required");
  if (!(p.beta > 0.0)) throw std::invalid_argument("BecParams: beta > 0 required");
  if (!(p.epsilon > 0.0)) throw std::invalid_argument("BecParams: epsilon > 0 required");
}

// Histogram of squared lattice norms over [-r_max, r_max]^d minus the origin,
// with a certified bound for everything outside the cube.
struct Lattice {
  double c;  // beta eps^{2/d} (2 pi)^2
  int r_max;
  double tail_bound;  // on sum_{|n|_inf > r_max} z E_n/(1 - z E_n), any z < 1
  std::vector<std::pair<double, double>> norm2_counts;  // (|n|^2, multiplicity)
};

// bound the shells r' > r by twice the first dropped shell once c(r+1) >= 1
double shell_tail_bound(int d, double c, int r) {
  const double denom = 1.0 - std::exp(-c);
  const double first = 2.0 * d * std::pow(2.0 * (r + 1) + 1.0, d - 1) *
                       std::exp(-c * double(r + 1) * double(r + 1)) / denom;
  return 2.0 * first;
}

const Lattice& lattice_for(int d, double c) {
  static std::mutex mutex;
  static std::map<std::pair<int, double>, Lattice> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find({d, c});
  if (it != cache.end()) return it->second;

  Lattice lat;
  lat.c = c;
  int r = std::max(1, static_cast<int>(std::ceil(1.0 / c)));
  while (shell_tail_bound(d, c, r) >= 0.5e-10) {
    ++r;
    if (r > 100000) throw std::runtime_error("bec lattice: cutoff did not certify");
  }
  lat.r_max = r;
  lat.tail_bound = shell_tail_bound(d, c, r);

  std::map<long long, double> counts;
  std::vector<int> n(d, -r);
  while (true) {
    long long norm2 = 0;
    for (int v : n) norm2 += static_cast<long long>(v) * v;
    if (norm2 != 0) counts[norm2] += 1.0;
    int cidx = 0;
    while (cidx < d && ++n[cidx] > r) {
      n[cidx] = -r;
      ++cidx;
    }
    if (cidx == d) break;
  }
  lat.norm2_counts.reserve(counts.size());
  for (const auto& [norm2, count] : counts) {
    lat.norm2_counts.emplace_back(static_cast<double>(norm2), count);
  }
  return cache.emplace(std::make_pair(d, c), std::move(lat)).first->second;
}

double lattice_c(const BecParams& p) {
  return p.beta * std::pow(p.epsilon, 2.0 / p.d_phys) * 4.0 * M_PI * M_PI;
}

}  // namespace

LatticeSum nu_eps(const BecParams& p, double z) {
  check_params(p);
  if (!(z > 0.0) || z >= 1.0)
    throw std::invalid_argument("nu_eps: fugacity must lie in (0,1)");
  const Lattice& lat = lattice_for(p.d_phys, lattice_c(p));
  double acc = 0.0;
  for (const auto& [norm2, count] : lat.norm2_counts) {
    const double e = std::exp(-lat.c * norm2);
    acc += count * z * e / (1.0 - z * e);
  }
  return {p.epsilon * acc, p.epsilon * lat.tail_bound, lat.r_max};
}

double nu_zero(int d_phys, double beta, double z) {
  if (d_phys < 1 || !(beta > 0.0)) throw std::invalid_argument("nu_zero: bad parameters");
  if (z < 1.0) {
    if (!(z > 0.0)) return 0.0;
    // geometric-series representation with a closed-form Gaussian term
    double acc = 0.0;
    double zk = 1.0;
    for (int k = 1; k < 100000; ++k) {
      zk *= z;
      const double term = zk * std::pow(4.0 * M_PI * beta * k, -0.5 * d_phys);
      acc += term;
      if (term < 1e-17 * std::max(acc, 1e-300)) break;
    }
    return acc;
  }
  if (z == 1.0) return nu_crit(d_phys, beta);
  throw std::invalid_argument("nu_zero: fugacity beyond 1");
}

double nu_crit(int d_phys, double beta) {
  if (d_phys < 3)
    throw std::invalid_argument("nu_crit: no condensation threshold below d = 3");
  const ZetaResult zr = zeta_certified(0.5 * d_phys);
  return zr.value * std::pow(4.0 * M_PI * beta, -0.5 * d_phys);
}

FugacityResult solve_fugacity(const BecParams& p) {
  check_params(p);
  if (!(p.nu > 0.0)) throw std::invalid_argument("solve_fugacity: nu > 0 required");
  // work in u = 1 - z to keep resolution near the condensed regime;
  // the constraint is strictly decreasing in u
  auto constraint = [&](double u) {
    const double z = 1.0 - u;
    return p.epsilon * z / u + nu_eps(p, z).value - p.nu;
  };
  double lo = 1e-18, hi = 1.0 - 1e-14;
  double u_best = 0.5, best = std::abs(constraint(u_best));
  for (int it = 0; it < 240; ++it) {
    const double mid = std::sqrt(lo * hi);  // geometric mid: u spans 16 decades
    const double val = constraint(mid);
    if (std::abs(val) < best) {
      best = std::abs(val);
      u_best = mid;
    }
    if (val > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (best <= 1e-13) break;
  }
  FugacityResult out;
  out.z = 1.0 - u_best;
  out.constraint_residual = best;
  out.condensate_density = p.epsilon * out.z / u_best;
  return out;
}

double condensate_fraction(const BecParams& p) {
  const double crit = nu_crit(p.d_phys, p.beta);
  return std::max(0.0, 1.0 - crit / p.nu);
}

std::complex<double> bec_char(const BecParams& p, const BecProbe& f) {
  check_params(p);
  const FugacityResult fug = solve_fugacity(p);
  const double c = lattice_c(p);
  double f2 = 0.0;
  double occupied = 0.0;
  for (const auto& [n, fn] : f.modes) {
    if (static_cast<int>(n.size()) != p.d_phys)
      throw std::invalid_argument("bec_char: probe mode dimension mismatch");
    double norm2 = 0.0;
    for (int v : n) norm2 += static_cast<double>(v) * v;
    const double e = std::exp(-c * norm2);
    const double occ = (norm2 == 0.0) ? fug.z / (1.0 - fug.z)
                                      : fug.z * e / (1.0 - fug.z * e);
    f2 += std::norm(fn);
    occupied += std::norm(fn) * occ;
  }
  const double expo = -p.epsilon * M_PI * M_PI * (f2 + occupied);
  return std::exp(expo);
}

std::complex<double> bec_limit_char(const BecProbe& f, int d_phys, double beta,
                                    double nu) {
  const double crit = nu_crit(d_phys, beta);
  if (nu <= crit) return 1.0;
  double f0sq = 0.0;
  for (const auto& [n, fn] : f.modes) {
    bool zero = true;
    for (int v : n) {
      if (v != 0) zero = false;
    }
    if (zero) f0sq += std::norm(fn);
  }
  return std::exp(-M_PI * M_PI * (nu - crit) * f0sq);
}

}  // namespace focklab
