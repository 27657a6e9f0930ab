// Copyright 2026 The Focklab Authors
// SPDX-License-Identifier: Apache-2.0

#include "experiments.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

#include "bec.hpp"
#include "wigner.hpp"

namespace focklab {

namespace {

// ---------------------------------------------------------------- utilities

class ExpRng {
 public:
  explicit ExpRng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return (gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  Complex cbox() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }
  Vec cvec(int d, double scale = 1.0) {
    Vec v(d);
    for (int j = 0; j < d; ++j) v[j] = scale * cbox();
    return v;
  }
  Vec unit(int d) {
    Vec v = cvec(d);
    while (v.norm() < 1e-3) v = cvec(d);
    return v / v.norm();
  }
  PolySymbol homogeneous(int d, int p, int q) {
    PolySymbol b(d);
    for (const auto& beta : compositions(q, d)) {
      for (const auto& gamma : compositions(p, d)) b.add_term(beta, gamma, cbox());
    }
    return b;
  }
  Mat hermitian(int n, double scale) {
    Mat m = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      m(i, i) = scale * uniform(-1.0, 1.0);
      for (int j = i + 1; j < n; ++j) {
        m(i, j) = scale * cbox();
        m(j, i) = std::conj(m(i, j));
      }
    }
    return m;
  }

 private:
  std::mt19937_64 gen_;
};

class Csv {
 public:
  explicit Csv(std::string header) { rows_.push_back(std::move(header)); }
  void row(const std::vector<std::string>& cells) {
    std::string line;
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) line += ',';
      line += cells[i];
    }
    rows_.push_back(std::move(line));
  }
  std::string str() const {
    std::string out;
    for (const auto& r : rows_) {
      out += r;
      out += '\n';
    }
    return out;
  }

 private:
  std::vector<std::string> rows_;
};

std::string fd(double x) { return format_double(x); }
std::string fi(std::int64_t x) { return std::to_string(x); }

double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void parallel_for(std::int64_t n, int jobs, const std::function<void(std::int64_t)>& fn) {
  jobs = std::max(1, jobs);
  if (jobs == 1 || n <= 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(jobs);
  for (int w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::int64_t i = w; i < n; i += jobs) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// config schema guard: reject unknown keys, apply overrides over defaults
Json merge_config(const Json& defaults, const Json& overrides) {
  Json out = defaults;
  if (overrides.is_null()) return out;
  if (!overrides.is_object())
    throw std::invalid_argument("config must be a JSON object");
  for (auto it = overrides.begin(); it != overrides.end(); ++it) {
    if (it.key() == "experiment") continue;
    if (!defaults.contains(it.key()))
      throw std::invalid_argument("unknown config key: " + it.key());
    out[it.key()] = it.value();
  }
  return out;
}

Json base_verdict(const std::string& id) {
  return Json{{"experiment", id},
              {"pass", false},
              {"metrics", Json::object()},
              {"guards", Json::object()},
              {"tolerances", Json::object()}};
}

// ------------------------------------------------------- algebra-verify

ExperimentOutput run_algebra_verify(const Json& config, std::uint64_t seed, int jobs) {
  Json cfg = merge_config(Json{{"pairs", 50},
                               {"n_max", 12},
                               {"max_degree", 3},
                               {"tol_product", 1e-10},
                               {"tol_element", 1e-10},
                               {"tol_bound_excess", 1e-12}},
                          config);
  const int pairs = cfg["pairs"].get<int>();
  const int n_max = cfg["n_max"].get<int>();
  const int max_deg = cfg["max_degree"].get<int>();
  if (pairs < 1 || n_max < 2 * max_deg)
    throw std::invalid_argument("algebra-verify: inconsistent pairs/n_max");

  struct Task {
    int d, p1, q1, p2, q2, k;
    double eps;
    PolySymbol b1{1}, b2{1};
    Vec z;
  };
  ExpRng rng(seed);
  std::vector<Task> tasks(pairs);
  for (auto& t : tasks) {
    t.d = rng.uniform_int(1, 3);
    t.p1 = rng.uniform_int(0, max_deg);
    t.q1 = rng.uniform_int(0, max_deg - 0);
    t.p2 = rng.uniform_int(0, max_deg);
    t.q2 = rng.uniform_int(0, max_deg);
    if (t.p1 + t.q1 == 0) t.p1 = 1;
    if (t.p2 + t.q2 == 0) t.q2 = 1;
    t.eps = rng.uniform(0.2, 1.2);
    t.b1 = rng.homogeneous(t.d, t.p1, t.q1);
    t.b2 = rng.homogeneous(t.d, t.p2, t.q2);
    t.k = rng.uniform_int(t.p1, n_max - std::max(0, t.q1 - t.p1) - 1);
    t.z = rng.cvec(t.d);
  }

  std::vector<double> prod_res(pairs), elem_res(pairs), bound_ratio(pairs);
  parallel_for(pairs, jobs, [&](std::int64_t i) {
    const Task& t = tasks[i];
    auto space = make_space(t.d, n_max, t.eps);
    Mat m1 = wick_quantize_dense(space, t.b1).matrix();
    Mat m2 = wick_quantize_dense(space, t.b2).matrix();
    GradedSymbol graded = wick_product(t.b1, t.b2);
    Mat assembled =
        wick_quantize_dense(space, graded.collapse(t.eps)).matrix();
    const int deg = t.p1 + t.q1 + t.p2 + t.q2;
    const std::int64_t cut = space->basis().block_offset(n_max - deg + 1);
    prod_res[i] = (Mat(m1 * m2 - assembled).topLeftCorner(cut, cut)).cwiseAbs().maxCoeff();

    // matrix-element formula on Hermite states
    const int j = t.k - t.p1 + t.q1;
    FockVector hk = hermite_state(space, t.z, t.k);
    FockVector hj = hermite_state(space, t.z, j);
    const Complex got = inner(hj, apply_wick(t.b1, hk));
    double logw = 0.5 * (log_factorial(t.k) + log_factorial(j) -
                         log_factorial(t.k - t.p1) - log_factorial(j - t.q1));
    const Complex expect = std::exp(logw) * std::pow(t.eps, 0.5 * (t.p1 + t.q1)) *
                           std::pow(t.z.norm(), t.k - t.p1 + j - t.q1) *
                           t.b1.evaluate(t.z);
    elem_res[i] = std::abs(got - expect) / std::max(1.0, std::abs(expect));

    bound_ratio[i] = number_estimate_check(space, t.b2).max_ratio;
  });

  Csv csv("pair_id,d,p1,q1,p2,q2,epsilon,product_residual,element_residual,bound_ratio");
  double max_prod = 0, max_elem = 0, max_ratio = 0;
  for (int i = 0; i < pairs; ++i) {
    const Task& t = tasks[i];
    csv.row({fi(i), fi(t.d), fi(t.p1), fi(t.q1), fi(t.p2), fi(t.q2), fd(t.eps),
             fd(prod_res[i]), fd(elem_res[i]), fd(bound_ratio[i])});
    max_prod = std::max(max_prod, prod_res[i]);
    max_elem = std::max(max_elem, elem_res[i]);
    max_ratio = std::max(max_ratio, bound_ratio[i]);
  }

  ExperimentOutput out;
  out.verdict = base_verdict("algebra-verify");
  out.verdict["metrics"] = {{"max_product_residual", max_prod},
                            {"max_element_residual", max_elem},
                            {"max_bound_ratio", max_ratio}};
  out.verdict["tolerances"] = {{"tol_product", cfg["tol_product"]},
                               {"tol_element", cfg["tol_element"]},
                               {"tol_bound_excess", cfg["tol_bound_excess"]}};
  out.pass = max_prod <= cfg["tol_product"].get<double>() &&
             max_elem <= cfg["tol_element"].get<double>() &&
             max_ratio <= 1.0 + cfg["tol_bound_excess"].get<double>();
  out.verdict["pass"] = out.pass;
  out.csv_files.emplace_back("algebra_verify.csv", csv.str());
  return out;
}

// ------------------------------------------------------ laguerre-verify

ExperimentOutput run_laguerre_verify(const Json& config, std::uint64_t seed, int jobs) {
  Json cfg = merge_config(Json{{"kj_max", 12},
                               {"tol_laguerre", 1e-8},
                               {"gap_guard_number", 2.0},
                               {"tol_gap_variation", 2.0},
                               {"gap_instances", 3}},
                          config);
  const int kj_max = cfg["kj_max"].get<int>();
  ExpRng rng(seed);

  Csv csv("d,epsilon,probe_id,k,j,lhs_re,lhs_im,rhs_re,rhs_im,abs_err");
  double max_err = 0.0;
  for (int d : {1, 2}) {
    Vec z = rng.unit(d);
    std::vector<Vec> xis{rng.cvec(d, 0.45), rng.cvec(d, 0.7)};
    for (double eps : {0.25, 1.0}) {
      const int n_max = (d == 1) ? kj_max + 32 : kj_max + 18;
      auto space = make_space(d, n_max, eps);
      for (size_t pi = 0; pi < xis.size(); ++pi) {
        const Vec& xi = xis[pi];
        // V at the pinned scaled point xi/(pi sqrt(eps))
        DenseOperator w = weyl_operator(space, Vec(xi / std::sqrt(eps)));
        for (int k = 0; k <= kj_max; ++k) {
          for (int j = 0; j <= kj_max; ++j) {
            FockVector hk = hermite_state(space, z, k);
            FockVector hj = hermite_state(space, z, j);
            const Complex lhs = inner(hj, w.apply(hk));
            const Complex rhs = laguerre_vw(k, j, z, xi, eps);
            const double err = std::abs(lhs - rhs);
            max_err = std::max(max_err, err);
            csv.row({fi(d), fd(eps), fi(std::int64_t(pi)), fi(k), fi(j), fd(lhs.real()),
                     fd(lhs.imag()), fd(rhs.real()), fd(rhs.imag()), fd(err)});
          }
        }
      }
    }
  }

  // Weyl versus Wick gap on P_{2,2} symbols in d=2, guard fixed in number units
  Csv gap_csv("instance,epsilon,n_guard,gap,gap_over_eps");
  const double guard_number = cfg["gap_guard_number"].get<double>();
  double worst_variation = 0.0;
  const int instances = cfg["gap_instances"].get<int>();
  std::vector<std::vector<double>> ratios(instances);
  parallel_for(instances, jobs, [&](std::int64_t i) {
    ExpRng local(seed + 101 * (i + 1));
    PolySymbol b = local.homogeneous(2, 2, 2);
    for (double eps : {0.5, 0.25, 0.125}) {
      const int n_guard = static_cast<int>(std::lround(guard_number / eps));
      auto space = make_space(2, n_guard + 6, eps);
      ratios[i].push_back(weyl_wick_gap(space, b, n_guard) / eps);
    }
  });
  for (int i = 0; i < instances; ++i) {
    int gi = 0;
    for (double eps : {0.5, 0.25, 0.125}) {
      const int n_guard = static_cast<int>(std::lround(guard_number / eps));
      gap_csv.row({fi(i), fd(eps), fi(n_guard), fd(ratios[i][gi] * eps),
                   fd(ratios[i][gi])});
      ++gi;
    }
    const double lo = *std::min_element(ratios[i].begin(), ratios[i].end());
    const double hi = *std::max_element(ratios[i].begin(), ratios[i].end());
    worst_variation = std::max(worst_variation, hi / lo);
  }

  ExperimentOutput out;
  out.verdict = base_verdict("laguerre-verify");
  out.verdict["metrics"] = {{"max_laguerre_error", max_err},
                            {"max_gap_variation", worst_variation}};
  out.verdict["tolerances"] = {{"tol_laguerre", cfg["tol_laguerre"]},
                               {"tol_gap_variation", cfg["tol_gap_variation"]}};
  out.pass = max_err <= cfg["tol_laguerre"].get<double>() &&
             worst_variation <= cfg["tol_gap_variation"].get<double>();
  out.verdict["pass"] = out.pass;
  out.csv_files.emplace_back("laguerre_verify.csv", csv.str());
  out.csv_files.emplace_back("weyl_wick_gap.csv", gap_csv.str());
  return out;
}

// ------------------------------------------------------ prodcoh-limits

ExperimentOutput run_prodcoh_limits(const Json& config, std::uint64_t seed, int jobs) {
  Json cfg = merge_config(Json{{"eps_grid", {1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128,
                                             1.0 / 256}},
                               {"tol_final", 0.05},
                               {"tol_offdiag", 1e-12},
                               {"climb_margin", 64}},
                          config);
  const std::vector<double> grid = cfg["eps_grid"].get<std::vector<double>>();
  const int margin = cfg["climb_margin"].get<int>();
  ExpRng rng(seed);

  Csv csv("d,epsilon,k,observable_id,measured_re,measured_im,limit_re,limit_im,abs_err");
  bool pass = true;
  Json metrics = Json::object();
  for (int d : {1, 2}) {
    Vec z = rng.unit(d);
    // diagonal (p = q = 2) and off-diagonal (p = 2, q = 1) Wick observables
    PolySymbol b_diag = rng.homogeneous(d, 2, 2);
    PolySymbol b_off = rng.homogeneous(d, 2, 1);
    TrigSymbol trig{{{Complex(0.6, 0.1), rng.cvec(d, 0.5)},
                     {Complex(0.3, -0.2), rng.cvec(d, 0.5)},
                     {Complex(0.25, 0.0), rng.cvec(d, 0.5)}}};

    // circle average of the trig symbol, 256-point trapezoid
    Complex circle = 0.0;
    for (int t = 0; t < 256; ++t) {
      circle += trig.evaluate(Vec(std::exp(Complex(0.0, 2.0 * M_PI * t / 256)) * z));
    }
    circle /= 256.0;

    std::vector<double> wick_err(grid.size()), weyl_err(grid.size()),
        awick_err(grid.size()), off_err(grid.size());
    std::vector<Complex> diag_vals(grid.size()), weyl_vals(grid.size()),
        awick_vals(grid.size());
    parallel_for(static_cast<std::int64_t>(grid.size()), jobs, [&](std::int64_t gi) {
      const double eps = grid[gi];
      const int k = static_cast<int>(std::lround(1.0 / eps));
      auto space = make_space(d, k + margin, eps);
      FockVector hk = hermite_state(space, z, k);

      diag_vals[gi] = inner(hk, apply_wick(b_diag, hk));
      wick_err[gi] = std::abs(diag_vals[gi] - b_diag.evaluate(z));
      off_err[gi] = std::abs(inner(hk, apply_wick(b_off, hk)));

      weyl_vals[gi] = inner(hk, weyl_trig_apply(trig, hk));
      weyl_err[gi] = std::abs(weyl_vals[gi] - circle);
      awick_vals[gi] = inner(hk, anti_wick_trig_apply(trig, hk));
      awick_err[gi] = std::abs(awick_vals[gi] - circle);
    });
    for (size_t gi = 0; gi < grid.size(); ++gi) {
      const double eps = grid[gi];
      const int k = static_cast<int>(std::lround(1.0 / eps));
      const Complex bz = b_diag.evaluate(z);
      csv.row({fi(d), fd(eps), fi(k), "wick_diag", fd(diag_vals[gi].real()),
               fd(diag_vals[gi].imag()), fd(bz.real()), fd(bz.imag()),
               fd(wick_err[gi])});
      csv.row({fi(d), fd(eps), fi(k), "wick_offdiag", fd(off_err[gi]), "0", "0", "0",
               fd(off_err[gi])});
      csv.row({fi(d), fd(eps), fi(k), "weyl_trig", fd(weyl_vals[gi].real()),
               fd(weyl_vals[gi].imag()), fd(circle.real()), fd(circle.imag()),
               fd(weyl_err[gi])});
      csv.row({fi(d), fd(eps), fi(k), "antiwick_trig", fd(awick_vals[gi].real()),
               fd(awick_vals[gi].imag()), fd(circle.real()), fd(circle.imag()),
               fd(awick_err[gi])});
    }

    const double tol = cfg["tol_final"].get<double>();
    const bool ok = residuals_decreasing(wick_err) && wick_err.back() <= tol &&
                    residuals_decreasing(weyl_err) && weyl_err.back() <= tol &&
                    residuals_decreasing(awick_err) && awick_err.back() <= tol &&
                    *std::max_element(off_err.begin(), off_err.end()) <=
                        cfg["tol_offdiag"].get<double>();
    pass = pass && ok;
    metrics["d" + std::to_string(d)] = {{"wick_final", wick_err.back()},
                                        {"weyl_final", weyl_err.back()},
                                        {"antiwick_final", awick_err.back()},
                                        {"offdiag_max",
                                         *std::max_element(off_err.begin(),
                                                           off_err.end())}};
  }

  ExperimentOutput out;
  out.verdict = base_verdict("prodcoh-limits");
  out.verdict["metrics"] = metrics;
  out.verdict["tolerances"] = {{"tol_final", cfg["tol_final"]},
                               {"tol_offdiag", cfg["tol_offdiag"]}};
  out.pass = pass;
  out.verdict["pass"] = pass;
  out.csv_files.emplace_back("prodcoh_limits.csv", csv.str());
  return out;
}

// --------------------------------------------------------- hepp-sweep

ExperimentOutput run_hepp_sweep(const Json& config, std::uint64_t seed, int jobs) {
  Json cfg = merge_config(Json{{"a", 0.5},
                               {"q0", 0.1},
                               {"t", 0.5},
                               {"eps_grid", {0.25, 0.125, 0.0625, 0.03125}},
                               {"n_max_over_eps", 8.0},
                               {"slope_lo", 0.35},
                               {"slope_hi", 0.65}},
                          config);
  (void)seed;
  const double a = cfg["a"].get<double>();
  const double q0 = cfg["q0"].get<double>();
  const double t = cfg["t"].get<double>();
  const std::vector<double> grid = cfg["eps_grid"].get<std::vector<double>>();
  const double v_norm = 2.0 * std::abs(q0);
  if (4.0 * t * v_norm >= 1.0)
    throw std::invalid_argument("hepp-sweep: outside the regime 4 t V < 1");

  Vec z0(1);
  z0[0] = 1.0;
  std::vector<double> errs(grid.size()), drifts(grid.size()), n1(grid.size()),
      n2(grid.size());
  parallel_for(static_cast<std::int64_t>(grid.size()), jobs, [&](std::int64_t gi) {
    const double eps = grid[gi];
    const int n_max =
        static_cast<int>(std::ceil(cfg["n_max_over_eps"].get<double>() / eps));
    ModelSpec m = make_model(Mat::Constant(1, 1, a), Mat::Constant(1, 1, q0), eps, n_max);
    auto space = make_space(1, n_max, eps);
    HeppResult hepp = hepp_approximation(space, m, z0, t, eps / 4.0);
    Propagator u(space, m);
    FockVector exact = u.apply(coherent_state(space, z0, 1e-9), t);
    exact *= Complex(-1.0);
    exact += hepp.approx;
    errs[gi] = exact.norm();
    drifts[gi] = hepp.u2_norm_drift;
    n1[gi] = hepp.number_moment1;
    n2[gi] = hepp.number_moment2;
  });

  Csv csv("epsilon,n_max,t,error,u2_norm_drift,number_moment1,number_moment2");
  std::vector<double> lx, ly;
  for (size_t gi = 0; gi < grid.size(); ++gi) {
    const int n_max =
        static_cast<int>(std::ceil(cfg["n_max_over_eps"].get<double>() / grid[gi]));
    csv.row({fd(grid[gi]), fi(n_max), fd(t), fd(errs[gi]), fd(drifts[gi]), fd(n1[gi]),
             fd(n2[gi])});
    lx.push_back(std::log(grid[gi]));
    ly.push_back(std::log(errs[gi]));
  }
  const double slope = lsq_slope(lx, ly);

  ExperimentOutput out;
  out.verdict = base_verdict("hepp-sweep");
  out.verdict["metrics"] = {{"slope", slope},
                            {"errors", errs},
                            {"max_norm_drift",
                             *std::max_element(drifts.begin(), drifts.end())}};
  out.verdict["tolerances"] = {{"slope_lo", cfg["slope_lo"]},
                               {"slope_hi", cfg["slope_hi"]}};
  out.verdict["guards"] = {{"regime_4tV", 4.0 * t * v_norm}};
  out.pass = slope >= cfg["slope_lo"].get<double>() &&
             slope <= cfg["slope_hi"].get<double>();
  out.verdict["pass"] = out.pass;
  out.csv_files.emplace_back("hepp_sweep.csv", csv.str());
  return out;
}

// --------------------------------------------------------- dyson-sweep

ExperimentOutput run_dyson_sweep(const Json& config, std::uint64_t seed, int jobs) {
  Json cfg = merge_config(Json{{"a", 0.5},
                               {"q0", 0.12},
                               {"t", 0.5},
                               {"k_grid", {20, 40, 80, 160}},
                               {"tol_commutator", 1e-9},
                               {"slope_min", 0.8},
                               {"cohwick_eps", {1.0 / 20, 1.0 / 160}},
                               {"cohwick_factor", 4.0},
                               {"tol_oracle", 1e-9}},
                          config);
  const double a = cfg["a"].get<double>();
  const double q0 = cfg["q0"].get<double>();
  const double t = cfg["t"].get<double>();
  if (4.0 * t * 2.0 * std::abs(q0) >= 1.0)
    throw std::invalid_argument("dyson-sweep: outside the regime 4 t V < 1");

  // multicommutator identity, d = 2, n <= 3
  ExpRng rng(seed);
  double comm_res = 0.0;
  {
    const int n_max = 10;
    const double eps = 0.4;
    ModelSpec m = make_model(rng.hermitian(2, 0.6), rng.hermitian(3, 0.3), eps, n_max);
    PolySymbol b = rng.homogeneous(2, 2, 1);
    auto space = make_space(2, n_max, eps);
    const std::vector<double> times{0.5, 0.3, 0.1};
    Mat acc = wick_quantize_dense(space, free_evolved(m, b, t)).matrix();
    std::vector<double> applied;
    for (int n = 1; n <= 3; ++n) {
      applied.push_back(times[n - 1]);
      Mat qn = wick_quantize_dense(space, free_evolved(m, m.q_symbol(), times[n - 1]))
                   .matrix();
      acc = (qn * acc - acc * qn) / eps;
      auto cn = dyson_symbols(m, b, applied, t);
      Mat rhs = Mat::Zero(space->total_dim(), space->total_dim());
      for (int r = 0; r <= n; ++r) {
        rhs += std::pow(eps, r) * wick_quantize_dense(space, cn[r]).matrix();
      }
      const int deg = 3 + 2 * n;
      const std::int64_t cut =
          space->basis().block_offset(std::max(1, n_max - deg) + 1);
      comm_res = std::max(
          comm_res, operator_norm(Mat(acc - rhs).topLeftCorner(cut, cut)));
    }
  }

  // Remainder slope along eps = 1/k. In d=1 every homogeneous p = q symbol
  // is a polynomial of the number operator and the m = 0 element reduces to
  // the exact falling factorial, so the scaling is probed two ways: a
  // phase-sensitive m = 1 observable in d=1, and a generic p = q = 1
  // observable in d=2 with m = 0. k eps = 1 makes both prefactors exactly 1.
  const std::vector<int> ks = cfg["k_grid"].get<std::vector<int>>();
  Vec z1(1);
  z1[0] = 1.0;
  Vec xi(1);
  xi[0] = Complex(0.7, -0.2);
  PolySymbol b_m1 = symbol_inner_xi_z(1, xi);  // P_{1,0}: m = p - q = 1

  ExpRng rng2(seed + 999);
  Vec z2 = rng2.unit(2);
  Mat a2 = rng2.hermitian(2, 0.6);
  Mat q2t = rng2.hermitian(3, 1.0);
  q2t *= 0.12 / operator_norm(q2t);  // v_norm = 0.24 keeps 4 t V < 1
  PolySymbol b_d2 = rng2.homogeneous(2, 1, 1);

  std::vector<double> errs_m1(ks.size()), errs_d2(ks.size());
  std::vector<Complex> vals_m1(ks.size()), refs_m1(ks.size()), vals_d2(ks.size()),
      refs_d2(ks.size());
  parallel_for(static_cast<std::int64_t>(ks.size()), jobs, [&](std::int64_t i) {
    const int k = ks[i];
    const double eps = 1.0 / k;
    {
      ModelSpec m =
          make_model(Mat::Constant(1, 1, a), Mat::Constant(1, 1, q0), eps, k + 4);
      auto space = make_space(1, k + 4, eps);
      vals_m1[i] = dyson_matrix_element(space, m, b_m1, z1, k, 1, t);
      HartreeTrajectory traj = hartree_flow(m, z1, t, 5e-4);
      refs_m1[i] = b_m1.evaluate(traj.z_final());
      errs_m1[i] = std::abs(vals_m1[i] - refs_m1[i]);
    }
    {
      ModelSpec m = make_model(a2, q2t, eps, k + 4);
      auto space = make_space(2, k + 4, eps);
      vals_d2[i] = dyson_matrix_element(space, m, b_d2, z2, k, 0, t);
      HartreeTrajectory traj = hartree_flow(m, z2, t, 5e-4);
      refs_d2[i] = b_d2.evaluate(traj.z_final());
      errs_d2[i] = std::abs(vals_d2[i] - refs_d2[i]);
    }
  });

  Csv csv("epsilon,k,t,observable_id,exact_re,exact_im,approx_re,approx_im,abs_err");
  std::vector<double> lx, ly1, ly2;
  for (size_t i = 0; i < ks.size(); ++i) {
    csv.row({fd(1.0 / ks[i]), fi(ks[i]), fd(t), "hermite_element_m1_d1",
             fd(vals_m1[i].real()), fd(vals_m1[i].imag()), fd(refs_m1[i].real()),
             fd(refs_m1[i].imag()), fd(errs_m1[i])});
    csv.row({fd(1.0 / ks[i]), fi(ks[i]), fd(t), "hermite_element_m0_d2",
             fd(vals_d2[i].real()), fd(vals_d2[i].imag()), fd(refs_d2[i].real()),
             fd(refs_d2[i].imag()), fd(errs_d2[i])});
    lx.push_back(std::log(1.0 / ks[i]));
    ly1.push_back(std::log(errs_m1[i]));
    ly2.push_back(std::log(errs_d2[i]));
  }
  const double slope = std::min(lsq_slope(lx, ly1), lsq_slope(lx, ly2));

  // coherent-state propagation cross-checked against the d=1 phase oracle
  ModelSpec base = make_model(Mat::Constant(1, 1, a), Mat::Constant(1, 1, q0), 1.0, 0);
  PolySymbol b_coh = symbol_inner_z_xi(1, xi);
  const std::vector<double> coh_grid = cfg["cohwick_eps"].get<std::vector<double>>();
  ConvergenceReport coh = coherent_wick_limit(base, z1, b_coh, t, coh_grid);
  double oracle_err = 0.0;
  for (size_t i = 0; i < coh_grid.size(); ++i) {
    const double eps = coh_grid[i];
    const int n_max = static_cast<int>(std::ceil(8.0 / eps));
    const double lambda = 1.0 / eps;
    Complex oracle = 0.0;
    for (int n = 0; n + 1 <= n_max; ++n) {
      const double cn = std::exp(-0.5 * lambda + 0.5 * n * std::log(lambda) -
                                 0.5 * log_factorial(n));
      const double cn1 = std::exp(-0.5 * lambda + 0.5 * (n + 1) * std::log(lambda) -
                                  0.5 * log_factorial(n + 1));
      const double dphi = a + 2.0 * eps * n * q0;
      oracle += cn1 * cn * std::exp(Complex(0.0, t * dphi)) *
                std::sqrt(eps * (n + 1)) * xi[0];
    }
    oracle_err = std::max(oracle_err, std::abs(coh.rows[i].measured - oracle));
    csv.row({fd(eps), fi(static_cast<std::int64_t>(std::lround(1.0 / eps))), fd(t),
             "coherent_wick", fd(coh.rows[i].measured.real()),
             fd(coh.rows[i].measured.imag()), fd(coh.rows[i].reference.real()),
             fd(coh.rows[i].reference.imag()), fd(coh.rows[i].abs_err)});
  }
  const double factor = coh.rows.front().abs_err /
                        std::max(coh.rows.back().abs_err, 1e-300);

  ExperimentOutput out;
  out.verdict = base_verdict("dyson-sweep");
  out.verdict["metrics"] = {{"commutator_residual", comm_res},
                            {"remainder_slope", slope},
                            {"cohwick_factor", factor},
                            {"oracle_error", oracle_err}};
  out.verdict["tolerances"] = {{"tol_commutator", cfg["tol_commutator"]},
                               {"slope_min", cfg["slope_min"]},
                               {"cohwick_factor", cfg["cohwick_factor"]},
                               {"tol_oracle", cfg["tol_oracle"]}};
  out.pass = comm_res <= cfg["tol_commutator"].get<double>() &&
             slope >= cfg["slope_min"].get<double>() &&
             factor >= cfg["cohwick_factor"].get<double>() &&
             oracle_err <= cfg["tol_oracle"].get<double>();
  out.verdict["pass"] = out.pass;
  out.csv_files.emplace_back("dyson_sweep.csv", csv.str());
  return out;
}

// --------------------------------------------------------- wigner-char

ExperimentOutput run_wigner_char(const Json& config, std::uint64_t seed, int jobs) {
  Json cfg = merge_config(Json{{"tol_phase", 1e-9},
                               {"tol_circle", 0.05},
                               {"tol_positive_type", -1e-8},
                               {"eps_grid_coherent", {0.25, 0.125, 0.0625, 0.03125}},
                               {"eps_grid_hermite", {1.0 / 32, 1.0 / 64, 1.0 / 128}},
                               {"evolved_eps", {1.0 / 8, 1.0 / 16, 1.0 / 32}}},
                          config);
  (void)jobs;
  ExpRng rng(seed);
  Vec z(1);
  z[0] = Complex(0.6, -0.3);
  std::vector<Vec> probes;
  for (double re : {0.3, 0.9, 1.5}) {
    for (double im : {0.0, -0.6}) probes.push_back(Vec::Constant(1, Complex(re, im)));
  }

  Csv csv("family,epsilon,probe_id,g_re,g_im,limit_re,limit_im,abs_err");
  bool pass = true;

  // coherent family: residual exactly 1 - e^{-eps pi^2 |xi|^2}
  double max_phase_dev = 0.0;
  {
    StateFamily fam = [&](double eps) {
      auto s = make_space(
          1, static_cast<int>(std::ceil(12.0 * z.squaredNorm() / eps)) + 48, eps);
      return MixedState::pure(coherent_state(s, z, 1e-10));
    };
    CharReport rep =
        compare_limit(fam, LimitChar::dirac(z), probes,
                      cfg["eps_grid_coherent"].get<std::vector<double>>(), 1.0);
    for (const auto& row : rep.rows) {
      const double expected =
          1.0 -
          std::exp(-row.epsilon * M_PI * M_PI * probes[row.probe_id].squaredNorm());
      max_phase_dev = std::max(max_phase_dev, std::abs(row.abs_err - expected));
      csv.row({"coherent", fd(row.epsilon), fi(row.probe_id), fd(row.g.real()),
               fd(row.g.imag()), fd(row.limit.real()), fd(row.limit.imag()),
               fd(row.abs_err)});
    }
    pass = pass && rep.decreasing && max_phase_dev <= cfg["tol_phase"].get<double>();
  }

  // Hermite family against the circle average
  double hermite_final = 0.0;
  {
    Vec zu(1);
    zu[0] = 1.0;
    StateFamily fam = [&](double eps) {
      const int k = static_cast<int>(std::lround(1.0 / eps));
      auto s = make_space(1, k + 56, eps);
      return MixedState::pure(hermite_state(s, zu, k));
    };
    CharReport rep = compare_limit(fam, LimitChar::circle(zu, 0), probes,
                                   cfg["eps_grid_hermite"].get<std::vector<double>>(),
                                   cfg["tol_circle"].get<double>());
    for (const auto& row : rep.rows) {
      csv.row({"hermite", fd(row.epsilon), fi(row.probe_id), fd(row.g.real()),
               fd(row.g.imag()), fd(row.limit.real()), fd(row.limit.imag()),
               fd(row.abs_err)});
    }
    hermite_final = rep.sup_residual.back();
    pass = pass && rep.pass;
  }

  // evolved coherent family against dirac(z_t)
  double evolved_final = 0.0;
  {
    const double a = 0.4, q0 = 0.1, t = 0.5;
    ModelSpec base =
        make_model(Mat::Constant(1, 1, a), Mat::Constant(1, 1, q0), 1.0, 0);
    Vec z0(1);
    z0[0] = 1.0;
    HartreeTrajectory traj = hartree_flow(base, z0, t, 1e-3);
    StateFamily fam = [&](double eps) {
      ModelSpec m = base;
      m.epsilon = eps;
      const int n_max = static_cast<int>(std::ceil(10.0 / eps)) + 48;
      auto s = make_space(1, n_max, eps);
      Propagator u(s, m);
      return MixedState::pure(u.apply(coherent_state(s, z0, 1e-9), t));
    };
    CharReport rep = compare_limit(fam, LimitChar::dirac(traj.z_final()), probes,
                                   cfg["evolved_eps"].get<std::vector<double>>(), 1.0);
    for (const auto& row : rep.rows) {
      csv.row({"evolved_coherent", fd(row.epsilon), fi(row.probe_id), fd(row.g.real()),
               fd(row.g.imag()), fd(row.limit.real()), fd(row.limit.imag()),
               fd(row.abs_err)});
    }
    evolved_final = rep.sup_residual.back();
    pass = pass && rep.decreasing;
  }

  // positive-type matrix and |G| <= 1
  double min_eig = 0.0, max_abs_g = 0.0;
  {
    auto s = make_space(1, 70, 0.2);
    MixedState rho = MixedState::pure(coherent_state(s, z, 1e-10));
    std::vector<Vec> ptp;
    for (int i = 0; i < 6; ++i) ptp.push_back(rng.cvec(1, 0.8));
    min_eig = positive_type_min_eigenvalue(rho, ptp);
    for (const Vec& xi : probes) max_abs_g = std::max(max_abs_g,
                                                      std::abs(char_function(rho, xi)));
    pass = pass && min_eig >= cfg["tol_positive_type"].get<double>() &&
           max_abs_g <= 1.0 + 1e-10;
  }

  ExperimentOutput out;
  out.verdict = base_verdict("wigner-char");
  out.verdict["metrics"] = {{"max_phase_deviation", max_phase_dev},
                            {"hermite_final_residual", hermite_final},
                            {"evolved_final_residual", evolved_final},
                            {"positive_type_min_eig", min_eig},
                            {"max_abs_g", max_abs_g}};
  out.verdict["tolerances"] = {{"tol_phase", cfg["tol_phase"]},
                               {"tol_circle", cfg["tol_circle"]},
                               {"tol_positive_type", cfg["tol_positive_type"]}};
  out.pass = pass;
  out.verdict["pass"] = pass;
  out.csv_files.emplace_back("wigner_char.csv", csv.str());
  return out;
}

// -------------------------------------------------------- superposition

ExperimentOutput run_superposition(const Json& config, std::uint64_t seed, int jobs) {
  // the coherent/Hermite cross term carries the sqrt of a Poisson weight and
  // decays only like eps^{1/4}; the declared budget follows that rate
  Json cfg = merge_config(Json{{"eps_grid", {1.0 / 16, 1.0 / 32, 1.0 / 64}},
                               {"tol_final_pair", 0.2},
                               {"tol_final_mixed", 0.25}},
                          config);
  (void)seed;
  (void)jobs;
  Vec z1(1), z2(1);
  z1[0] = 1.0;
  z2[0] = Complex(-0.2, 0.9);
  std::vector<Vec> probes;
  for (double re : {0.3, 0.7, 1.0}) probes.push_back(Vec::Constant(1, Complex(re, 0.2)));
  const std::vector<double> grid = cfg["eps_grid"].get<std::vector<double>>();

  Csv csv("family,epsilon,probe_id,g_re,g_im,limit_re,limit_im,abs_err");

  // two distinct coherent states: mixture of diracs
  StateFamily pair_fam = [&](double eps) {
    auto s = make_space(1, static_cast<int>(std::ceil(12.0 / eps)) + 48, eps);
    FockVector u = coherent_state(s, z1, 1e-9);
    u += coherent_state(s, z2, 1e-9);
    u *= Complex(1.0 / std::sqrt(2.0));
    return MixedState::pure(u);
  };
  LimitChar pair_lim = LimitChar::mixture(
      {{Complex(0.5), LimitChar::dirac(z1)}, {Complex(0.5), LimitChar::dirac(z2)}});
  CharReport pair_rep = compare_limit(pair_fam, pair_lim, probes, grid,
                                      cfg["tol_final_pair"].get<double>());
  for (const auto& row : pair_rep.rows) {
    csv.row({"coherent_pair", fd(row.epsilon), fi(row.probe_id), fd(row.g.real()),
             fd(row.g.imag()), fd(row.limit.real()), fd(row.limit.imag()),
             fd(row.abs_err)});
  }

  // coherent plus Hermite: half dirac, half circle
  StateFamily mixed_fam = [&](double eps) {
    const int k = static_cast<int>(std::lround(1.0 / eps));
    auto s = make_space(1, k + 64, eps);
    return MixedState::pure(coherent_hermite_superposition(s, z1, k, 1e-7));
  };
  LimitChar mixed_lim = LimitChar::mixture(
      {{Complex(0.5), LimitChar::dirac(z1)}, {Complex(0.5), LimitChar::circle(z1, 0)}});
  CharReport mixed_rep = compare_limit(mixed_fam, mixed_lim, probes, grid,
                                       cfg["tol_final_mixed"].get<double>());
  for (const auto& row : mixed_rep.rows) {
    csv.row({"coherent_hermite", fd(row.epsilon), fi(row.probe_id), fd(row.g.real()),
             fd(row.g.imag()), fd(row.limit.real()), fd(row.limit.imag()),
             fd(row.abs_err)});
  }

  // cross overlap of the two coherent components dies with eps
  double final_overlap = 0.0;
  {
    Csv overlap_csv("epsilon,overlap_abs,predicted_abs");
    for (double eps : grid) {
      auto s = make_space(1, static_cast<int>(std::ceil(12.0 / eps)) + 48, eps);
      const Complex overlap =
          inner(coherent_state(s, z1, 1e-9), coherent_state(s, z2, 1e-9));
      const Complex predicted =
          std::exp((-z1.squaredNorm() - z2.squaredNorm() + 2.0 * z1.dot(z2)) /
                   (2.0 * eps));
      overlap_csv.row({fd(eps), fd(std::abs(overlap)), fd(std::abs(predicted))});
      final_overlap = std::abs(overlap);
    }
    csv.row({"overlap_final", fd(grid.back()), fi(0), fd(final_overlap), "0", "0", "0",
             fd(final_overlap)});
  }

  ExperimentOutput out;
  out.verdict = base_verdict("superposition");
  out.verdict["metrics"] = {{"pair_final", pair_rep.sup_residual.back()},
                            {"mixed_final", mixed_rep.sup_residual.back()},
                            {"cross_overlap_final", final_overlap}};
  out.verdict["tolerances"] = {{"tol_final_pair", cfg["tol_final_pair"]},
                               {"tol_final_mixed", cfg["tol_final_mixed"]}};
  out.pass = pair_rep.pass && mixed_rep.pass && final_overlap < 1e-6;
  out.verdict["pass"] = out.pass;
  out.csv_files.emplace_back("superposition.csv", csv.str());
  return out;
}

// -------------------------------------------------------- gauge-average

ExperimentOutput run_gauge_average(const Json& config, std::uint64_t seed, int jobs) {
  Json cfg = merge_config(Json{{"a", 0.6},
                               {"q0", 0.15},
                               {"t", 0.7},
                               {"two_way_eps", 1.0 / 24},
                               {"tol_two_way", 1e-8},
                               {"eps_grid", {1.0 / 16, 1.0 / 32, 1.0 / 48}},
                               {"tol_final", 0.15}},
                          config);
  (void)seed;
  (void)jobs;
  const double a = cfg["a"].get<double>();
  const double q0 = cfg["q0"].get<double>();
  const double t = cfg["t"].get<double>();
  Vec z(1);
  z[0] = 1.0;

  // sigma built two ways with the mean-field propagator
  double two_way = 0.0;
  {
    const double eps = cfg["two_way_eps"].get<double>();
    auto s = make_space(1, static_cast<int>(std::ceil(8.0 / eps)), eps);
    ModelSpec m = make_model(Mat::Constant(1, 1, a), Mat::Constant(1, 1, q0), eps,
                             s->n_max());
    Propagator u(s, m);
    UnitaryHook hook = [&](const FockVector& v) { return u.apply(v, t); };
    two_way = gauge_average_two_ways(s, hook, z);
  }

  // rho_phi with the evolved dynamics converges to the circle at z_t
  ModelSpec base = make_model(Mat::Constant(1, 1, a), Mat::Constant(1, 1, q0), 1.0, 0);
  HartreeTrajectory traj = hartree_flow(base, z, t, 1e-3);
  auto phi = [](double sVal) {
    return std::exp(-0.5 * sVal * sVal) / std::sqrt(2.0 * M_PI);
  };
  StateFamily fam = [&](double eps) {
    auto s = make_space(1, static_cast<int>(std::ceil(8.0 / eps)), eps);
    ModelSpec m = base;
    m.epsilon = eps;
    Propagator u(s, m);
    UnitaryHook hook = [&, space_keep = s](const FockVector& v) {
      return u.apply(v, t);
    };
    return gauge_average(s, hook, z, phi);
  };
  std::vector<Vec> probes;
  for (double re : {0.3, 0.8, 1.2}) probes.push_back(Vec::Constant(1, Complex(re, -0.2)));
  CharReport rep =
      compare_limit(fam, LimitChar::circle(traj.z_final(), 0), probes,
                    cfg["eps_grid"].get<std::vector<double>>(),
                    cfg["tol_final"].get<double>());

  Csv csv("family,epsilon,probe_id,g_re,g_im,limit_re,limit_im,abs_err");
  for (const auto& row : rep.rows) {
    csv.row({"gauge_phi", fd(row.epsilon), fi(row.probe_id), fd(row.g.real()),
             fd(row.g.imag()), fd(row.limit.real()), fd(row.limit.imag()),
             fd(row.abs_err)});
  }

  ExperimentOutput out;
  out.verdict = base_verdict("gauge-average");
  out.verdict["metrics"] = {{"two_way_trace_distance", two_way},
                            {"final_residual", rep.sup_residual.back()}};
  out.verdict["tolerances"] = {{"tol_two_way", cfg["tol_two_way"]},
                               {"tol_final", cfg["tol_final"]}};
  out.pass = two_way <= cfg["tol_two_way"].get<double>() && rep.pass;
  out.verdict["pass"] = out.pass;
  out.csv_files.emplace_back("gauge_average.csv", csv.str());
  return out;
}

// ----------------------------------------------------------- defect-dim

ExperimentOutput run_defect_dim(const Json& config, std::uint64_t seed, int jobs) {
  Json cfg = merge_config(Json{{"dims", {2, 4, 8, 16}},
                               {"epsilon", 0.5},
                               {"n_max", 12},
                               {"tol_moment", 1e-12}},
                          config);
  (void)seed;
  (void)jobs;
  const double eps = cfg["epsilon"].get<double>();
  const int n_max = cfg["n_max"].get<int>();
  const std::vector<int> dims = cfg["dims"].get<std::vector<int>>();

  Csv csv("d,epsilon,n_max,wick_moment_abs,number_expectation,tail_mass");
  double worst_moment = 0.0, worst_number_dev = 0.0, max_tail = 0.0;
  for (int d : dims) {
    auto space = make_space(d, n_max, eps);
    Vec z = Vec::Zero(d);
    z[d - 1] = 1.0;  // escapes along the dimension; b watches the first mode
    FockVector e = coherent_state(space, z, 1e-6);
    PolySymbol b(d);
    MultiIndex e1(d, 0);
    e1[0] = 1;
    b.add_term(e1, e1, 1.0);  // |z_1|^2
    const double moment = std::abs(inner(e, apply_wick(b, e)));
    const double number =
        inner(e, apply_dgamma(Mat::Identity(d, d), e)).real();
    worst_moment = std::max(worst_moment, moment);
    worst_number_dev =
        std::max(worst_number_dev, std::abs(number - 1.0) - 30.0 * e.tail_mass());
    max_tail = std::max(max_tail, e.tail_mass());
    csv.row({fi(d), fd(eps), fi(n_max), fd(moment), fd(number), fd(e.tail_mass())});
  }

  ExperimentOutput out;
  out.verdict = base_verdict("defect-dim");
  out.verdict["metrics"] = {{"max_wick_moment", worst_moment},
                            {"max_number_deviation_beyond_tail", worst_number_dev},
                            {"max_tail_mass", max_tail}};
  out.verdict["tolerances"] = {{"tol_moment", cfg["tol_moment"]}};
  out.pass = worst_moment <= cfg["tol_moment"].get<double>() &&
             worst_number_dev <= 0.0;
  out.verdict["pass"] = out.pass;
  out.csv_files.emplace_back("defect_dim.csv", csv.str());
  return out;
}

// ------------------------------------------------------------------ bec

ExperimentOutput run_bec(const Json& config, std::uint64_t seed, int jobs) {
  Json cfg = merge_config(Json{{"beta", 1.0},
                               {"nu_over_crit", {0.5, 2.0}},
                               {"eps_grid", {1e-2, 1e-3, 1e-4, 1e-5}},
                               {"tol_residual", 0.02},
                               {"tol_constraint", 1e-12},
                               {"check_d4", true}},
                          config);
  (void)seed;
  (void)jobs;
  const double beta = cfg["beta"].get<double>();
  const double crit = nu_crit(3, beta);
  const std::vector<double> grid = cfg["eps_grid"].get<std::vector<double>>();

  // probe amplitudes keep the eps^{1/3} lattice correction inside the budget
  std::vector<BecProbe> probes(3);
  probes[0].modes.push_back({{0, 0, 0}, Complex(0.5, 0.0)});
  probes[1].modes.push_back({{0, 0, 0}, Complex(0.25, 0.25)});
  probes[1].modes.push_back({{1, 0, 0}, Complex(0.0, 0.3)});
  probes[2].modes.push_back({{1, 1, 0}, Complex(0.4, 0.0)});

  Csv csv("epsilon,nu,z_eps,constraint_residual,probe_id,g_re,g_im,limit_re,limit_im,abs_err");
  bool pass = true;
  double worst_constraint = 0.0, worst_final = 0.0;
  for (double ratio : cfg["nu_over_crit"].get<std::vector<double>>()) {
    const double nu = ratio * crit;
    std::vector<std::vector<double>> errs(probes.size());
    for (double eps : grid) {
      BecParams p{3, beta, nu, eps};
      const FugacityResult fug = solve_fugacity(p);
      worst_constraint = std::max(worst_constraint, fug.constraint_residual);
      for (size_t pi = 0; pi < probes.size(); ++pi) {
        const Complex g = bec_char(p, probes[pi]);
        const Complex lim = bec_limit_char(probes[pi], 3, beta, nu);
        const double err = std::abs(g - lim);
        errs[pi].push_back(err);
        csv.row({fd(eps), fd(nu), fd(fug.z), fd(fug.constraint_residual),
                 fi(std::int64_t(pi)), fd(g.real()), fd(g.imag()), fd(lim.real()),
                 fd(lim.imag()), fd(err)});
      }
    }
    for (auto& e : errs) {
      pass = pass && residuals_decreasing(e) &&
             e.back() <= cfg["tol_residual"].get<double>();
      worst_final = std::max(worst_final, e.back());
    }
  }
  pass = pass && worst_constraint <= cfg["tol_constraint"].get<double>();

  // d = 4 per-mode decay cross-check (the exponent d/2 < 1 argument needs it)
  double d4_final = 0.0;
  if (cfg["check_d4"].get<bool>()) {
    const double crit4 = nu_crit(4, beta);
    BecProbe f0;
    f0.modes.push_back({{0, 0, 0, 0}, Complex(0.5, 0.0)});
    std::vector<double> errs;
    for (double eps : grid) {
      BecParams p{4, beta, 1.5 * crit4, eps};
      errs.push_back(
          std::abs(bec_char(p, f0) - bec_limit_char(f0, 4, beta, 1.5 * crit4)));
    }
    d4_final = errs.back();
    pass = pass && residuals_decreasing(errs);
  }

  ExperimentOutput out;
  out.verdict = base_verdict("bec");
  out.verdict["metrics"] = {{"nu_crit", crit},
                            {"worst_constraint_residual", worst_constraint},
                            {"worst_final_residual", worst_final},
                            {"d4_final_residual", d4_final}};
  out.verdict["tolerances"] = {{"tol_residual", cfg["tol_residual"]},
                               {"tol_constraint", cfg["tol_constraint"]}};
  out.pass = pass;
  out.verdict["pass"] = pass;
  out.csv_files.emplace_back("bec.csv", csv.str());
  return out;
}

// -------------------------------------------------------- normal-approx

ExperimentOutput run_normal_approx(const Json& config, std::uint64_t seed, int jobs) {
  Json cfg = merge_config(Json{{"lambdas", {25.0, 100.0, 400.0}},
                               {"alpha", -0.8},
                               {"beta", 1.3},
                               {"tol_final", 0.05}},
                          config);
  (void)seed;
  (void)jobs;
  const double alpha = cfg["alpha"].get<double>();
  const double beta = cfg["beta"].get<double>();
  const std::vector<double> lambdas = cfg["lambdas"].get<std::vector<double>>();

  std::vector<std::pair<std::string, std::function<Complex(std::int64_t, double)>>>
      rules;
  rules.emplace_back("constant_one",
                     [](std::int64_t, double) { return Complex(1.0); });
  rules.emplace_back("indicator", [&](std::int64_t n, double lambda) {
    const double sVal = (double(n) - lambda) / std::sqrt(lambda);
    return Complex((sVal > alpha && sVal < beta) ? 1.0 : 0.0);
  });
  rules.emplace_back("mean_ratio", [](std::int64_t n, double lambda) {
    return Complex(double(n) / lambda);
  });

  Csv csv("rule,lambda,lhs_re,lhs_im,rhs_re,rhs_im,abs_err");
  bool pass = true;
  Json metrics = Json::object();
  const double floor = 1e-12;  // below this the error is quadrature noise
  for (const auto& [name, rule] : rules) {
    std::vector<double> errs;
    for (double lambda : lambdas) {
      const NormalApproxResult r = normal_approx(rule, lambda);
      errs.push_back(std::abs(r.lhs - r.rhs));
      csv.row({name, fd(lambda), fd(r.lhs.real()), fd(r.lhs.imag()), fd(r.rhs.real()),
               fd(r.rhs.imag()), fd(errs.back())});
    }
    bool decreasing = true;
    for (size_t i = 1; i < errs.size(); ++i) {
      if (errs[i] > std::max(errs[i - 1], floor)) decreasing = false;
    }
    pass = pass && decreasing && errs.back() <= cfg["tol_final"].get<double>();
    metrics[name] = {{"final_error", errs.back()},
                     {"decreasing", decreasing},
                     {"noise_floor", floor}};
  }

  ExperimentOutput out;
  out.verdict = base_verdict("normal-approx");
  out.verdict["metrics"] = metrics;
  out.verdict["tolerances"] = {{"tol_final", cfg["tol_final"]}};
  out.pass = pass;
  out.verdict["pass"] = pass;
  out.csv_files.emplace_back("normal_approx.csv", csv.str());
  return out;
}

}  // namespace

const std::vector<ExperimentInfo>& experiment_catalog() {
  static const std::vector<ExperimentInfo> catalog{
      {"algebra-verify",
       "Wick product, matrix-element formula and number bounds on seeded symbols"},
      {"laguerre-verify",
       "Fourier-Wigner transforms against the Laguerre closed form; Weyl/Wick gap"},
      {"prodcoh-limits",
       "Hermite and coherent families tested on Wick/Weyl/Anti-Wick observables"},
      {"hepp-sweep",
       "squeezed coherent propagation error scaling like sqrt(epsilon)"},
      {"dyson-sweep",
       "multicommutator hierarchy, remainder scaling, coherent-state propagation"},
      {"wigner-char",
       "characteristic functions against dirac and circle limit functionals"},
      {"superposition",
       "superposed states against mixtures of limit functionals"},
      {"gauge-average",
       "circle averaging of evolved coherent states, two constructions"},
      {"defect-dim",
       "escape along the dimension: zero moments with unit number mass"},
      {"bec", "condensation threshold, fugacity constraint, gaussian limit"},
      {"normal-approx", "Poisson sums against the normal-approximation integral"},
  };
  return catalog;
}

ExperimentOutput run_experiment(const std::string& id, const Json& config,
                                std::uint64_t seed, int jobs) {
  using Runner =
      ExperimentOutput (*)(const Json&, std::uint64_t, int);
  static const std::map<std::string, Runner> runners{
      {"algebra-verify", &run_algebra_verify},
      {"laguerre-verify", &run_laguerre_verify},
      {"prodcoh-limits", &run_prodcoh_limits},
      {"hepp-sweep", &run_hepp_sweep},
      {"dyson-sweep", &run_dyson_sweep},
      {"wigner-char", &run_wigner_char},
      {"superposition", &run_superposition},
      {"gauge-average", &run_gauge_average},
      {"defect-dim", &run_defect_dim},
      {"bec", &run_bec},
      {"normal-approx", &run_normal_approx},
  };
  auto it = runners.find(id);
  if (it == runners.end())
    throw std::invalid_argument("unknown experiment id: " + id);
  ExperimentOutput out = it->second(config, seed, jobs);
  out.verdict["seed"] = seed;
  return out;
}

}  // namespace focklab
