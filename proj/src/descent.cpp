#include "ratiocut/descent.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ratiocut/error.hpp"
#include "ratiocut/tvprox.hpp"
#include "text_scan.hpp"

namespace ratiocut {

void validate(const DescentConfig& cfg) {
  if (!(cfg.c > 0.0) || !std::isfinite(cfg.c))
    throw Error(ErrorCode::invalid_parameter, "step constant c must be positive");
  if (!(cfg.outer_tol > 0.0) || !(cfg.inner_tol > 0.0))
    throw Error(ErrorCode::invalid_parameter, "tolerances must be positive");
  if (cfg.max_outer_iter == 0 || cfg.inner_max_iter == 0)
    throw Error(ErrorCode::invalid_parameter, "iteration limits must be positive");
}

namespace {

double distance(std::span<const double> a, std::span<const double> b) {
  Signal d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return norm2(d);
}

}  // namespace

StepResult step(const WeightedGraph& g, std::span<const double> f,
                const DescentConfig& cfg, std::span<const double> warm_dual) {
  validate(cfg);
  const std::size_t n = g.num_vertices();
  if (f.size() != n) throw Error(ErrorCode::length_mismatch, "signal length does not match graph size");

  StepResult s;
  const double tv = total_variation(g, f);
  const double bal = balance(f);
  if (!(bal > 0.0)) throw Error(ErrorCode::undefined_energy, "step requires a non-constant signal");
  const double lambda = tv / bal;

  s.v = subgrad_balance(f);
  s.g_shift.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.g_shift[i] = f[i] + cfg.c * s.v[i];

  if (lambda > 0.0) {
    const ProxProblem problem{s.g_shift, lambda, cfg.c};
    ProxOptions opts;
    opts.tol = cfg.inner_tol;
    opts.max_iter = cfg.inner_max_iter;
    opts.accelerate = cfg.accelerate_inner;
    opts.warm_dual = warm_dual;
    ProxSolution prox = solve_prox(g, problem, opts);
    s.h = std::move(prox.h);
    s.dual = std::move(prox.dual);
    s.prox_converged = prox.converged;
    s.record.prox_gap = prox.gap;
    s.record.inner_iterations = prox.iterations;
    s.diag.prox_error_bound = std::sqrt(2.0 * prox.gap * cfg.c / lambda);
  } else {
    // Zero energy: f is constant on each component, so it minimizes E.
    s.h.assign(f.begin(), f.end());
    s.dual.assign(warm_dual.begin(), warm_dual.end());
  }

  const double norm_h = norm2(s.h);
  if (!(norm_h > 0.0) || !std::isfinite(norm_h))
    throw Error(ErrorCode::numerical_failure, "prox returned a zero or non-finite signal");
  s.f_next.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.f_next[i] = s.h[i] / norm_h;

  auto& d = s.diag;
  d.mean_g = mean(s.g_shift);
  d.mean_h = mean(s.h);
  d.mean_f_next = mean(s.f_next);
  d.norm_f_next = norm2(s.f_next);
  d.norm_f = norm2(f);
  d.norm_g = norm2(s.g_shift);
  d.norm_h = norm_h;
  d.norm_v = norm2(s.v);
  d.balance_f = bal;
  d.balance_h = balance(s.h);
  d.norm_identity_error =
      d.norm_g * d.norm_g -
      (d.norm_f * d.norm_f + 2.0 * cfg.c * bal + cfg.c * cfg.c * d.norm_v * d.norm_v);

  const double dist_hf = distance(s.h, f);
  d.energy_next = d.balance_h > 0.0 ? total_variation(g, s.h) / d.balance_h : 0.0;

  auto& r = s.record;
  r.energy = lambda;
  r.increment = distance(s.f_next, f);
  r.descent_slack = d.balance_h > 0.0
                        ? lambda - d.energy_next - lambda / d.balance_h * dist_hf * dist_hf / cfg.c
                        : 0.0;
  return s;
}

std::vector<LemmaViolation> check_step(const StepResult& s, const DescentConfig& cfg) {
  std::vector<LemmaViolation> out;
  const auto k = s.record.k;
  const auto& d = s.diag;
  auto expect = [&](const char* name, double excess) {
    if (excess > 0.0) out.push_back({k, name, excess});
  };
  constexpr double mean_tol = 1e-10;
  expect("mean_g", std::abs(d.mean_g) - mean_tol);
  expect("mean_h", std::abs(d.mean_h) - mean_tol);
  expect("mean_f", std::abs(d.mean_f_next) - mean_tol);
  expect("unit_norm", std::abs(d.norm_f_next - 1.0) - 1e-12);
  expect("norm_identity", std::abs(d.norm_identity_error) - 1e-10 * d.norm_g * d.norm_g);
  expect("prox_nonexpansive", d.norm_h - d.norm_g - d.prox_error_bound - 1e-12 * d.norm_g);
  const std::size_t n = s.f_next.size();
  expect("shift_bound", d.norm_g - d.norm_f - 2.0 * cfg.c * std::sqrt(static_cast<double>(n)));
  const double slack = 10.0 * cfg.inner_tol * (1.0 + d.balance_h);
  expect("descent_inequality", -s.record.descent_slack - slack);
  expect("energy_decrease", d.energy_next - s.record.energy - slack);
  return out;
}

DescentResult run(const WeightedGraph& g, std::span<const double> f0,
                  const DescentConfig& cfg, const StepObserver& observe) {
  validate(cfg);
  if (f0.size() != g.num_vertices())
    throw Error(ErrorCode::length_mismatch, "initial signal length does not match graph size");
  Signal f = project_mean_zero(f0);
  const double nf = norm2(f);
  if (!(nf > 0.0)) throw Error(ErrorCode::undefined_energy, "initial signal must be non-constant");
  for (double& x : f) x /= nf;

  DescentResult result;
  std::vector<double> dual;
  for (std::size_t k = 0; k < cfg.max_outer_iter; ++k) {
    StepResult s = step(g, f, cfg, dual);
    s.record.k = k;
    result.inner_converged = result.inner_converged && s.prox_converged;
    if (cfg.check_lemmas) {
      auto v = check_step(s, cfg);
      result.violations.insert(result.violations.end(), v.begin(), v.end());
    }
    if (observe) observe(s);
    result.trace.push_back(s.record);
    f = std::move(s.f_next);
    dual = std::move(s.dual);
    if (s.record.increment < cfg.outer_tol) {
      result.converged = true;
      break;
    }
  }
  result.f_star = f;
  result.critical_residual = critical_residual(g, f, cfg).residual;
  return result;
}

CriticalCertificate critical_residual(const WeightedGraph& g, std::span<const double> f,
                                      const DescentConfig& cfg) {
  const StepResult s = step(g, f, cfg);
  CriticalCertificate cert;
  cert.residual = s.record.increment;
  cert.energy = s.record.energy;
  cert.v = s.v;
  cert.w.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    cert.w[i] = cert.energy * (s.g_shift[i] - s.h[i]) / cfg.c;
  return cert;
}

Signal init_random(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::invalid_parameter, "random init needs n >= 2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Signal f(n);
  for (;;) {
    for (double& x : f) x = normal(rng);
    f = project_mean_zero(f);
    const double nf = norm2(f);
    if (nf > 0.0) {
      for (double& x : f) x /= nf;
      return f;
    }
  }
}

namespace {

void apply_laplacian(const WeightedGraph& g, std::span<const double> x, std::span<double> y) {
  for (Vertex i = 0; i < g.num_vertices(); ++i) {
    double acc = 0.0;
    for (const auto& nb : g.neighbors(i)) acc += nb.weight * (x[i] - x[nb.vertex]);
    y[i] = acc;
  }
}

void remove_mean(std::span<double> x) {
  const double m = mean(x);
  for (double& v : x) v -= m;
}

// Conjugate gradients for L y = b on the mean-zero subspace (b mean-zero).
void solve_laplacian(const WeightedGraph& g, std::span<const double> b, std::span<double> y,
                     double rel_tol, std::size_t max_iter) {
  const std::size_t n = b.size();
  std::fill(y.begin(), y.end(), 0.0);
  Signal r(b.begin(), b.end()), p = r, lp(n);
  double rr = dot(r, r);
  const double stop = rel_tol * rel_tol * rr;
  for (std::size_t it = 0; it < max_iter && rr > stop; ++it) {
    apply_laplacian(g, p, lp);
    const double alpha = rr / dot(p, lp);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] += alpha * p[i];
      r[i] -= alpha * lp[i];
    }
    remove_mean(r);
    const double rr_next = dot(r, r);
    const double beta = rr_next / rr;
    rr = rr_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
  }
  remove_mean(y);
}

}  // namespace

Signal init_spectral(const WeightedGraph& g) {
  const std::size_t n = g.num_vertices();
  if (n < 2) throw Error(ErrorCode::invalid_parameter, "spectral init needs n >= 2");
  if (!is_connected(g))
    throw Error(ErrorCode::disconnected_graph, "spectral init requires a connected graph");

  Signal x = init_random(n, 0x9e3779b97f4a7c15ULL);
  Signal y(n), lx(n);
  const double scale = std::max(2.0 * g.max_degree(), 1e-300);
  constexpr std::size_t max_outer = 1000;
  for (std::size_t it = 0; it < max_outer; ++it) {
    solve_laplacian(g, x, y, 1e-13, 20 * n + 100);
    const double ny = norm2(y);
    if (!(ny > 0.0) || !std::isfinite(ny))
      throw Error(ErrorCode::numerical_failure, "inverse iteration breakdown");
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ny;

    apply_laplacian(g, x, lx);
    const double rho = dot(x, lx);
    for (std::size_t i = 0; i < n; ++i) lx[i] -= rho * x[i];
    if (norm2(lx) <= 1e-12 * scale) {
      std::size_t imax = 0;
      for (std::size_t i = 1; i < n; ++i)
        if (std::abs(x[i]) > std::abs(x[imax])) imax = i;
      if (x[imax] < 0.0)
        for (double& v : x) v = -v;
      return x;
    }
  }
  throw Error(ErrorCode::numerical_failure, "Fiedler vector iteration did not converge");
}

void write_trace_csv(std::ostream& out, std::span<const IterateRecord> trace) {
  out << "k,energy,increment,prox_gap,descent_slack\n";
  for (const auto& r : trace) {
    out << r.k << ',' << detail::format_real(r.energy) << ',' << detail::format_real(r.increment)
        << ',' << detail::format_real(r.prox_gap) << ',' << detail::format_real(r.descent_slack)
        << '\n';
  }
}

}  // namespace ratiocut
