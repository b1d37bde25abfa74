#include "ratiocut/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "ratiocut/descent.hpp"
#include "ratiocut/error.hpp"
#include "ratiocut/oracle.hpp"
#include "ratiocut/ratio_cut.hpp"
#include "ratiocut/tvprox.hpp"

namespace ratiocut {

namespace {

std::string describe(const char* what, double value) {
  std::ostringstream os;
  os << what << ' ' << value;
  return os.str();
}

std::size_t graph_size(std::size_t seed, std::size_t n_max) {
  return 3 + seed % (n_max - 2);
}

CheckOutcome check_tightness(const VerifyOptions& opts) {
  double worst = 0.0;
  bool ok = true;
  for (std::size_t s = 0; s < opts.seeds; ++s) {
    const auto g = random_connected_graph(graph_size(s, opts.n_max), 0.4, 1000 + s);
    const auto r = verify_tightness(g);
    ok = ok && r.tight;
    worst = std::max({worst, r.max_identity_error,
                      std::abs(r.min_embedding_energy - r.min_ratio_cut / 2.0)});
  }
  return {"tight_relaxation", ok, describe("max error", worst)};
}

CheckOutcome check_norm_identity(const VerifyOptions& opts) {
  DescentConfig cfg;
  cfg.c = opts.c;
  cfg.inner_tol = opts.inner_tol;
  double worst = 0.0;
  bool ok = true;
  for (std::size_t s = 0; s < opts.seeds; ++s) {
    const auto g = random_connected_graph(graph_size(s, opts.n_max), 0.4, 2000 + s);
    for (std::uint64_t t = 0; t < 10; ++t) {
      const auto f = init_random(g.num_vertices(), 100 * s + t);
      const auto step_result = step(g, f, cfg);
      const auto& d = step_result.diag;
      const double rel = std::abs(d.norm_identity_error) / (d.norm_g * d.norm_g);
      worst = std::max(worst, rel);
      ok = ok && rel <= 1e-10;
    }
  }
  return {"norm_identity", ok, describe("max relative error", worst)};
}

struct RunChecks {
  CheckOutcome descent{"descent_inequality", true, {}};
  CheckOutcome conservation{"mean_and_sphere", true, {}};
};

RunChecks check_runs(const VerifyOptions& opts) {
  DescentConfig cfg;
  cfg.c = opts.c;
  cfg.inner_tol = opts.inner_tol;
  cfg.check_lemmas = true;
  cfg.max_outer_iter = 200;
  RunChecks out;
  double worst_slack = 0.0;
  std::size_t violations = 0;
  std::size_t conservation_failures = 0;
  for (std::size_t s = 0; s < opts.seeds; ++s) {
        // Descent runs are not enumeration-bound, so they use larger graphs.
    const auto g = random_connected_graph(3 + (7 * s) % 28, 0.3, 3000 + s);
    const auto r = run(g, init_random(g.num_vertices(), s), cfg);
    for (std::size_t k = 0; k < r.trace.size(); ++k) {
      const auto& rec = r.trace[k];
      worst_slack = std::min(worst_slack, rec.descent_slack);
      if (rec.descent_slack < -opts.descent_slack) ++violations;
      if (k + 1 < r.trace.size() && r.trace[k + 1].energy > rec.energy + opts.descent_slack)
        ++violations;
    }
    for (const auto& v : r.violations)
      if (v.check.starts_with("mean") || v.check == "unit_norm") ++conservation_failures;
  }
  out.descent.passed = violations == 0;
  out.descent.detail = describe("violations", static_cast<double>(violations)) + ", " +
                       describe("most negative slack", worst_slack);
  out.conservation.passed = conservation_failures == 0;
  out.conservation.detail = describe("violations", static_cast<double>(conservation_failures));
  return out;
}

CheckOutcome check_prox_oracle(const VerifyOptions& opts) {
  std::mt19937_64 rng(4000);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> positive(0.2, 4.0);
  double worst = 0.0;
  bool ok = true;
  for (std::size_t s = 0; s < opts.seeds; ++s) {
    const std::size_t n = 2 + s % 2;
    const auto g = random_connected_graph(n, 1.0, 4000 + s);
    Signal target(n);
    for (double& x : target) x = unit(rng);
    const double mu = positive(rng);
    ProxOptions po;
    po.tol = opts.inner_tol;
    const auto sol = solve_prox(g, {target, mu, 1.0}, po);
    const auto ref = oracle::prox_by_subgradient(g, target, mu);
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(sol.h[i] - ref[i]));
    ok = ok && sol.converged;
  }
  ok = ok && worst <= 1e-4;
  return {"prox_vs_subgradient", ok, describe("max abs error", worst)};
}

CheckOutcome check_prox_closed_form(const VerifyOptions& opts) {
  const WeightedGraph g(2, {{0, 1, 1.0}});
  const Signal target{1.0, -1.0};
  ProxOptions po;
  po.tol = opts.inner_tol;
  const auto sol = solve_prox(g, {target, 1.0, 1.0}, po);
  const auto ref = oracle::prox_two_vertex(1.0, 1.0, -1.0, 1.0);
  const double err = std::max(std::abs(sol.h[0] - ref[0]), std::abs(sol.h[1] - ref[1]));
  return {"prox_closed_form", sol.converged && err <= std::sqrt(opts.inner_tol),
          describe("max abs error", err)};
}

}  // namespace

std::vector<CheckOutcome> run_verification(const VerifyOptions& opts) {
  if (opts.n_max < 3 || opts.n_max > tightness_max_n)
    throw Error(ErrorCode::invalid_parameter, "n-max must lie in [3, 12]");
  if (opts.seeds == 0) throw Error(ErrorCode::invalid_parameter, "need at least one seed");
  std::vector<CheckOutcome> out;
  out.push_back(check_tightness(opts));
  out.push_back(check_norm_identity(opts));
  auto runs = check_runs(opts);
  out.push_back(std::move(runs.descent));
  out.push_back(std::move(runs.conservation));
  out.push_back(check_prox_oracle(opts));
  out.push_back(check_prox_closed_form(opts));
  return out;
}

}  // namespace ratiocut
