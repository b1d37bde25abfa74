#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ratiocut/functional.hpp"
#include "ratiocut/graph.hpp"

namespace ratiocut {

struct DescentConfig {
  double c = 0.25;
  double outer_tol = 1e-6;  // on |f^{k+1} - f^k|_2
  std::size_t max_outer_iter = 1000;
  double inner_tol = 1e-8;
  std::size_t inner_max_iter = 200000;
  bool accelerate_inner = false;
#ifdef NDEBUG
  bool check_lemmas = false;
#else
  bool check_lemmas = true;
#endif
  std::uint64_t seed = 0;
};

void validate(const DescentConfig& cfg);

struct IterateRecord {
  std::size_t k = 0;
  double energy = 0.0;         // E(f^k)
  double increment = 0.0;      // |f^{k+1} - f^k|_2
  double prox_gap = 0.0;
  double descent_slack = 0.0;  // E(f) - E(h) - E(f)/B(h) |h - f|^2 / c
  std::size_t inner_iterations = 0;
};

// Quantities of one step that the convergence argument makes claims about.
struct StepDiagnostics {
  double mean_g = 0.0;
  double mean_h = 0.0;
  double mean_f_next = 0.0;
  double norm_f_next = 0.0;
  double norm_f = 0.0;
  double norm_g = 0.0;
  double norm_h = 0.0;
  double norm_v = 0.0;
  double balance_f = 0.0;
  double balance_h = 0.0;
  double energy_next = 0.0;
  // |g|^2 - (|f|^2 + 2 c B(f) + c^2 |v|^2)
  double norm_identity_error = 0.0;
  // Certified distance from h to the exact prox, sqrt(2 gap / mu).
  double prox_error_bound = 0.0;
};

struct StepResult {
  Signal v;        // element of dB(f)
  Signal g_shift;  // f + c v
  Signal h;        // prox of g_shift
  Signal f_next;   // h / |h|_2
  IterateRecord record;
  StepDiagnostics diag;
  std::vector<double> dual;  // inner dual, reusable as a warm start
  bool prox_converged = true;
};

// One explicit-implicit step. f must be mean-zero with unit norm. A signal of
// zero energy (constant on every connected component) is a global minimizer
// and is returned unchanged.
StepResult step(const WeightedGraph& g, std::span<const double> f,
                const DescentConfig& cfg,
                std::span<const double> warm_dual = {});

struct LemmaViolation {
  std::size_t k;
  std::string check;
  double value;  // amount by which the check failed
};

// Evaluates the per-step runtime checks (mean conservation, norm identity,
// nonexpansiveness, descent inequality, energy decrease).
std::vector<LemmaViolation> check_step(const StepResult& s, const DescentConfig& cfg);

struct DescentResult {
  Signal f_star;  // unit norm, mean zero
  std::vector<IterateRecord> trace;
  std::vector<LemmaViolation> violations;  // filled when check_lemmas is set
  bool converged = false;
  bool inner_converged = true;  // every prox solve met inner_tol
  double critical_residual = 0.0;
};

using StepObserver = std::function<void(const StepResult&)>;

// Iterates step() until the increment drops below outer_tol or
// max_outer_iter is hit. f0 is projected to mean zero and normalized first.
// observe, when set, sees every step before the next one starts.
DescentResult run(const WeightedGraph& g, std::span<const double> f0,
                  const DescentConfig& cfg, const StepObserver& observe = {});

struct CriticalCertificate {
  double residual = 0.0;  // |f_next - f|_2 after one step
  double energy = 0.0;
  // w = E(f) (g_shift - h) / c, an element of dT(h).
  Signal w;
  Signal v;
};

CriticalCertificate critical_residual(const WeightedGraph& g,
                                      std::span<const double> f,
                                      const DescentConfig& cfg);

// i.i.d. standard normal entries, projected to mean zero, unit norm.
Signal init_random(std::size_t n, std::uint64_t seed);

// Fiedler vector of L = D - W by inverse iteration on the mean-zero
// subspace; unit norm, largest-magnitude entry positive.
Signal init_spectral(const WeightedGraph& g);

// CSV with header "k,energy,increment,prox_gap,descent_slack".
void write_trace_csv(std::ostream& out, std::span<const IterateRecord> trace);

}  // namespace ratiocut
