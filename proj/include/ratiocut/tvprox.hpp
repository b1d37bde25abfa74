#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ratiocut/functional.hpp"
#include "ratiocut/graph.hpp"

namespace ratiocut {

// h = argmin_u  T(u) + lambda / (2 c) |u - g|^2
struct ProxProblem {
  std::span<const double> g;
  double lambda = 1.0;
  double c = 0.25;
};

struct ProxOptions {
  double tol = 1e-8;
  std::size_t max_iter = 200000;
  // Strongly-convex step adaptation (O(1/k^2) gap decay). Off by default so
  // results follow the plain iteration.
  bool accelerate = false;
  // Dual variable from an earlier solve on the same graph; clipped to the
  // feasible box before use. Ignored when its size does not match.
  std::span<const double> warm_dual = {};
};

struct ProxSolution {
  Signal h;
  // One dual value per edge of the graph, |dual[e]| <= w_e, such that
  // T(u) = max_p <p, Du> with (Du)_e = u_i - u_j.
  std::vector<double> dual;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double gap = 0.0;           // primal minus dual objective, >= 0
  std::size_t iterations = 0;
  bool converged = false;     // gap <= tol * (1 + |primal_objective|)
};

// Upper bound on |K| for the weighted incidence operator
// (Ku)_e = sqrt(w_e) (u_i - u_j), from |K|^2 <= 2 max_i sum_j w_ij.
double operator_norm_bound(const WeightedGraph& g);

// First-order primal-dual iteration with dual projection onto
// [-w_e, w_e]. Stops once the normalized gap drops below opts.tol; reaching
// max_iter returns the best iterate with converged = false. Throws
// numerical_failure on non-finite iterates.
ProxSolution solve_prox(const WeightedGraph& graph, const ProxProblem& problem,
                        const ProxOptions& opts = {});

}  // namespace ratiocut
