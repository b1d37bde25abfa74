#pragma once

// Reference solvers used to cross-check the production code paths. They
// share nothing with the primal-dual prox beyond the graph type.

#include <cstddef>
#include <span>

#include "ratiocut/functional.hpp"
#include "ratiocut/graph.hpp"

namespace ratiocut::oracle {

// Subgradient method on T(u) + mu/2 |u - g|^2 with steps 1/(mu (k + 1)),
// returning the average of the second half of the iterates.
Signal prox_by_subgradient(const WeightedGraph& g, std::span<const double> target,
                           double mu, std::size_t iterations = 1000000);

// Closed form for a single edge of weight w: the two values move toward each
// other by min(w / mu, |g0 - g1| / 2).
Signal prox_two_vertex(double w, double g0, double g1, double mu);

}  // namespace ratiocut::oracle
