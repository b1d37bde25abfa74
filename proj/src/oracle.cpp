#include "ratiocut/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace ratiocut::oracle {

Signal prox_by_subgradient(const WeightedGraph& g, std::span<const double> target,
                           double mu, std::size_t iterations) {
  const std::size_t n = g.num_vertices();
  Signal u(target.begin(), target.end());
  Signal s(n), avg(n, 0.0);
  const std::size_t tail = iterations / 2;
  std::size_t averaged = 0;
  for (std::size_t k = 0; k < iterations; ++k) {
    for (std::size_t i = 0; i < n; ++i) s[i] = mu * (u[i] - target[i]);
    for (const auto& e : g.edges()) {
      const double d = u[e.u] - u[e.v];
      const double sg = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
      s[e.u] += e.weight * sg;
      s[e.v] -= e.weight * sg;
    }
    const double eta = 1.0 / (mu * static_cast<double>(k + 1));
    for (std::size_t i = 0; i < n; ++i) u[i] -= eta * s[i];
    if (k >= tail) {
      ++averaged;
      for (std::size_t i = 0; i < n; ++i) avg[i] += (u[i] - avg[i]) / static_cast<double>(averaged);
    }
  }
  return averaged ? avg : u;
}

Signal prox_two_vertex(double w, double g0, double g1, double mu) {
  const double shrink = std::min(w / mu, std::abs(g0 - g1) / 2.0);
  const double dir = g0 > g1 ? 1.0 : (g0 < g1 ? -1.0 : 0.0);
  return {g0 - dir * shrink, g1 + dir * shrink};
}

}  // namespace ratiocut::oracle
