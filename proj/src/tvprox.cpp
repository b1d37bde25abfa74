#include "ratiocut/tvprox.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ratiocut/error.hpp"

namespace ratiocut {

double operator_norm_bound(const WeightedGraph& g) {
  return std::sqrt(2.0 * g.max_degree());
}

namespace {

// out = D^T p, (D^T p)_i = sum_{e=(i,.)} p_e - sum_{e=(.,i)} p_e
void apply_adjoint(const WeightedGraph& g, std::span<const double> p,
                   std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  const auto& edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    out[edges[e].u] += p[e];
    out[edges[e].v] -= p[e];
  }
}

struct GapEval {
  double primal;
  double dual;
};

// Primal objective at u and dual objective at p (p feasible), given
// dtp = D^T p.
GapEval evaluate(const WeightedGraph& g, std::span<const double> target,
                 double mu, std::span<const double> u,
                 std::span<const double> dtp) {
  const double tv = total_variation(g, u);
  double fit = 0.0, lin = 0.0, quad = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double r = u[i] - target[i];
    fit += r * r;
    lin += dtp[i] * target[i];
    quad += dtp[i] * dtp[i];
  }
  return {tv + 0.5 * mu * fit, lin - quad / (2.0 * mu)};
}

// Fully fused candidate: u constant on each connected component, equal to
// the component mean of the target. It is optimal iff some dual p with
// |p_e| <= w_e satisfies D^T p = mu (g - u). We try the unique such flow
// on a maximum-weight spanning forest; success certifies the candidate
// exactly, failure says nothing and the caller falls back to iterating.
bool try_fully_fused(const WeightedGraph& graph, std::span<const double> g, double mu,
                     ProxSolution& sol) {
  const std::size_t n = graph.num_vertices();
  const auto& edges = graph.edges();

  std::vector<std::size_t> order(edges.size());
  for (std::size_t e = 0; e < order.size(); ++e) order[e] = e;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return edges[a].weight > edges[b].weight; });
  std::vector<std::size_t> root(n);
  for (std::size_t i = 0; i < n; ++i) root[i] = i;
  auto find = [&](std::size_t x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  std::vector<std::vector<std::size_t>> tree(n);  // incident forest edges
  for (std::size_t e : order) {
    if (!(edges[e].weight > 0.0)) break;
    const auto a = find(edges[e].u), b = find(edges[e].v);
    if (a == b) continue;
    root[a] = b;
    tree[edges[e].u].push_back(e);
    tree[edges[e].v].push_back(e);
  }

  // Component means, then post-order accumulation of subtree excess.
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> parent_edge(n, edges.size()), visit;
  std::vector<double> fused(n), excess(n);
  std::vector<double> p(edges.size(), 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    visit.assign(1, s);
    seen[s] = 1;
    for (std::size_t head = 0; head < visit.size(); ++head) {
      const std::size_t i = visit[head];
      for (std::size_t e : tree[i]) {
        const std::size_t j = edges[e].u == i ? edges[e].v : edges[e].u;
        if (seen[j]) continue;
        seen[j] = 1;
        parent_edge[j] = e;
        visit.push_back(j);
      }
    }
    double sum = 0.0;
    for (std::size_t i : visit) sum += g[i];
    const double avg = sum / static_cast<double>(visit.size());
    for (std::size_t i : visit) {
      fused[i] = avg;
      excess[i] = mu * (g[i] - avg);
    }
    for (auto it = visit.rbegin(); it != visit.rend(); ++it) {
      const std::size_t i = *it;
      const std::size_t e = parent_edge[i];
      if (e == edges.size()) continue;
      if (std::abs(excess[i]) > edges[e].weight) return false;
      p[e] = edges[e].u == i ? excess[i] : -excess[i];
      const std::size_t parent = edges[e].u == i ? edges[e].v : edges[e].u;
      excess[parent] += excess[i];
    }
  }

  std::vector<double> dtp(n);
  apply_adjoint(graph, p, dtp);
  const GapEval ev = evaluate(graph, g, mu, fused, dtp);
  sol.h = std::move(fused);
  sol.dual = std::move(p);
  sol.primal_objective = ev.primal;
  sol.dual_objective = ev.dual;
  sol.gap = std::max(0.0, ev.primal - ev.dual);
  sol.iterations = 0;
  return true;
}

}  // namespace

ProxSolution solve_prox(const WeightedGraph& graph, const ProxProblem& problem,
                        const ProxOptions& opts) {
  const std::size_t n = graph.num_vertices();
  const std::size_t m = graph.num_edges();
  const auto& edges = graph.edges();
  const auto g = problem.g;
  if (g.size() != n) throw Error(ErrorCode::length_mismatch, "prox target length does not match graph");
  if (!(problem.lambda > 0.0) || !(problem.c > 0.0) || !std::isfinite(problem.lambda) ||
      !std::isfinite(problem.c))
    throw Error(ErrorCode::invalid_parameter, "prox requires lambda > 0 and c > 0");
  if (!(opts.tol > 0.0)) throw Error(ErrorCode::invalid_parameter, "prox tolerance must be positive");
  for (double x : g)
    if (!std::isfinite(x)) throw Error(ErrorCode::numerical_failure, "non-finite prox target");

  const double mu = problem.lambda / problem.c;

  ProxSolution sol;
  sol.dual.assign(m, 0.0);
  if (opts.warm_dual.size() == m) {
    for (std::size_t e = 0; e < m; ++e)
      sol.dual[e] = std::clamp(opts.warm_dual[e], -edges[e].weight, edges[e].weight);
  }

  const double norm = operator_norm_bound(graph);
  if (norm == 0.0) {
    sol.h.assign(g.begin(), g.end());
    sol.converged = true;
    return sol;
  }

  {
    ProxSolution fused;
    if (try_fully_fused(graph, g, mu, fused)) {
      fused.converged = fused.gap <= opts.tol * (1.0 + std::abs(fused.primal_objective));
      if (fused.converged) return fused;
    }
  }

  auto& p = sol.dual;
  std::vector<double> dtp(n), u(n), u_prev(n), u_bar(n), u_dual(n);
  apply_adjoint(graph, p, dtp);
  for (std::size_t i = 0; i < n; ++i) u[i] = g[i] - dtp[i] / mu;
  u_bar = u;

  double tau = 0.99 / norm;
  double sigma = 0.99 / norm;

  auto certify = [&](std::size_t iter) {
    // dtp holds D^T p for the current p.
    for (std::size_t i = 0; i < n; ++i) u_dual[i] = g[i] - dtp[i] / mu;
    const GapEval a = evaluate(graph, g, mu, u, dtp);
    const GapEval b = evaluate(graph, g, mu, u_dual, dtp);
    const bool use_dual = b.primal <= a.primal;
    const double primal = use_dual ? b.primal : a.primal;
    if (!std::isfinite(primal) || !std::isfinite(a.dual))
      throw Error(ErrorCode::numerical_failure,
                  "non-finite objective in prox solve after " + std::to_string(iter) + " iterations");
    sol.primal_objective = primal;
    sol.dual_objective = a.dual;
    sol.gap = std::max(0.0, primal - a.dual);
    sol.iterations = iter;
    sol.converged = sol.gap <= opts.tol * (1.0 + std::abs(primal));
    return use_dual;
  };

  constexpr std::size_t check_every = 10;
  bool use_dual = certify(0);
  std::size_t iter = 0;
  while (!sol.converged && iter < opts.max_iter) {
    ++iter;
    for (std::size_t e = 0; e < m; ++e) {
      const double w = edges[e].weight;
      const double step = p[e] + sigma * w * (u_bar[edges[e].u] - u_bar[edges[e].v]);
      p[e] = std::clamp(step, -w, w);
    }
    apply_adjoint(graph, p, dtp);
    u_prev = u;
    const double denom = 1.0 + tau * mu;
    for (std::size_t i = 0; i < n; ++i) u[i] = (u[i] - tau * dtp[i] + tau * mu * g[i]) / denom;

    double theta = 1.0;
    if (opts.accelerate) {
      theta = 1.0 / std::sqrt(1.0 + 2.0 * mu * tau);
      tau *= theta;
      sigma /= theta;
    }
    for (std::size_t i = 0; i < n; ++i) u_bar[i] = u[i] + theta * (u[i] - u_prev[i]);

    if (iter % check_every == 0 || iter == opts.max_iter) use_dual = certify(iter);
  }

  sol.h = use_dual ? u_dual : u;
  return sol;
}

}  // namespace ratiocut
