#include "ratiocut/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "ratiocut/error.hpp"
#include "text_scan.hpp"

namespace ratiocut {

PointCloud::PointCloud(std::size_t n, std::size_t dim,
                       std::vector<double> coords)
    : n_(n), dim_(dim), coords_(std::move(coords)) {
  if (n < 2) throw Error(ErrorCode::invalid_parameter, "point cloud needs at least 2 points");
  if (dim < 1) throw Error(ErrorCode::invalid_parameter, "point dimension must be at least 1");
  if (coords_.size() != n * dim)
    throw Error(ErrorCode::length_mismatch, "coordinate count does not match n * dim");
  for (double x : coords_)
    if (!std::isfinite(x))
      throw Error(ErrorCode::invalid_parameter, "non-finite coordinate");
}

WeightedGraph::WeightedGraph(std::size_t n, std::vector<Edge> edges) : n_(n) {
  for (auto& e : edges) {
    if (e.u >= n || e.v >= n)
      throw Error(ErrorCode::invalid_parameter,
                  "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                      ") out of range for n = " + std::to_string(n));
    if (e.u == e.v)
      throw Error(ErrorCode::self_loop, "self-loop at vertex " + std::to_string(e.u));
    if (!std::isfinite(e.weight))
      throw Error(ErrorCode::invalid_parameter, "non-finite edge weight");
    if (e.weight < 0.0)
      throw Error(ErrorCode::negative_weight,
                  "negative weight on edge (" + std::to_string(e.u) + ", " +
                      std::to_string(e.v) + ")");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (const auto& e : edges) {
    if (!edges_.empty() && edges_.back().u == e.u && edges_.back().v == e.v) {
      if (edges_.back().weight != e.weight)
        throw Error(ErrorCode::conflicting_edge,
                    "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                        ") listed with conflicting weights");
      continue;
    }
    edges_.push_back(e);
  }

  std::vector<std::size_t> count(n + 1, 0);
  for (const auto& e : edges_) {
    ++count[e.u + 1];
    ++count[e.v + 1];
  }
  offsets_.assign(n + 1, 0);
  std::partial_sum(count.begin(), count.end(), offsets_.begin());
  adjacency_.resize(2 * edges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const auto& e = edges_[k];
    adjacency_[fill[e.u]++] = {e.v, e.weight, k};
    adjacency_[fill[e.v]++] = {e.u, e.weight, k};
  }
}

double WeightedGraph::degree(Vertex i) const {
  double d = 0.0;
  for (const auto& nb : neighbors(i)) d += nb.weight;
  return d;
}

double WeightedGraph::max_degree() const {
  double best = 0.0;
  for (Vertex i = 0; i < n_; ++i) best = std::max(best, degree(i));
  return best;
}

double WeightedGraph::weight(Vertex i, Vertex j) const {
  for (const auto& nb : neighbors(i))
    if (nb.vertex == j) return nb.weight;
  return 0.0;
}

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    const double d = a[t] - b[t];
    s += d * d;
  }
  return s;
}

}  // namespace

WeightedGraph knn_graph(const PointCloud& cloud, const KnnParams& params) {
  const std::size_t n = cloud.size();
  if (params.k == 0 || params.k >= n)
    throw Error(ErrorCode::invalid_parameter,
                "k must satisfy 1 <= k < n (k = " + std::to_string(params.k) +
                    ", n = " + std::to_string(n) + ")");
  if (params.self_tune_m == 0 || params.self_tune_m > params.k)
    throw Error(ErrorCode::invalid_parameter, "self-tune neighbor must satisfy 1 <= m <= k");
  if (!(params.universal_scale > 0.0) || !std::isfinite(params.universal_scale))
    throw Error(ErrorCode::invalid_parameter, "universal scale must be positive");

  // Nearest neighbors of every point, ordered by (distance, index).
  std::vector<std::vector<std::pair<double, Vertex>>> knn(n);
  std::vector<double> sigma(n);
  std::vector<std::pair<double, Vertex>> cand;
  cand.reserve(n - 1);
  for (Vertex i = 0; i < n; ++i) {
    cand.clear();
    for (Vertex j = 0; j < n; ++j)
      if (j != i) cand.emplace_back(squared_distance(cloud.point(i), cloud.point(j)), j);
    std::partial_sort(cand.begin(), cand.begin() + params.k, cand.end());
    knn[i].assign(cand.begin(), cand.begin() + params.k);
    if (knn[i].front().first == 0.0)
      throw Error(ErrorCode::degenerate_scale,
                  "point " + std::to_string(i) + " coincides with point " +
                      std::to_string(knn[i].front().second));
    sigma[i] = std::sqrt(knn[i][params.self_tune_m - 1].first);
  }

  std::vector<Edge> edges;
  edges.reserve(n * params.k);
  for (Vertex i = 0; i < n; ++i) {
    for (const auto& [d2, j] : knn[i]) {
      const double w = std::exp(-d2 / (params.universal_scale * sigma[i] * sigma[j]));
      edges.push_back({std::min(i, j), std::max(i, j), w});
    }
  }
  // A pair selected from both ends appears twice with the same weight; the
  // graph constructor merges it.
  return WeightedGraph(n, std::move(edges));
}

std::size_t count_components(const WeightedGraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<char> seen(n, 0);
  std::vector<Vertex> queue;
  std::size_t components = 0;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++components;
    seen[s] = 1;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (const auto& nb : g.neighbors(queue[head])) {
        if (nb.weight > 0.0 && !seen[nb.vertex]) {
          seen[nb.vertex] = 1;
          queue.push_back(nb.vertex);
        }
      }
    }
  }
  return components;
}

bool is_connected(const WeightedGraph& g) { return count_components(g) <= 1; }

WeightedGraph random_connected_graph(std::size_t n, double extra_edge_prob,
                                     std::uint64_t seed, double min_weight) {
  if (n < 2) throw Error(ErrorCode::invalid_parameter, "random graph needs n >= 2");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(min_weight, 1.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<char> adjacent(n * n, 0);
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) {
    const Vertex u = std::uniform_int_distribution<Vertex>(0, v - 1)(rng);
    adjacent[u * n + v] = 1;
    edges.push_back({u, v, weight(rng)});
  }
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (!adjacent[u * n + v] && coin(rng) < extra_edge_prob) edges.push_back({u, v, weight(rng)});
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph load_edge_list(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::is_blank(line)) continue;
    const auto fields = detail::split_fields(line, " \t\r");
    if (!n) {
      if (fields.size() != 1) throw ParseError(lineno, "expected vertex count");
      n = detail::parse_number<std::size_t>(fields[0]);
      if (!n) throw ParseError(lineno, "invalid vertex count '" + std::string(fields[0]) + "'");
      continue;
    }
    if (fields.size() != 3) throw ParseError(lineno, "expected 'i j w'");
    const auto i = detail::parse_number<std::size_t>(fields[0]);
    const auto j = detail::parse_number<std::size_t>(fields[1]);
    const auto w = detail::parse_number<double>(fields[2]);
    if (!i || !j) throw ParseError(lineno, "invalid vertex index");
    if (!w) throw ParseError(lineno, "invalid weight '" + std::string(fields[2]) + "'");
    if (*i >= *n || *j >= *n) throw ParseError(lineno, "vertex index out of range");
    if (*i == *j)
      throw Error(ErrorCode::self_loop,
                  "line " + std::to_string(lineno) + ": self-loop at vertex " + std::to_string(*i));
    if (*w < 0.0)
      throw Error(ErrorCode::negative_weight,
                  "line " + std::to_string(lineno) + ": negative weight " + std::string(fields[2]));
    edges.push_back({*i, *j, *w});
  }
  if (!n) throw ParseError(lineno, "missing vertex count");
  return WeightedGraph(*n, std::move(edges));
}

}  // namespace ratiocut
