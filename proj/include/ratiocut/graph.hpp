#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <span>
#include <vector>

namespace ratiocut {

using Vertex = std::size_t;

// n points of common dimension d, stored row-major.
class PointCloud {
public:
  PointCloud() = default;
  PointCloud(std::size_t n, std::size_t dim, std::vector<double> coords);

  std::size_t size() const noexcept { return n_; }
  std::size_t dim() const noexcept { return dim_; }
  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  const std::vector<double>& coords() const noexcept { return coords_; }

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

private:
  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

struct Edge {
  Vertex u;  // u < v
  Vertex v;
  double weight;
};

struct Neighbor {
  Vertex vertex;
  double weight;
  std::size_t edge;  // index into WeightedGraph::edges()
};

// Undirected graph with nonnegative weights. Each edge is stored once with
// u < v and is visible from both endpoints through the adjacency lists.
class WeightedGraph {
public:
  WeightedGraph() = default;

  // Throws on self-loops, negative or non-finite weights, out-of-range
  // vertices and repeated pairs with different weights. Repeated pairs with
  // equal weights are merged.
  WeightedGraph(std::size_t n, std::vector<Edge> edges);

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::span<const Neighbor> neighbors(Vertex i) const {
    return {adjacency_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }

  double degree(Vertex i) const;
  double max_degree() const;

  // Weight of edge (i, j), 0 when absent. O(deg(i)).
  double weight(Vertex i, Vertex j) const;

private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
};

struct KnnParams {
  std::size_t k = 10;
  std::size_t self_tune_m = 7;
  double universal_scale = 1.0;
};

// Self-tuning k-nearest-neighbor graph:
//   w_ij = exp(-|x_i - x_j|^2 / (s * sigma_i * sigma_j)),
// sigma_i the distance from x_i to its m-th nearest neighbor. The directed
// kNN relation is symmetrized by union. Neighbors never include the point
// itself; equidistant candidates are ordered by index.
WeightedGraph knn_graph(const PointCloud& cloud, const KnnParams& params);

// Connectivity over edges of strictly positive weight.
bool is_connected(const WeightedGraph& g);
std::size_t count_components(const WeightedGraph& g);

// Random spanning tree plus independent extra edges with probability
// extra_edge_prob; weights uniform in [min_weight, 1]. Always connected.
WeightedGraph random_connected_graph(std::size_t n, double extra_edge_prob,
                                     std::uint64_t seed, double min_weight = 0.1);

// Edge-list text: first line n, then "i j w" per line, 0-based.
WeightedGraph load_edge_list(std::istream& in);

}  // namespace ratiocut
