#include "ratiocut/ratio_cut.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "ratiocut/error.hpp"
#include "text_scan.hpp"

namespace ratiocut {

Partition::Partition(std::vector<std::uint8_t> labels) : labels_(std::move(labels)) {
  for (auto& l : labels_) {
    if (l > 1) throw Error(ErrorCode::invalid_partition, "labels must be 0 or 1");
    size_s_ += l;
  }
  if (size_s_ == 0 || size_s_ == labels_.size())
    throw Error(ErrorCode::invalid_partition, "S must be a proper nonempty subset");
}

Partition Partition::complement() const {
  std::vector<std::uint8_t> flipped(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) flipped[i] = labels_[i] ? 0 : 1;
  return Partition(std::move(flipped));
}

double cut_weight(const WeightedGraph& g, const Partition& p) {
  if (p.size() != g.num_vertices())
    throw Error(ErrorCode::length_mismatch, "partition size does not match graph size");
  double cut = 0.0;
  for (const auto& e : g.edges())
    if (p.in_s(e.u) != p.in_s(e.v)) cut += e.weight;
  return cut;
}

namespace {

double ratio_of(double cut, std::size_t s, std::size_t n) {
  return cut * (1.0 / static_cast<double>(s) + 1.0 / static_cast<double>(n - s));
}

// Balance preference: larger min(|S|, |S^c|).
std::size_t smaller_side(std::size_t s, std::size_t n) { return std::min(s, n - s); }

bool better(double value, std::size_t s, double best_value, std::size_t best_s, std::size_t n) {
  const double tie = 1e-12 * std::max(std::abs(value), std::abs(best_value));
  if (value < best_value - tie) return true;
  if (value > best_value + tie) return false;
  return smaller_side(s, n) > smaller_side(best_s, n);
}

}  // namespace

double ratio_cut_value(const WeightedGraph& g, const Partition& p) {
  if (p.size_s() == 0 || p.size_s() == p.size())
    throw Error(ErrorCode::invalid_partition, "RatioCut needs a proper nonempty subset");
  return ratio_of(cut_weight(g, p), p.size_s(), p.size());
}

Signal binary_embedding(const Partition& p, double scale) {
  if (scale == 0.0 || !std::isfinite(scale))
    throw Error(ErrorCode::invalid_parameter, "embedding scale must be nonzero and finite");
  if (p.size_s() == 0 || p.size_s() == p.size())
    throw Error(ErrorCode::invalid_partition, "embedding needs a proper nonempty subset");
  const auto in_s = static_cast<double>(p.size_s());
  const auto out_s = static_cast<double>(p.size() - p.size_s());
  Signal f(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) f[i] = scale * (p.in_s(i) ? out_s : -in_s);
  return f;
}

Partition threshold_cluster(std::span<const double> f) {
  const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
  if (f.empty() || *lo == *hi)
    throw Error(ErrorCode::invalid_partition, "cannot threshold a constant signal");
  const double m = mean(f);
  std::vector<std::uint8_t> labels(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) labels[i] = f[i] > m ? 1 : 0;
  // Rounding in m can only matter when every entry sits on one side of it.
  if (std::all_of(labels.begin(), labels.end(), [&](auto l) { return l == labels[0]; }))
    for (std::size_t i = 0; i < f.size(); ++i) labels[i] = f[i] == *hi ? 1 : 0;
  return Partition(std::move(labels));
}

Partition threshold_cluster(const WeightedGraph& g, std::span<const double> f,
                            ThresholdMode mode) {
  if (f.size() != g.num_vertices())
    throw Error(ErrorCode::length_mismatch, "signal length does not match graph size");
  if (mode == ThresholdMode::sign) return threshold_cluster(f);

  const std::size_t n = f.size();
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return f[a] > f[b]; });
  if (f[order.front()] == f[order.back()])
    throw Error(ErrorCode::invalid_partition, "cannot threshold a constant signal");

  std::vector<std::uint8_t> in_s(n, 0);
  double cut = 0.0;
  double best_value = 0.0;
  std::size_t best_size = 0;
  for (std::size_t t = 0; t + 1 < n; ++t) {
    const Vertex x = order[t];
    for (const auto& nb : g.neighbors(x)) cut += in_s[nb.vertex] ? -nb.weight : nb.weight;
    in_s[x] = 1;
    if (f[order[t]] == f[order[t + 1]]) continue;  // not a level set boundary
    const double value = ratio_of(cut, t + 1, n);
    if (best_size == 0 || better(value, t + 1, best_value, best_size, n)) {
      best_value = value;
      best_size = t + 1;
    }
  }
  std::vector<std::uint8_t> labels(n, 0);
  for (std::size_t t = 0; t < best_size; ++t) labels[order[t]] = 1;
  return Partition(std::move(labels));
}

CutResult brute_force_ratio_cut(const WeightedGraph& g) {
  const std::size_t n = g.num_vertices();
  if (n > brute_force_max_n)
    throw Error(ErrorCode::too_large,
                "brute force limited to n <= " + std::to_string(brute_force_max_n));
  if (n < 2) throw Error(ErrorCode::invalid_parameter, "brute force needs n >= 2");

  // Vertex 0 is always in S; bit i-1 of mask places vertex i in S.
  const std::uint32_t full = (std::uint32_t{1} << (n - 1)) - 1;
  double best_value = 0.0;
  std::uint32_t best_mask = 0;
  std::size_t best_s = 0;
  bool have = false;
  auto member = [](std::uint32_t mask, Vertex v) {
    return v == 0 || ((mask >> (v - 1)) & 1u) != 0;
  };
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    double cut = 0.0;
    for (const auto& e : g.edges())
      if (member(mask, e.u) != member(mask, e.v)) cut += e.weight;
    const std::size_t s = 1 + static_cast<std::size_t>(std::popcount(mask));
    const double value = ratio_of(cut, s, n);
    if (!have || better(value, s, best_value, best_s, n)) {
      have = true;
      best_value = value;
      best_mask = mask;
      best_s = s;
    }
  }
  std::vector<std::uint8_t> labels(n);
  for (Vertex v = 0; v < n; ++v) labels[v] = member(best_mask, v) ? 1 : 0;
  return {Partition(std::move(labels)), best_value};
}

TightnessReport verify_tightness(const WeightedGraph& g, double tol) {
  const std::size_t n = g.num_vertices();
  if (n > tightness_max_n)
    throw Error(ErrorCode::too_large,
                "tightness check limited to n <= " + std::to_string(tightness_max_n));
  if (!is_connected(g))
    throw Error(ErrorCode::disconnected_graph, "tightness check requires a connected graph");

  TightnessReport report;
  report.min_ratio_cut = brute_force_ratio_cut(g).value;
  bool have = false;
  const std::uint32_t limit = std::uint32_t{1} << n;
  for (std::uint32_t mask = 1; mask + 1 < limit; ++mask) {
    std::vector<std::uint8_t> labels(n);
    for (Vertex v = 0; v < n; ++v) labels[v] = (mask >> v) & 1u;
    const Partition p(std::move(labels));
    const double half_cut = ratio_cut_value(g, p) / 2.0;
    for (double scale : {1.0, -2.0, 0.5}) {
      const double e = energy(g, binary_embedding(p, scale));
      report.max_identity_error = std::max(report.max_identity_error, std::abs(e - half_cut));
      if (!have || e < report.min_embedding_energy) report.min_embedding_energy = e;
      have = true;
    }
  }
  report.tight = report.max_identity_error <= tol &&
                 std::abs(report.min_embedding_energy - report.min_ratio_cut / 2.0) <= tol;
  return report;
}

void write_labels(std::ostream& out, std::span<const std::uint8_t> labels) {
  for (auto l : labels) out << static_cast<int>(l) << '\n';
}

std::vector<std::uint8_t> read_labels(std::istream& in) {
  std::vector<std::uint8_t> labels;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::is_blank(line)) continue;
    const auto fields = detail::split_fields(line, " \t\r");
    const auto v = fields.size() == 1 ? detail::parse_number<int>(fields[0]) : std::nullopt;
    if (!v || (*v != 0 && *v != 1)) throw ParseError(lineno, "expected label 0 or 1");
    labels.push_back(static_cast<std::uint8_t>(*v));
  }
  return labels;
}

}  // namespace ratiocut
