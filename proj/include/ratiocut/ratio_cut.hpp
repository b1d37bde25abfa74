#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "ratiocut/functional.hpp"
#include "ratiocut/graph.hpp"

namespace ratiocut {

// Two-way labeling; S is the set of vertices labeled 1.
class Partition {
public:
  Partition() = default;
  // Throws invalid_partition unless S is a proper nonempty subset.
  explicit Partition(std::vector<std::uint8_t> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t size_s() const noexcept { return size_s_; }
  bool in_s(Vertex i) const { return labels_[i] != 0; }
  const std::vector<std::uint8_t>& labels() const noexcept { return labels_; }
  Partition complement() const;

  friend bool operator==(const Partition&, const Partition&) = default;

private:
  std::vector<std::uint8_t> labels_;
  std::size_t size_s_ = 0;
};

double cut_weight(const WeightedGraph& g, const Partition& p);

// cut(S, S^c) (1/|S| + 1/|S^c|)
double ratio_cut_value(const WeightedGraph& g, const Partition& p);

// scale * (|S^c| chi_S - |S| chi_{S^c}); exactly mean-zero.
Signal binary_embedding(const Partition& p, double scale);

enum class ThresholdMode { sign, sweep };

// sign: S = {i : f_i > m(f)}, i.e. the positive entries of a mean-zero f.
// sweep: the level set {f > t} of least RatioCut over all t between
// distinct values of f; ties go to the more balanced split.
Partition threshold_cluster(std::span<const double> f);
Partition threshold_cluster(const WeightedGraph& g, std::span<const double> f,
                            ThresholdMode mode);

struct CutResult {
  Partition partition;  // contains vertex 0 in S
  double value;
};

constexpr std::size_t brute_force_max_n = 20;

// Exhaustive minimum over the 2^(n-1) - 1 proper bipartitions.
CutResult brute_force_ratio_cut(const WeightedGraph& g);

struct TightnessReport {
  bool tight = false;
  double max_identity_error = 0.0;  // max |E(embed(S, s)) - RatioCut(S)/2|
  double min_embedding_energy = 0.0;
  double min_ratio_cut = 0.0;
};

constexpr std::size_t tightness_max_n = 12;

// Checks E(binary_embedding(S, s)) == RatioCut(S) / 2 for every proper S and
// s in {1, -2, 0.5}, and that the least such energy is min RatioCut / 2.
TightnessReport verify_tightness(const WeightedGraph& g, double tol = 1e-10);

// One 0/1 label per line.
void write_labels(std::ostream& out, std::span<const std::uint8_t> labels);
std::vector<std::uint8_t> read_labels(std::istream& in);

}  // namespace ratiocut
