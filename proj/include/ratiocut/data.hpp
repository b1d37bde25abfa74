#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "ratiocut/graph.hpp"
#include "ratiocut/ratio_cut.hpp"

namespace ratiocut {

struct LabeledCloud {
  PointCloud cloud;
  std::vector<std::uint8_t> truth;  // empty when the source had no labels
};

enum class AngleSampling { uniform, equispaced };
enum class NoiseMode { ambient, planar };

struct TwoMoonsParams {
  std::size_t n_per_moon = 1000;
  std::size_t ambient_dim = 100;
  double sigma = 0.015;
  std::uint64_t seed = 0;
  AngleSampling sampling = AngleSampling::uniform;
  // ambient: noise on every coordinate; planar: only on the first two.
  NoiseMode noise = NoiseMode::ambient;
};

// Upper unit half circle at the origin (label 0) and an upside-down unit half
// circle centered at (1, -1/2) (label 1), zero-padded to ambient_dim and
// perturbed by N(0, sigma^2) noise. Moon 0 occupies rows [0, n_per_moon).
LabeledCloud two_moons(const TwoMoonsParams& params);

// Best of the two label matchings: fraction of agreeing entries.
double purity(std::span<const std::uint8_t> predicted, std::span<const std::uint8_t> truth);

// CSV rows: d coordinates, then the label when present. No header.
void save_cloud(std::ostream& out, const LabeledCloud& data);

enum class LabelColumn { absent, present, detect };

// present: the last column is a 0/1 label. detect: the last column is taken
// as a label when there are at least two columns and every entry in it is
// the literal 0 or 1. Throws ParseError with the line number on ragged rows
// or malformed fields.
LabeledCloud load_cloud(std::istream& in, LabelColumn labels);

}  // namespace ratiocut
