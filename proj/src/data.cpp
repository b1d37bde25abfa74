#include "ratiocut/data.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "ratiocut/error.hpp"
#include "text_scan.hpp"

namespace ratiocut {

LabeledCloud two_moons(const TwoMoonsParams& params) {
  if (params.n_per_moon == 0) throw Error(ErrorCode::invalid_parameter, "n_per_moon must be positive");
  if (params.ambient_dim < 2) throw Error(ErrorCode::invalid_parameter, "ambient dimension must be >= 2");
  if (!(params.sigma >= 0.0) || !std::isfinite(params.sigma))
    throw Error(ErrorCode::invalid_parameter, "noise level must be nonnegative");

  const std::size_t per = params.n_per_moon;
  const std::size_t n = 2 * per;
  const std::size_t d = params.ambient_dim;
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  std::normal_distribution<double> noise(0.0, 1.0);

  auto theta = [&](std::size_t j) {
    if (params.sampling == AngleSampling::uniform) return angle(rng);
    return per == 1 ? std::numbers::pi / 2
                    : std::numbers::pi * static_cast<double>(j) / static_cast<double>(per - 1);
  };

  std::vector<double> coords(n * d, 0.0);
  std::vector<std::uint8_t> truth(n);
  for (std::size_t j = 0; j < per; ++j) {
    const double t = theta(j);
    coords[j * d] = std::cos(t);
    coords[j * d + 1] = std::sin(t);
    truth[j] = 0;
  }
  for (std::size_t j = 0; j < per; ++j) {
    const double t = theta(j);
    const std::size_t row = per + j;
    coords[row * d] = 1.0 + std::cos(t);
    coords[row * d + 1] = -0.5 - std::sin(t);
    truth[row] = 1;
  }
  if (params.sigma > 0.0) {
    const std::size_t noisy = params.noise == NoiseMode::ambient ? d : 2;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t t = 0; t < noisy; ++t) coords[i * d + t] += params.sigma * noise(rng);
  }
  return {PointCloud(n, d, std::move(coords)), std::move(truth)};
}

double purity(std::span<const std::uint8_t> predicted, std::span<const std::uint8_t> truth) {
  if (predicted.size() != truth.size())
    throw Error(ErrorCode::length_mismatch, "purity: label vectors differ in length");
  if (predicted.empty()) throw Error(ErrorCode::invalid_parameter, "purity: empty labels");
  std::size_t agree = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i)
    agree += (predicted[i] != 0) == (truth[i] != 0) ? 1 : 0;
  const auto n = static_cast<double>(predicted.size());
  const auto a = static_cast<double>(agree);
  return std::max(a, n - a) / n;
}

void save_cloud(std::ostream& out, const LabeledCloud& data) {
  const auto& cloud = data.cloud;
  const bool labeled = !data.truth.empty();
  if (labeled && data.truth.size() != cloud.size())
    throw Error(ErrorCode::length_mismatch, "label count does not match point count");
  std::string row;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    row.clear();
    const auto x = cloud.point(i);
    for (std::size_t t = 0; t < x.size(); ++t) {
      if (t) row += ',';
      row += detail::format_real(x[t]);
    }
    if (labeled) {
      row += ',';
      row += static_cast<char>('0' + data.truth[i]);
    }
    row += '\n';
    out << row;
  }
}

LabeledCloud load_cloud(std::istream& in, LabelColumn labels) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!detail::is_blank(line)) lines.emplace_back(lineno, std::move(line));
    }
  }
  bool labeled = labels == LabelColumn::present;
  if (labels == LabelColumn::detect && !lines.empty()) {
    labeled = true;
    for (const auto& entry : lines) {
      const auto fields = detail::split_csv(entry.second);
      if (fields.size() < 2 || (fields.back() != "0" && fields.back() != "1")) {
        labeled = false;
        break;
      }
    }
  }

  const std::size_t last_line = lines.empty() ? 0 : lines.back().first;
  std::size_t width = 0;
  std::size_t rows = 0;
  std::vector<double> coords;
  std::vector<std::uint8_t> truth;
  for (const auto& [lineno, line] : lines) {
    const auto fields = detail::split_csv(line);
    if (rows == 0) {
      width = fields.size();
      if (labeled && width < 2)
        throw ParseError(lineno, "labeled rows need at least one coordinate and a label column");
    } else if (fields.size() != width) {
      throw ParseError(lineno, "expected " + std::to_string(width) + " fields, found " +
                                   std::to_string(fields.size()));
    }
    const std::size_t dims = labeled ? width - 1 : width;
    for (std::size_t t = 0; t < dims; ++t) {
      const auto v = detail::parse_number<double>(fields[t]);
      if (!v || !std::isfinite(*v))
        throw ParseError(lineno, "invalid coordinate '" + std::string(fields[t]) + "' in column " +
                                     std::to_string(t + 1));
      coords.push_back(*v);
    }
    if (labeled) {
      const auto l = detail::parse_number<int>(fields.back());
      if (!l || (*l != 0 && *l != 1))
        throw ParseError(lineno, "label column must hold 0 or 1, found '" +
                                     std::string(fields.back()) + "'");
      truth.push_back(static_cast<std::uint8_t>(*l));
    }
    ++rows;
  }
  if (rows < 2) throw ParseError(last_line, "need at least two points");
  const std::size_t dims = labeled ? width - 1 : width;
  return {PointCloud(rows, dims, std::move(coords)), std::move(truth)};
}

}  // namespace ratiocut
