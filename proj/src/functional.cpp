#include "ratiocut/functional.hpp"

#include <cmath>

#include "ratiocut/error.hpp"

namespace ratiocut {

namespace {

class CompensatedSum {
public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      carry_ += (sum_ - t) + x;
    else
      carry_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace

double stable_sum(std::span<const double> values) {
  CompensatedSum s;
  for (double x : values) s.add(x);
  return s.value();
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::length_mismatch, "dot: length mismatch");
  CompensatedSum s;
  for (std::size_t i = 0; i < a.size(); ++i) s.add(a[i] * b[i]);
  return s.value();
}

double norm2(std::span<const double> f) {
  double scale = 0.0;
  for (double x : f) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  CompensatedSum s;
  for (double x : f) {
    const double y = x / scale;
    s.add(y * y);
  }
  return scale * std::sqrt(s.value());
}

double mean(std::span<const double> f) {
  if (f.empty()) return 0.0;
  return stable_sum(f) / static_cast<double>(f.size());
}

Signal project_mean_zero(std::span<const double> f) {
  const double m = mean(f);
  Signal out(f.begin(), f.end());
  for (double& x : out) x -= m;
  return out;
}

double total_variation(const WeightedGraph& g, std::span<const double> f) {
  if (f.size() != g.num_vertices())
    throw Error(ErrorCode::length_mismatch, "signal length does not match graph size");
  CompensatedSum s;
  for (const auto& e : g.edges()) s.add(e.weight * std::abs(f[e.u] - f[e.v]));
  return s.value();
}

double balance(std::span<const double> f) {
  const double m = mean(f);
  CompensatedSum s;
  for (double x : f) s.add(std::abs(x - m));
  return s.value();
}

double energy(const WeightedGraph& g, std::span<const double> f) {
  const double t = total_variation(g, f);
  const double b = balance(f);
  if (!(b > 0.0))
    throw Error(ErrorCode::undefined_energy, "energy is not defined for constant signals");
  return t / b;
}

Signal subgrad_balance(std::span<const double> f) {
  const double m = mean(f);
  Signal z(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double x = f[i] - m;
    z[i] = x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
  }
  return project_mean_zero(z);
}

}  // namespace ratiocut
