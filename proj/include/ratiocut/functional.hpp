#pragma once

#include <span>
#include <vector>

#include "ratiocut/graph.hpp"

namespace ratiocut {

// A real value per vertex.
using Signal = std::vector<double>;

// Neumaier-compensated sum.
double stable_sum(std::span<const double> values);
double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> f);

double mean(std::span<const double> f);

// P0 f = f - m(f) 1, the orthogonal projection onto mean-zero signals.
Signal project_mean_zero(std::span<const double> f);

// T(f) = sum over undirected edges of w_ij |f_i - f_j|.
double total_variation(const WeightedGraph& g, std::span<const double> f);

// B(f) = sum_i |f_i - m(f)|.
double balance(std::span<const double> f);

// E = T / B. Throws undefined_energy on constant f.
double energy(const WeightedGraph& g, std::span<const double> f);

// Element v of dB(f): v = P0 sign(P0 f) with sign(0) := 0.
// Satisfies <v, 1> = 0, |v|_inf <= 2 and <v, f> = B(f).
Signal subgrad_balance(std::span<const double> f);

}  // namespace ratiocut
