#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <sstream>

#include "ratiocut/data.hpp"
#include "ratiocut/descent.hpp"
#include "ratiocut/error.hpp"
#include "ratiocut/functional.hpp"
#include "ratiocut/ratio_cut.hpp"

using namespace ratiocut;

namespace {

WeightedGraph path4() { return WeightedGraph(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}}); }

DescentConfig tight_config() {
  DescentConfig cfg;
  cfg.inner_tol = 1e-10;
  cfg.check_lemmas = true;
  return cfg;
}

Eigen::VectorXd dense_fiedler(const WeightedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    const auto u = static_cast<Eigen::Index>(e.u), v = static_cast<Eigen::Index>(e.v);
    lap(u, u) += e.weight;
    lap(v, v) += e.weight;
    lap(u, v) -= e.weight;
    lap(v, u) -= e.weight;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
  return es.eigenvectors().col(1);
}

}  // namespace

TEST(Init, RandomIsDeterministicMeanZeroUnitNorm) {
  const auto a = init_random(50, 17), b = init_random(50, 17), c = init_random(50, 18);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  EXPECT_LE(std::abs(mean(a)), 1e-15);
  EXPECT_NEAR(norm2(a), 1.0, 1e-15);
}

TEST(Init, SpectralMatchesDenseEigensolver) {
  std::vector<WeightedGraph> graphs;
  graphs.push_back(path4());
  for (std::uint64_t seed = 0; seed < 5; ++seed)
    graphs.push_back(random_connected_graph(15, 0.2, seed));
  for (const auto& g : graphs) {
    const auto f = init_spectral(g);
    const auto ref = dense_fiedler(g);
    double same = 0.0, flipped = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      same = std::max(same, std::abs(f[i] - ref(static_cast<Eigen::Index>(i))));
      flipped = std::max(flipped, std::abs(f[i] + ref(static_cast<Eigen::Index>(i))));
    }
    EXPECT_LE(std::min(same, flipped), 1e-8);
    EXPECT_NEAR(norm2(f), 1.0, 1e-12);
    EXPECT_LE(std::abs(mean(f)), 1e-12);
  }
}

TEST(Init, SpectralOnPathSeparatesHalves) {
  const auto f = init_spectral(path4());
  EXPECT_GT(f[0] * f[1], 0.0);
  EXPECT_GT(f[2] * f[3], 0.0);
  EXPECT_LT(f[0] * f[3], 0.0);
}

TEST(Init, SpectralRejectsDisconnectedGraph) {
  const WeightedGraph g(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  try {
    init_spectral(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::disconnected_graph);
  }
}

TEST(Step, PathIndicatorIsAFixedPoint) {
  const Signal f{0.5, 0.5, -0.5, -0.5};
  const auto s = step(path4(), f, tight_config());
  EXPECT_EQ(s.v, (Signal{1, 1, -1, -1}));
  for (int i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(s.g_shift[i], f[i] * 1.5);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(s.h[i], f[i], 1e-8);
  EXPECT_DOUBLE_EQ(s.record.energy, 0.5);
  EXPECT_LT(s.record.increment, 1e-6);
  EXPECT_DOUBLE_EQ(s.diag.norm_g * s.diag.norm_g, 2.25);
  EXPECT_TRUE(check_step(s, tight_config()).empty());
}

TEST(Step, NormIdentityAndShiftBounds) {
  DescentConfig cfg = tight_config();
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t n = 3 + seed % 20;
    const auto g = random_connected_graph(n, 0.2, seed);
    const auto f = init_random(n, seed + 1000);
    const auto s = step(g, f, cfg);
    const double lhs = norm2(s.g_shift) * norm2(s.g_shift);
    const double rhs = 1.0 + 2.0 * cfg.c * balance(f) + cfg.c * cfg.c * norm2(s.v) * norm2(s.v);
    EXPECT_LE(std::abs(lhs - rhs), 1e-10 * lhs);
    EXPECT_LE(norm2(s.h), norm2(s.g_shift) + s.diag.prox_error_bound + 1e-12);
    EXPECT_LE(norm2(s.g_shift), 1.0 + 2.0 * cfg.c * std::sqrt(static_cast<double>(n)));
    EXPECT_GE(s.record.descent_slack, -1e-7);
    EXPECT_LE(std::abs(mean(s.f_next)), 1e-10);
    EXPECT_NEAR(norm2(s.f_next), 1.0, 1e-12);
    EXPECT_TRUE(check_step(s, cfg).empty()) << "seed " << seed;
  }
}

TEST(Step, ZeroEnergySignalOnDisconnectedGraphIsFixed) {
  const WeightedGraph g(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  const Signal f{0.5, 0.5, -0.5, -0.5};
  const auto s = step(g, f, tight_config());
  EXPECT_EQ(s.f_next, f);
  EXPECT_EQ(s.record.energy, 0.0);
  EXPECT_EQ(s.record.increment, 0.0);
}

TEST(Run, PathConvergesToACriticalCut) {
  // Critical values on the path: {1,2}|{3,4} (0.5), a single end vertex
  // (2/3), and {1,4}|{2,3} (1).
  int optimal = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = run(path4(), init_random(4, seed), tight_config());
    EXPECT_TRUE(r.converged);
    EXPECT_TRUE(r.violations.empty());
    EXPECT_LT(r.critical_residual, 1e-6);
    const double e = energy(path4(), r.f_star);
    EXPECT_TRUE(std::abs(e - 0.5) < 1e-6 || std::abs(e - 2.0 / 3.0) < 1e-6 ||
                std::abs(e - 1.0) < 1e-6)
        << "seed " << seed << " E=" << e;
    optimal += std::abs(e - 0.5) < 1e-6;
  }
  EXPECT_GT(optimal, 0);
}

TEST(Run, PathHasNonOptimalFixedPoints) {
  const double a = 1.0 / std::sqrt(12.0);
  for (const Signal& f : {Signal{0.5, -0.5, -0.5, 0.5}, Signal{a, a, a, -3.0 * a},
                          Signal{0.6, -0.5, -0.5, 0.4}}) {
    Signal unit(f);
    for (double& x : unit) x /= norm2(f);
    const auto s = step(path4(), unit, tight_config());
    EXPECT_GT(s.record.energy, 0.5 + 0.1);
    EXPECT_LT(s.record.increment, 1e-6);
  }
}

TEST(Run, StartingAtCriticalPointStopsImmediately) {
  const auto r = run(path4(), Signal{0.5, 0.5, -0.5, -0.5}, tight_config());
  ASSERT_EQ(r.trace.size(), 1u);
  EXPECT_EQ(r.trace[0].k, 0u);
  EXPECT_LT(r.trace[0].increment, 1e-6);
  EXPECT_TRUE(r.converged);
}

TEST(Run, EnergyIsMonotoneOnRandomInstances) {
  const DescentConfig cfg = tight_config();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t n = 3 + seed % 28;
    const auto g = random_connected_graph(n, 0.15, seed);
    const auto r = run(g, init_random(n, seed), cfg);
    for (std::size_t k = 1; k < r.trace.size(); ++k)
      EXPECT_LE(r.trace[k].energy, r.trace[k - 1].energy + 1e-7) << "seed " << seed;
    for (const auto& rec : r.trace) EXPECT_GE(rec.descent_slack, -1e-7);
    EXPECT_TRUE(r.violations.empty()) << "seed " << seed;
  }
}

TEST(Run, NoisyMoonsOnConnectedGraph) {
  TwoMoonsParams p;
  p.n_per_moon = 100;
  p.ambient_dim = 2;
  p.sigma = 0.16;
  const auto data = two_moons(p);
  const auto g = knn_graph(data.cloud, {});
  ASSERT_TRUE(is_connected(g));
  DescentConfig cfg;
  cfg.max_outer_iter = 100;
  for (const auto& f0 : {init_random(200, 1), init_spectral(g)}) {
    const auto r = run(g, f0, cfg);
    EXPECT_TRUE(r.converged);
    const auto labels = threshold_cluster(g, r.f_star, ThresholdMode::sign).labels();
    EXPECT_GE(purity(labels, data.truth), 0.95);
  }
}

TEST(Run, MirrorSymmetric) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = random_connected_graph(12, 0.2, seed);
    auto f0 = init_random(12, seed);
    const auto a = run(g, f0, tight_config());
    for (double& x : f0) x = -x;
    const auto b = run(g, f0, tight_config());
    ASSERT_EQ(a.trace.size(), b.trace.size());
    for (std::size_t k = 0; k < a.trace.size(); ++k)
      EXPECT_NEAR(a.trace[k].energy, b.trace[k].energy, 1e-9);
    for (int i = 0; i < 12; ++i) EXPECT_NEAR(a.f_star[i], -b.f_star[i], 1e-7);
  }
}

TEST(Run, ProjectsAndNormalizesInitialSignal) {
  const auto r = run(path4(), Signal{3, 3, 1, 1}, tight_config());
  EXPECT_NEAR(r.trace[0].energy, 0.5, 1e-15);
  EXPECT_NEAR(norm2(r.f_star), 1.0, 1e-12);
}

TEST(Run, RejectsConstantStart) {
  EXPECT_THROW(run(path4(), Signal{1, 1, 1, 1}, tight_config()), Error);
}

TEST(Critical, ResidualVanishesAtOptimum) {
  const auto cert = critical_residual(path4(), Signal{0.5, 0.5, -0.5, -0.5}, tight_config());
  EXPECT_LT(cert.residual, 1e-6);
  EXPECT_DOUBLE_EQ(cert.energy, 0.5);
}

TEST(Critical, ResultCarriesResidualOfFinalIterate) {
  const auto g = random_connected_graph(10, 0.3, 7);
  const auto cfg = tight_config();
  const auto r = run(g, init_random(10, 7), cfg);
  ASSERT_TRUE(r.converged);
  EXPECT_DOUBLE_EQ(r.critical_residual, critical_residual(g, r.f_star, cfg).residual);
  EXPECT_LT(r.critical_residual, 1e-6);
}

TEST(Critical, CertificateIsSubgradientOfTotalVariation) {
  // w in dT(h) means T(u) >= <w, u> for all u, with equality at h.
  const auto g = random_connected_graph(10, 0.3, 8);
  const auto cfg = tight_config();
  const auto r = run(g, init_random(10, 8), cfg);
  const auto cert = critical_residual(g, r.f_star, cfg);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  for (int probe = 0; probe < 500; ++probe) {
    Signal u(10);
    for (double& x : u) x = normal(rng);
    EXPECT_GE(total_variation(g, u), dot(cert.w, u) - 1e-4 * norm2(u));
  }
}

TEST(Config, ValidateRejectsBadValues) {
  DescentConfig cfg;
  EXPECT_NO_THROW(validate(cfg));
  cfg.c = 0.0;
  EXPECT_THROW(validate(cfg), Error);
  cfg = {};
  cfg.outer_tol = -1.0;
  EXPECT_THROW(validate(cfg), Error);
  cfg = {};
  cfg.inner_tol = 0.0;
  EXPECT_THROW(validate(cfg), Error);
}

TEST(Trace, CsvHeaderAndRows) {
  const auto r = run(path4(), init_random(4, 3), tight_config());
  std::ostringstream out;
  write_trace_csv(out, r.trace);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "k,energy,increment,prox_gap,descent_slack");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, r.trace.size());
}
