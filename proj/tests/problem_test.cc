#include "spiral/problem.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.h"
#include "spiral/errors.h"
#include "test_util.h"

namespace spiral {
namespace {

using testing::node;

TEST(GenerateObservations, CountPerNode) {
  NetworkInstance net = build_network(64, 8, 1);
  auto data = generate_observations(net, 10, 10.0, 1.0, 1);
  ASSERT_EQ(data.size(), 64u);
  for (const auto& d : data) EXPECT_EQ(d.count(), 10);
}

TEST(GenerateObservations, ZeroNoiseIsExact) {
  NetworkInstance net = build_network(8, 2, 3);
  for (const auto& d : generate_observations(net, 5, 5.0, 0.0, 3)) {
    for (double v : d.values) EXPECT_EQ(v, 5.0);
  }
}

TEST(GenerateObservations, PooledMeanNearTruth) {
  NetworkInstance net = build_network(1000, 10, 9);
  auto data = generate_observations(net, 10, 0.0, 1.0, 9);
  double sum = 0.0;
  for (const auto& d : data)
    for (double v : d.values) sum += v;
  EXPECT_NEAR(sum / 10000.0, 0.0, 0.05);
}

TEST(GenerateObservations, DeterministicPerSeed) {
  NetworkInstance net = build_network(16, 4, 2);
  auto a = generate_observations(net, 3, 1.0, 2.0, 77);
  auto b = generate_observations(net, 3, 1.0, 2.0, 77);
  for (std::size_t v = 0; v < a.size(); ++v) EXPECT_EQ(a[v].values, b[v].values);
}

TEST(GenerateObservations, RejectsBadArguments) {
  NetworkInstance net = build_network(4, 2, 2);
  EXPECT_THROW(generate_observations(net, 0, 1.0, 1.0, 1), Error);
  EXPECT_THROW(generate_observations(net, 1, 1.0, -1.0, 1), Error);
}

TEST(LocalCost, Examples) {
  EXPECT_EQ(local_cost(node({4, 4, 4}), Estimate::scalar(4)), 0.0);
  EXPECT_EQ(local_cost(node({1, 3}), Estimate::scalar(0)), 10.0);
  EXPECT_EQ(local_cost(node({2}), Estimate::scalar(5)), 9.0);
}

TEST(Subgradient, Examples) {
  EXPECT_EQ(subgradient(node({1, 3}), Estimate::scalar(2))[0], 0.0);
  EXPECT_EQ(subgradient(node({1, 3}), Estimate::scalar(0))[0], -8.0);
  EXPECT_EQ(subgradient(node({0}), Estimate::scalar(1))[0], 2.0);

  auto f = [](double t) { return oracle::sum_squares({1, 3}, t); };
  EXPECT_NEAR(oracle::derivative(f, 0.0), -8.0, 1e-6);
  auto g = [](double t) { return oracle::sum_squares({0}, t); };
  EXPECT_NEAR(oracle::derivative(g, 1.0), 2.0, 1e-6);
}

TEST(Subgradient, MatchesFiniteDifferencesOfLocalCost) {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> obs(10.0, 3.0);
  std::uniform_real_distribution<double> at(-50.0, 50.0);
  for (int t = 0; t < 100; ++t) {
    NodeData d = node({obs(rng), obs(rng), obs(rng), obs(rng)});
    double theta = at(rng);
    auto f = [&](double x) { return local_cost(d, Estimate::scalar(x)); };
    double fd = oracle::derivative(f, theta, 1e-4);
    double g = subgradient(d, Estimate::scalar(theta))[0];
    EXPECT_LE(std::abs(g - fd), 1e-6 * std::max(1.0, std::abs(fd)));
  }
}

TEST(Subgradient, VectorModelPerCoordinate) {
  NodeData d{2, {1.0, 2.0, 3.0, 6.0}};  // observations (1,2) and (3,6)
  Estimate g = subgradient(d, Estimate({0.0, 0.0}));
  EXPECT_EQ(g[0], -8.0);
  EXPECT_EQ(g[1], -16.0);
  EXPECT_EQ(local_cost(d, Estimate({0.0, 0.0})), 1.0 + 4.0 + 9.0 + 36.0);
}

TEST(LocalCost, ConvexAlongSegments) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> obs(0.0, 5.0);
  std::uniform_real_distribution<double> u(-30.0, 30.0), lam(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    NodeData d = node({obs(rng), obs(rng), obs(rng)});
    double a = u(rng), b = u(rng), l = lam(rng);
    double mid = local_cost(d, Estimate::scalar(l * a + (1 - l) * b));
    double chord = l * local_cost(d, Estimate::scalar(a)) +
                   (1 - l) * local_cost(d, Estimate::scalar(b));
    EXPECT_LE(mid, chord + 1e-9);
  }
}

TEST(Project, ClampAndIdentity) {
  FeasibleSet box = FeasibleSet::box(1, -1.0, 1.0);
  EXPECT_EQ(project(Estimate::scalar(0.3), box)[0], 0.3);
  EXPECT_EQ(project(Estimate::scalar(10.0), box)[0], 1.0);
  EXPECT_EQ(project(Estimate::scalar(-10.0), box)[0], -1.0);
}

TEST(Project, IdempotentAndNonExpansive) {
  FeasibleSet box{{-1.0, 0.0}, {2.0, 5.0}};
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> wide(-20.0, 20.0);
  std::uniform_real_distribution<double> in0(-1.0, 2.0), in1(0.0, 5.0);
  for (int t = 0; t < 300; ++t) {
    Estimate theta({wide(rng), wide(rng)});
    Estimate p = project(theta, box);
    EXPECT_TRUE(box.contains(p));
    EXPECT_EQ(project(p, box), p);
    Estimate y({in0(rng), in1(rng)});
    EXPECT_LE(squared_distance(p, y), squared_distance(theta, y) + 1e-12);
  }
}

TEST(FeasibleSet, RejectsDegenerateBox) {
  EXPECT_THROW(FeasibleSet::box(1, 1.0, 1.0), Error);
  EXPECT_THROW(FeasibleSet::box(1, 2.0, 1.0), Error);
}

TEST(ReferenceOptimum, PerfectConsensus) {
  auto p = testing::scalar_problem({{0.2, 0.2}, {0.8, 0.8}}, 2, {{3, 3}, {3}},
                                   -10, 10);
  auto opt = reference_optimum(p);
  EXPECT_EQ(opt.theta_star[0], 3.0);
  EXPECT_EQ(opt.f_star, 0.0);
}

TEST(ReferenceOptimum, MatchesGridSearch) {
  auto p = testing::scalar_problem({{0.5, 0.5}}, 1, {{0, 2}}, -10, 10);
  auto opt = reference_optimum(p);
  auto grid = oracle::grid_minimize(
      [](double t) { return oracle::sum_squares({0, 2}, t); }, -10, 10, 1e-4);
  EXPECT_NEAR(grid.arg, 1.0, 1e-3);
  EXPECT_NEAR(grid.value, 2.0, 1e-3);
  EXPECT_NEAR(opt.theta_star[0], grid.arg, 1e-3);
  EXPECT_NEAR(opt.f_star, grid.value, 1e-3);
  EXPECT_DOUBLE_EQ(opt.theta_star[0], 1.0);
  EXPECT_DOUBLE_EQ(opt.f_star, 2.0);
}

TEST(ReferenceOptimum, MeanOutsideBoxLandsOnBoundary) {
  auto p = testing::scalar_problem({{0.5, 0.5}}, 1, {{7, 9}}, -1, 4);
  auto opt = reference_optimum(p);
  auto grid = oracle::grid_minimize(
      [](double t) { return oracle::sum_squares({7, 9}, t); }, -1, 4, 1e-4);
  EXPECT_EQ(opt.theta_star[0], 4.0);
  EXPECT_NEAR(opt.theta_star[0], grid.arg, 1e-3);
  EXPECT_NEAR(opt.f_star, grid.value, 1e-3);
}

TEST(ReferenceOptimum, AgreesWithGridSearchOnRandomInstances) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> obs(0.0, 4.0);
  std::uniform_real_distribution<double> lo(-8.0, 0.0), width(0.5, 10.0);
  for (int t = 0; t < 20; ++t) {
    std::vector<std::vector<double>> data(4);
    std::vector<double> pooled;
    for (auto& d : data) {
      for (int r = 0; r < 3; ++r) {
        d.push_back(obs(rng));
        pooled.push_back(d.back());
      }
    }
    double l = lo(rng), u = l + width(rng);
    auto p = testing::scalar_problem(
        {{0.1, 0.1}, {0.9, 0.1}, {0.9, 0.9}, {0.1, 0.9}}, 2, data, l, u);
    auto opt = reference_optimum(p);
    auto grid = oracle::grid_minimize(
        [&](double x) { return oracle::sum_squares(pooled, x); }, l, u, 1e-4);
    EXPECT_NEAR(opt.theta_star[0], grid.arg, 1e-3);
    EXPECT_NEAR(opt.f_star, grid.value, 1e-3);
  }
}

}  // namespace
}  // namespace spiral
