#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "cayley/global_sum.hpp"

using namespace cayley;

namespace {

// Q_d rebuilt from neighbor lists so the numeric eigensolver path runs.
CayleyGraph plain_cube(int d) {
  std::vector<std::vector<Vertex>> nbrs(std::size_t{1} << d);
  for (Vertex v = 0; v < nbrs.size(); ++v)
    for (int e = 0; e < d; ++e) nbrs[v].push_back(v ^ (Vertex{1} << e));
  return make_unchecked_graph(nbrs.size(), nbrs, "plain-q" + std::to_string(d));
}

double norm2(const std::vector<double>& x) {
  return std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
}

void expect_values(const std::vector<double>& got, const std::vector<double>& want) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-9) << i;
}

}  // namespace

TEST(GlobalSum, CubeSpectrumMatchesNumeric) {
  for (int d = 1; d <= 8; ++d) {
    const auto exact = distinct_eigenvalues(make_hypercube(d));
    expect_values(distinct_eigenvalues(plain_cube(d)), exact);
    ASSERT_EQ(exact.size(), static_cast<std::size_t>(d + 1));
  }
}

TEST(GlobalSum, SmallSpectra) {
  expect_values(distinct_eigenvalues(builtin_graph("petersen")), {3, 1, -2});
  expect_values(distinct_eigenvalues(builtin_graph("k2")), {1, -1});
  expect_values(distinct_eigenvalues(builtin_graph("k5")), {4, -1});
}

TEST(GlobalSum, Plans) {
  const auto q3 = build_sum_plan(make_hypercube(3));
  ASSERT_EQ(q3.steps.size(), 3u);
  EXPECT_DOUBLE_EQ(q3.steps[0].coefficient, 1);
  EXPECT_DOUBLE_EQ(q3.steps[2].coefficient, -3);
  EXPECT_DOUBLE_EQ(q3.scale, 6.0);
  const auto q1 = build_sum_plan(make_hypercube(1));
  EXPECT_EQ(q1.rounds, 1u);
  EXPECT_DOUBLE_EQ(q1.scale, 1.0);
  const auto pet = build_sum_plan(builtin_graph("petersen"));
  EXPECT_EQ(pet.rounds, 2u);
  EXPECT_EQ(pet.diameter, 2u);
}

TEST(GlobalSum, NotSymmetric) {
  const auto g = make_unchecked_graph(3, {{1}, {2}, {0}}, "directed-c3");
  EXPECT_THROW(build_sum_plan(g), NotSymmetric);
}

TEST(GlobalSum, OnesAndIndicator) {
  const auto g = make_hypercube(3);
  const auto plan = build_sum_plan(g);
  EXPECT_NEAR(run_sum_plan(g, plan, std::vector<double>(8, 1.0)).recovered_sum, 8.0, 1e-9);
  std::vector<double> e0(8, 0.0);
  e0[0] = 1.0;
  const auto r = run_sum_plan(g, plan, e0);
  EXPECT_NEAR(r.recovered_sum, 1.0, 1e-9);
  EXPECT_LT(r.max_deviation, 1e-9 * plan.scale);
}

TEST(GlobalSum, RandomVectors) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const char* name : {"q6", "petersen", "k9", "c8"}) {
    const auto g = builtin_graph(name);
    const auto plan = build_sum_plan(g);
    if (std::string(name) != "c8") EXPECT_EQ(plan.rounds, plan.diameter) << name;
    for (int seed = 0; seed < 100; ++seed) {
      std::vector<double> x(g.vertex_count());
      for (auto& v : x) v = u(rng);
      const auto r = run_sum_plan(g, plan, x);
      const double want = std::accumulate(x.begin(), x.end(), 0.0);
      EXPECT_NEAR(r.recovered_sum, want, 1e-9 * norm2(x)) << name;
      EXPECT_LT(r.max_deviation / plan.scale, 1e-9 * norm2(x)) << name;
    }
  }
}

TEST(GlobalSum, StepOrderIrrelevant) {
  const auto g = make_hypercube(4);
  auto plan = build_sum_plan(g);
  std::vector<double> x(16);
  std::iota(x.begin(), x.end(), 1.0);
  const auto a = run_sum_plan(g, plan, x);
  std::reverse(plan.steps.begin(), plan.steps.end());
  const auto b = run_sum_plan(g, plan, x);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(a.values[i], b.values[i], 1e-6 * std::abs(a.values[i]));
}
