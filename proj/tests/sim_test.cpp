#include <gtest/gtest.h>

#include <random>

#include "cayley/hypercube_sched.hpp"
#include "cayley/regular_order.hpp"
#include "cayley/sim.hpp"

using namespace cayley;

namespace {

std::vector<int> upto(int l) {
  std::vector<int> out;
  for (int i = 1; i <= l; ++i) out.push_back(i);
  return out;
}

}  // namespace

TEST(Sim, RegularOrderBroadcastOnQ3) {
  const auto s = broadcast_from_regular_order(make_hypercube(3), hypercube_regular_order(3));
  const auto r = simulate(s, {DeliveryGoal::Kind::Broadcast, {}}, {true, true});
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.tau, 3u);
  EXPECT_EQ(r.required_pairs, 56u);
  EXPECT_EQ(r.delivered_pairs, 56u);
  // No word outruns the graph distance.
  for (Vertex u = 0; u < 8; ++u)
    for (Vertex v = 0; v < 8; ++v) EXPECT_GE((*r.completion)[u][v], std::popcount(u ^ v));
}

TEST(Sim, OneWayBroadcastOnQ3) {
  const auto r = simulate(build_oneway_broadcast(3, 3), {DeliveryGoal::Kind::Broadcast, {}});
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.tau, 5u);
}

TEST(Sim, MissingLeafReported) {
  CommSchedule s{make_hypercube(2), {}, WireModel::TwoWay};
  s.tasks.push_back({TaskKind::Broadcast, 0, 0, {{0, 1, 1}, {0, 2, 1}}});
  const auto r = simulate(s, {DeliveryGoal::Kind::Broadcast, {}});
  EXPECT_FALSE(r.ok);
  ASSERT_FALSE(r.undelivered.empty());
  EXPECT_EQ(r.undelivered.front(), (std::pair<Vertex, Vertex>{0, 3}));
  // Roots 1..3 have no task at all.
  EXPECT_EQ(r.undelivered_total, 1u + 3u * 3u);
}

TEST(Sim, RefusesInvalid) {
  CommSchedule s{make_hypercube(2), {}, WireModel::TwoWay};
  s.tasks.push_back({TaskKind::Broadcast, 0, 0, {{0, 1, 2}, {1, 3, 1}}});
  try {
    simulate(s, {DeliveryGoal::Kind::Broadcast, {}});
    FAIL() << "expected InvalidSchedule";
  } catch (const SimError& e) {
    EXPECT_EQ(e.code(), SimErrc::InvalidSchedule);
  }
  try {
    simulate(s, {DeliveryGoal::Kind::Broadcast, {}}, {false, false});
    FAIL() << "expected PrematureFire";
  } catch (const SimError& e) {
    EXPECT_EQ(e.code(), SimErrc::PrematureFire);
  }
}

TEST(Sim, AccumulationSumsOnQ3) {
  const auto s = build_oneway_accumulation(3, 3);
  std::vector<double> x(8);
  for (int i = 0; i < 8; ++i) x[static_cast<std::size_t>(i)] = i;
  const auto r = simulate_accumulation(s, x);
  EXPECT_TRUE(r.report.ok);
  ASSERT_EQ(r.sums.size(), 8u);
  for (const auto& [root, sum] : r.sums) EXPECT_EQ(sum, 28.0 - root);
}

TEST(Sim, SingleEdgeAccumulation) {
  CommSchedule s{make_hypercube(1), {}, WireModel::OneWay};
  s.tasks.push_back({TaskKind::Accumulation, 0, 0, {{1, 0, 1}}});
  const auto r = simulate_accumulation(s, {0.0, 5.0});
  ASSERT_EQ(r.sums.size(), 1u);
  EXPECT_EQ(r.sums[0].second, 5.0);
}

TEST(Sim, AccumulationRandomIntegersQ4) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> u(-1000, 1000);
  for (int l = 1; l <= 4; ++l) {
    const auto s = build_oneway_accumulation(4, l);
    std::vector<double> x(16);
    for (auto& v : x) v = u(rng);
    const auto r = simulate_accumulation(s, x, upto(l));
    EXPECT_TRUE(r.report.ok);
    for (const auto& [root, sum] : r.sums) {
      double want = 0;
      for (Vertex v = 0; v < 16; ++v)
        if (v != root && std::popcount(v ^ root) <= l) want += x[v];
      EXPECT_EQ(sum, want) << root;
    }
  }
}

TEST(Sim, DoubleCountDetected) {
  // 3 sends its word twice into 0, through 1 and through 2.
  CommSchedule s{make_hypercube(2), {}, WireModel::TwoWay};
  s.tasks.push_back({TaskKind::Accumulation, 0, 0, {{3, 1, 1}, {3, 2, 1}, {1, 0, 2}, {2, 0, 2}}});
  try {
    simulate(s, {DeliveryGoal::Kind::Accumulation, {}}, {false, false});
    FAIL() << "expected DoubleCount";
  } catch (const SimError& e) {
    EXPECT_EQ(e.code(), SimErrc::DoubleCount);
  }
}

TEST(Sim, Duality) {
  for (int d = 2; d <= 5; ++d)
    for (int l = 1; l <= d; ++l) {
      const auto b = simulate(build_oneway_broadcast(d, l), {DeliveryGoal::Kind::Broadcast, upto(l)});
      const auto a = simulate(build_oneway_accumulation(d, l), {DeliveryGoal::Kind::Accumulation, upto(l)});
      EXPECT_EQ(a.ok, b.ok);
      EXPECT_TRUE(a.ok);
      EXPECT_EQ(a.tau, b.tau);
    }
}

TEST(Sim, ExchangeDelivery) {
  const auto r = simulate(build_oneway_exchange(4, 2), {DeliveryGoal::Kind::Exchange, {2}});
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.required_pairs, 16u * 6u);
  const auto all = simulate(build_universal_exchange(4, WireModel::OneWay), {DeliveryGoal::Kind::Exchange, {}});
  EXPECT_TRUE(all.ok);
  EXPECT_EQ(all.tau, 16u);
  // A distance-2 plan does not cover distance 1.
  EXPECT_FALSE(simulate(build_oneway_exchange(4, 2), {DeliveryGoal::Kind::Exchange, {1}}).ok);
}

TEST(Sim, GlobalSumTree) {
  const auto b = broadcast_from_regular_order(make_hypercube(3), hypercube_regular_order(3));
  CommSchedule s{make_hypercube(3), {make_global_sum_tree(b.tasks[0])}, WireModel::TwoWay};
  const auto r = simulate(s, {DeliveryGoal::Kind::GlobalSum, {}});
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.tau, 6u);
}

TEST(Sim, ReportJson) {
  const auto r = simulate(build_oneway_broadcast(2, 1), {DeliveryGoal::Kind::Broadcast, {1}});
  const auto j = sim_report_json(r);
  EXPECT_NE(j.find("\"ok\":true"), std::string::npos);
  EXPECT_NE(j.find("\"tau\":2"), std::string::npos);
}
