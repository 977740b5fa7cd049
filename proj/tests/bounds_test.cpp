#include <gtest/gtest.h>

#include "cayley/bounds.hpp"

using namespace cayley;

TEST(Bounds, GeneralBroadcast) {
  EXPECT_EQ(broadcast_lower_bound(4, 8), 2u);
  EXPECT_EQ(broadcast_lower_bound(2, 1), 2u);
  EXPECT_EQ(broadcast_lower_bound(8, 24), 3u);
}

TEST(Bounds, OneWayBroadcast) {
  EXPECT_EQ(oneway_broadcast_lower_bound(8, 3), 5u);
  EXPECT_EQ(oneway_broadcast_lower_bound(4, 2), 3u);
  EXPECT_EQ(oneway_broadcast_lower_bound(1u << 13, 13), 1261u);
  // 2(2^d - 2) is divisible by a prime d; 2(2^d - 1) is not.
  EXPECT_EQ(2u * ((1u << 13) - 2) % 13, 0u);
}

TEST(Bounds, TwoWayBroadcast) {
  EXPECT_EQ(twoway_broadcast_lower_bound(8, 3), 3u);
  EXPECT_EQ(twoway_broadcast_lower_bound(16, 4), 4u);
  EXPECT_EQ(twoway_broadcast_lower_bound(10, 3), 3u);
}

TEST(Bounds, AllButFarthest) {
  EXPECT_EQ(all_but_farthest_lower_bound(8, 3), 4u);
  EXPECT_EQ(all_but_farthest_lower_bound(32, 5), 12u);
  EXPECT_EQ(all_but_farthest_lower_bound(4, 2), 2u);
}

namespace {

std::uint64_t lookup(const std::vector<BoundReport>& rows, BoundTask task, WireModel wire, int param = 0) {
  for (const auto& r : rows)
    if (r.task == task && r.wire_model == wire && r.parameter == param) return r.value;
  return 0;
}

}  // namespace

TEST(Bounds, CubeTable) {
  auto t3 = hypercube_optimal_times(3);
  EXPECT_EQ(lookup(t3, BoundTask::UniversalBroadcast, WireModel::OneWay), 5u);
  EXPECT_EQ(lookup(t3, BoundTask::UniversalExchange, WireModel::OneWay), 8u);
  EXPECT_EQ(lookup(t3, BoundTask::UniversalExchange, WireModel::TwoWay), 4u);
  EXPECT_EQ(lookup(t3, BoundTask::BroadcastToDistance, WireModel::OneWay, 3), 5u);
  auto t4 = hypercube_optimal_times(4);
  EXPECT_EQ(lookup(t4, BoundTask::UniversalExchangeDistS, WireModel::OneWay, 2), 6u);
  EXPECT_EQ(lookup(t4, BoundTask::UniversalExchangeDistS, WireModel::TwoWay, 2), 3u);
  EXPECT_EQ(lookup(t4, BoundTask::BroadcastToDistance, WireModel::OneWay, 2), 5u);  // N_2 = 4 + 6 = 10
  auto t1 = hypercube_optimal_times(1);
  EXPECT_EQ(lookup(t1, BoundTask::UniversalBroadcast, WireModel::OneWay), 2u);
  EXPECT_EQ(lookup(t1, BoundTask::UniversalBroadcast, WireModel::TwoWay), 1u);
  EXPECT_EQ(lookup(t1, BoundTask::UniversalExchange, WireModel::OneWay), 2u);
  EXPECT_EQ(lookup(t1, BoundTask::UniversalExchange, WireModel::TwoWay), 1u);
}

TEST(Bounds, PhasesTelescope) {
  for (int d = 2; d <= 20; ++d) {
    std::uint64_t total = cube_exchange_far_time(d, WireModel::OneWay);
    for (int s = 1; s <= d - 2; ++s) total += cube_exchange_time(d, s, WireModel::OneWay);
    EXPECT_EQ(total, cube_universal_exchange_time(d, WireModel::OneWay)) << d;
  }
}

TEST(Bounds, UniversalEqualsDistanceD) {
  for (int d = 1; d <= 20; ++d)
    EXPECT_EQ(cube_broadcast_time(d, d, WireModel::OneWay),
              oneway_broadcast_lower_bound(std::uint64_t{1} << d, static_cast<std::uint64_t>(d)));
}

TEST(Bounds, PowMod) {
  EXPECT_EQ(pow_mod(2, 10, 1000), 24u);
  EXPECT_EQ(pow_mod(3, 0, 7), 1u);
  EXPECT_EQ(pow_mod(2, 5, 1), 0u);
  // Naive check of 2^d mod d != 1 for small d.
  for (std::uint64_t d = 2; d <= 2000; ++d) {
    std::uint64_t v = 1;
    for (std::uint64_t i = 0; i < d; ++i) v = v * 2 % d;
    EXPECT_EQ(v == 1, !two_pow_not_one_mod(d));
    EXPECT_TRUE(two_pow_not_one_mod(d));
  }
}

TEST(Bounds, Rendering) {
  auto rows = hypercube_optimal_times(5);
  EXPECT_NE(bounds_to_text(rows).find("universal_broadcast"), std::string::npos);
  EXPECT_NE(bounds_to_json(rows).find("\"wire_model\""), std::string::npos);
}
