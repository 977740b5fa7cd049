#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "cayley/bounds.hpp"
#include "cayley/subsets.hpp"

using namespace cayley;

namespace {

Mask bits(std::initializer_list<int> es) {
  Mask m = 0;
  for (int e : es) m |= Mask{1} << (e - 1);
  return m;
}

}  // namespace

TEST(Subsets, Rotation) {
  EXPECT_EQ(rotate(0b0011, 1, 4), 0b0110u);
  EXPECT_EQ(rotate(0b1001, 1, 4), 0b0011u);
  EXPECT_EQ(rotate(0b1001, -1, 4), 0b1100u);
  EXPECT_EQ(block_size(0b0101, 4), 2);
  EXPECT_EQ(block_size(0b0011, 4), 4);
  EXPECT_EQ(block_size(0b11, 2), 1);
  EXPECT_EQ(canonical_rotation(0b1100, 4), 0b0011u);
}

TEST(Subsets, OrderSingletons) {
  auto o = order_s_subsets(3, 1);
  EXPECT_EQ(o.subsets, (std::vector<Mask>{bits({1}), bits({2}), bits({3})}));
}

TEST(Subsets, OrderPairsOfFour) {
  auto o = order_s_subsets(4, 2);
  ASSERT_EQ(o.subsets.size(), 6u);
  for (std::size_t i = 1; i <= 6; ++i) EXPECT_TRUE(o.subsets[i - 1] >> required_bit(i, 4) & 1) << i;
  std::set<Mask> uniq(o.subsets.begin(), o.subsets.end());
  EXPECT_EQ(uniq.size(), 6u);
}

TEST(Subsets, OrderFullSet) {
  auto o = order_s_subsets(3, 3);
  EXPECT_EQ(o.subsets, std::vector<Mask>{0b111});
}

TEST(Subsets, AllSubsetsDimThree) {
  auto o = order_all_subsets(3, 3, {false, false, true, true});
  ASSERT_EQ(o.subsets.size(), 7u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(popcount(o.subsets[i]), 1);
  for (std::size_t i = 3; i < 6; ++i) EXPECT_EQ(popcount(o.subsets[i]), 2);
  EXPECT_EQ(o.subsets[6], 0b111u);
  EXPECT_TRUE(o.constraints_met.congruence);
  EXPECT_TRUE(o.constraints_met.monotone_cardinality);
  EXPECT_TRUE(o.constraints_met.antecedent);
  EXPECT_TRUE(o.constraints_met.tail);
}

TEST(Subsets, TailForcedInDimTwo) {
  auto o = order_all_subsets(2, 2, {false, false, true, true});
  ASSERT_EQ(o.subsets.size(), 3u);
  EXPECT_EQ(o.subsets[2], 0b11u);
  EXPECT_TRUE(o.constraints_met.tail);
}

TEST(Subsets, DimOne) {
  auto o = order_all_subsets(1, 1, {false, false, true, true});
  EXPECT_EQ(o.subsets, std::vector<Mask>{1});
}

TEST(Subsets, CheckerCatchesBadOrders) {
  // d=3: put {e1,e2} before {e3}.
  std::vector<Mask> bad{bits({1}), bits({2}), bits({1, 3}), bits({2, 3}), bits({1, 2}), bits({3}), bits({1, 2, 3})};
  auto c = check_subset_ordering(3, bad);
  EXPECT_FALSE(c.monotone_cardinality);
  // Same-block antecedent: d=2, ordering {e1},{e2},{e1,e2}; position 3 requires e1,
  // {e1,e2}\e1 = {e2} sits in the preceding block, so fine; swap to make it fail.
  std::vector<Mask> d2{bits({1}), bits({2}), bits({1, 2})};
  EXPECT_TRUE(check_subset_ordering(2, d2).antecedent);
  std::vector<Mask> d4{bits({1}), bits({2}), bits({3}), bits({4}), bits({1, 2}), bits({2, 3}), bits({3, 4}),
                       bits({1, 4}), bits({1, 3}), bits({2, 4}), bits({1, 2, 3})};
  // Position 11 needs e3; {1,2,3}\e3 = {1,2} is in block 3 with it? Block 3 is 9..11, {1,2} is at 5.
  EXPECT_TRUE(check_subset_ordering(4, d4).antecedent);
  std::vector<Mask> d4b = d4;
  std::swap(d4b[4], d4b[8]);  // {1,3} to 5, {1,2} to 9: 9 needs e1, holds; 11's antecedent {1,2} now in block
  EXPECT_FALSE(check_subset_ordering(4, d4b).antecedent);
}

TEST(Subsets, StrengthenedOrderingsUpToTwelve) {
  std::size_t fallbacks = 0;
  for (int d = 1; d <= 12; ++d)
    for (int l = 1; l <= d; ++l) {
      auto plain = order_all_subsets(d, l);
      EXPECT_EQ(plain.subsets.size(), cube_ball_count(d, l));
      EXPECT_TRUE(plain.constraints_met.congruence);
      EXPECT_TRUE(plain.constraints_met.monotone_cardinality);
      auto strong = order_all_subsets(d, l, {false, false, true, true});
      EXPECT_EQ(strong.subsets.size(), cube_ball_count(d, l));
      std::set<Mask> uniq(strong.subsets.begin(), strong.subsets.end());
      EXPECT_EQ(uniq.size(), strong.subsets.size());
      EXPECT_TRUE(strong.constraints_met.congruence) << d << "," << l;
      EXPECT_TRUE(strong.constraints_met.monotone_cardinality) << d << "," << l;
      EXPECT_TRUE(strong.constraints_met.antecedent) << d << "," << l;
      EXPECT_TRUE(strong.constraints_met.tail) << d << "," << l;
      fallbacks += strong.fallback_events;
    }
  RecordProperty("fallback_events", static_cast<int>(fallbacks));
}

TEST(Subsets, Classes) {
  auto c42 = classify_subsets(4, 2);
  ASSERT_EQ(c42.size(), 2u);
  EXPECT_EQ(c42[0].representative, 0b0011u);
  EXPECT_FALSE(c42[0].is_special);
  EXPECT_EQ(c42[1].representative, 0b0101u);
  EXPECT_TRUE(c42[1].is_special);
  EXPECT_EQ(c42[1].block_size, 2);
  auto c32 = classify_subsets(3, 2);
  ASSERT_EQ(c32.size(), 1u);
  EXPECT_EQ(c32[0].block_size, 3);
  auto c22 = classify_subsets(2, 2);
  ASSERT_EQ(c22.size(), 1u);
  EXPECT_TRUE(c22[0].is_special);
  EXPECT_EQ(c22[0].n, 2);
  for (int d = 1; d <= 12; ++d)
    for (int s = 1; s <= d; ++s) {
      std::uint64_t total = 0;
      for (const auto& c : classify_subsets(d, s)) {
        total += static_cast<std::uint64_t>(c.block_size);
        EXPECT_EQ(d % c.block_size, 0);
        // Special iff the word is a repetition of its first block.
        const Mask first = c.representative & ((Mask{1} << c.block_size) - 1);
        Mask rep = 0;
        for (int k = 0; k < c.n; ++k) rep |= first << (k * c.block_size);
        EXPECT_EQ(rep, c.representative);
      }
      EXPECT_EQ(total, binomial(d, s));
    }
}

TEST(Subsets, RegularAntecedent) {
  EXPECT_EQ(block_size(regular_antecedent(0b1010, 4), 4), 4);
  EXPECT_EQ(popcount(regular_antecedent(0b1010, 4)), 1);
  EXPECT_EQ(regular_antecedent(0b11, 2), 0b10u);
  EXPECT_EQ(block_size(regular_antecedent(0b101010, 6), 6), 6);
  EXPECT_THROW(regular_antecedent(0b1, 3), SubsetError);
  for (int d = 2; d <= 12; ++d)
    for (Mask m = 1; m < (Mask{1} << d); ++m)
      if (popcount(m) >= 2) {
        const Mask a = regular_antecedent(m, d);
        EXPECT_EQ(popcount(a), popcount(m) - 1);
        EXPECT_EQ(a & ~m, 0u);
      }
}

TEST(Subsets, Theta) {
  auto t42 = theta_assignment(4, 2);
  ASSERT_EQ(t42.size(), 1u);
  EXPECT_EQ(t42[0].regular_classes.size(), 1u);
  EXPECT_TRUE(theta_assignment(3, 2).empty());
  auto t63 = theta_assignment(6, 3);
  auto c63 = classify_subsets(6, 3);
  ASSERT_EQ(t63.size(), 1u);
  EXPECT_EQ(c63[t63[0].special_class].representative, 0b010101u);
  EXPECT_EQ(t63[0].regular_classes.size(), 2u);
}
