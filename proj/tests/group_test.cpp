#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "cayley/group.hpp"

using namespace cayley;

namespace {

std::size_t binom(int n, int k) {
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

}  // namespace

TEST(Group, HypercubeBasics) {
  auto q3 = make_hypercube(3);
  EXPECT_EQ(q3.vertex_count(), 8u);
  EXPECT_EQ(q3.degree(), 3u);
  EXPECT_TRUE(q3.bidirectional());
  EXPECT_EQ(q3.edges().size(), 24u);
  EXPECT_EQ(distance(q3, 0, 7), 3u);
  EXPECT_EQ(distance(q3, 5, 5), 0u);
  EXPECT_EQ(diameter(q3), 3u);
}

TEST(Group, SmallestCube) {
  auto q1 = make_hypercube(1);
  EXPECT_EQ(q1.vertex_count(), 2u);
  EXPECT_EQ(q1.degree(), 1u);
  EXPECT_TRUE(q1.bidirectional());
  auto e = q1.edges();
  ASSERT_EQ(e.size(), 2u);
  EXPECT_TRUE(q1.has_edge(0, 1));
  EXPECT_TRUE(q1.has_edge(1, 0));
}

TEST(Group, CubeBallSizes) {
  for (int d = 1; d <= 8; ++d) {
    auto q = make_hypercube(d);
    std::size_t expect = 0;
    for (int l = 0; l <= d; ++l) {
      expect += binom(d, l);
      EXPECT_EQ(ball(q, 3 % q.vertex_count(), static_cast<std::size_t>(l)).size(), expect);
    }
    EXPECT_EQ(diameter(q), static_cast<std::size_t>(d));
  }
  auto q3 = make_hypercube(3);
  auto b = ball(q3, 0, 1);
  std::sort(b.begin(), b.end());
  EXPECT_EQ(b, (std::vector<Vertex>{0, 1, 2, 4}));
  EXPECT_EQ(ball(q3, 0, 0), std::vector<Vertex>{0});
}

TEST(Group, Example47Graph) {
  auto g = builtin_graph("z2z8x5");
  EXPECT_EQ(g.vertex_count(), 16u);
  EXPECT_EQ(g.degree(), 5u);
  EXPECT_EQ(diameter(g), 4u);
  EXPECT_EQ(ball(g, g.identity_vertex(), 1).size(), 6u);
  // Locate the far vertex by search instead of trusting a printed tuple.
  const auto dist = distances_from(g, g.identity_vertex());
  std::vector<Vertex> far;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (dist[v] == 4) far.push_back(v);
  const auto& ab = std::get<AbelianProduct>(g.group()->kind());
  std::vector<std::vector<long>> tuples;
  for (auto v : far) tuples.push_back(decode_abelian(ab, g.label(v)));
  EXPECT_NE(std::find(tuples.begin(), tuples.end(), std::vector<long>{0, 4}), tuples.end());
}

TEST(Group, Example47LiteralReadingCollapses) {
  // Read as (Z2, Z8) tuples, (1,0) and (-1,0) are the same element.
  AbelianProduct ab{{2, 8}};
  GroupSpec spec;
  spec.kind = ab;
  for (auto t : std::vector<std::vector<long>>{{1, 0}, {-1, 0}, {0, 1}, {1, 1}, {-1, 1}})
    spec.generators.push_back(encode_abelian(ab, t));
  try {
    build_cayley_graph(spec);
    FAIL() << "expected a duplicate generator error";
  } catch (const GroupError& e) {
    EXPECT_EQ(e.code(), GroupErrc::CosetConditionViolated);
  }
}

TEST(Group, RejectsBadSpecs) {
  GroupSpec id_gen{AbelianProduct{{5}}, {0, 1}, {}, "bad"};
  try {
    build_cayley_graph(id_gen);
    FAIL();
  } catch (const GroupError& e) {
    EXPECT_EQ(e.code(), GroupErrc::IdentityGenerator);
  }
  GroupSpec not_gen{AbelianProduct{{2, 2}}, {1}, {}, "bad"};
  try {
    build_cayley_graph(not_gen);
    FAIL();
  } catch (const GroupError& e) {
    EXPECT_EQ(e.code(), GroupErrc::NotGenerating);
  }
  GroupSpec cube_rank{HypercubeZ2d{2}, {1, 2, 3}, {}, "ok"};
  EXPECT_EQ(build_cayley_graph(cube_rank).degree(), 3u);
}

TEST(Group, Petersen) {
  auto g = builtin_graph("petersen");
  EXPECT_EQ(g.vertex_count(), 10u);
  EXPECT_EQ(g.degree(), 3u);
  EXPECT_TRUE(g.bidirectional());
  EXPECT_EQ(diameter(g), 2u);
  // Girth 5: no vertex has two neighbors that are adjacent or share another neighbor.
  for (Vertex v = 0; v < 10; ++v) {
    auto b1 = ball(g, v, 1);
    auto b2 = ball(g, v, 2);
    EXPECT_EQ(b1.size(), 4u);
    EXPECT_EQ(b2.size(), 10u);
  }
}

TEST(Group, CoordinateCoverage) {
  EXPECT_EQ(builtin_graph("k5").degree(), 4u);
  EXPECT_EQ(diameter(builtin_graph("k5")), 1u);
  EXPECT_EQ(diameter(builtin_graph("c8")), 4u);
  EXPECT_THROW(builtin_graph("q0"), std::exception);
  EXPECT_THROW(builtin_graph("nosuch"), std::exception);
}

TEST(Group, SingleVertex) {
  auto g = make_unchecked_graph(1, {{}}, "point");
  EXPECT_EQ(diameter(g), 0u);
}

TEST(Group, UncheckedUnreachable) {
  auto g = make_unchecked_graph(3, {{1}, {0}, {0}}, "arc");
  try {
    distance(g, 0, 2);
    FAIL();
  } catch (const GroupError& e) {
    EXPECT_EQ(e.code(), GroupErrc::Unreachable);
  }
}

TEST(Group, LeftTranslationIsAutomorphism) {
  for (const char* name : {"z2z8x5", "petersen", "c7", "q4"}) {
    auto g = builtin_graph(name);
    if (!g.group()) continue;
    const auto& grp = *g.group();
    for (Vertex a = 0; a < g.vertex_count(); ++a)
      for (const auto& e : g.edges())
        EXPECT_TRUE(g.has_edge(grp.multiply(a, e.src), grp.multiply(a, e.dst))) << name;
  }
}

TEST(Group, BallSizeVertexIndependent) {
  for (const char* name : {"z2z8x5", "petersen", "c9", "k6", "q5"}) {
    auto g = builtin_graph(name);
    for (std::size_t r = 0; r <= diameter(g); ++r) {
      std::set<std::size_t> sizes;
      for (Vertex v = 0; v < g.vertex_count(); ++v) sizes.insert(ball(g, v, r).size());
      EXPECT_EQ(sizes.size(), 1u) << name << " r=" << r;
    }
  }
}

TEST(Group, ExportFormats) {
  auto q1 = make_hypercube(1);
  auto dot = graph_to_dot(q1);
  EXPECT_NE(dot.find("0 -> 1 [gen=0]"), std::string::npos);
  auto js = graph_to_json(q1);
  EXPECT_NE(js.find("\"p\":2"), std::string::npos);
  EXPECT_NE(js.find("\"bidirectional\":true"), std::string::npos);
}
