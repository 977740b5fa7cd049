#include <gtest/gtest.h>

#include "cayley/schedule.hpp"

using namespace cayley;

namespace {

TaskGraph generic(std::vector<TimedEdge> edges) {
  TaskGraph t;
  t.kind = TaskKind::Generic;
  t.edges = std::move(edges);
  return t;
}

// Figure 5 style: each root sends on direction 1 and 2 at time 1, then the
// direction-1 neighbor forwards along direction 2.
CommSchedule two_cube_broadcast() {
  CommSchedule s{make_hypercube(2), {}, WireModel::TwoWay};
  for (Vertex x = 0; x < 4; ++x)
    s.tasks.push_back({TaskKind::Broadcast, x, 0, {{x, x ^ 1u, 1}, {x, x ^ 2u, 1}, {x ^ 1u, x ^ 3u, 2}}});
  return s;
}

}  // namespace

TEST(TaskGraph, CycleExampleIsValid) {
  auto t = generic({{0, 1, 1}, {1, 2, 2}, {2, 3, 3}, {3, 0, 4}});
  EXPECT_TRUE(validate_task_graph(t).ok()) << validate_task_graph(t).summary();
  EXPECT_EQ(task_time(t), 4u);
}

TEST(TaskGraph, IncomparableEdgesMayRunOutOfOrder) {
  auto t = generic({{0, 1, 1}, {1, 2, 2}, {1, 3, 2}, {3, 4, 4}, {2, 4, 3}, {4, 5, 5}});
  EXPECT_TRUE(validate_task_graph(t).ok()) << validate_task_graph(t).summary();
  EXPECT_EQ(task_time(t), 5u);
}

TEST(TaskGraph, DataMustArriveBeforeLeaving) {
  auto t = generic({{0, 1, 2}, {1, 2, 1}});
  auto r = validate_task_graph(t);
  ASSERT_FALSE(r.ok());
  EXPECT_NE(r.violations[0].message.find("rule (i)"), std::string::npos);
  auto same = generic({{0, 1, 1}, {1, 2, 1}});
  auto r2 = validate_task_graph(same);
  ASSERT_FALSE(r2.ok());
  EXPECT_NE(r2.violations[0].message.find("rule (ii)"), std::string::npos);
}

TEST(TaskGraph, CycleWithRepeatedTimeFails) {
  auto t = generic({{0, 1, 1}, {1, 2, 2}, {2, 0, 1}});
  EXPECT_FALSE(validate_task_graph(t).ok());
}

TEST(TaskGraph, EdgeFieldChecks) {
  EXPECT_FALSE(validate_task_graph(generic({{0, 1, 0}})).ok());
  EXPECT_FALSE(validate_task_graph(generic({{2, 2, 1}})).ok());
}

TEST(TaskGraph, BroadcastShape) {
  TaskGraph ok{TaskKind::Broadcast, 0, 0, {{0, 1, 1}, {0, 2, 2}, {1, 3, 2}}};
  EXPECT_TRUE(validate_task_graph(ok).ok());
  TaskGraph two_parents{TaskKind::Broadcast, 0, 0, {{0, 1, 1}, {0, 2, 1}, {1, 3, 2}, {2, 3, 2}}};
  EXPECT_FALSE(validate_task_graph(two_parents).ok());
  TaskGraph wrong_root{TaskKind::Broadcast, 3, 0, {{0, 1, 1}}};
  EXPECT_FALSE(validate_task_graph(wrong_root).ok());
}

TEST(TaskGraph, PathShape) {
  TaskGraph p{TaskKind::Path, 0, 3, {{0, 1, 1}, {1, 3, 3}}};
  EXPECT_TRUE(validate_task_graph(p).ok());
  TaskGraph detour{TaskKind::Path, 0, 3, {{0, 1, 1}, {1, 3, 3}, {3, 2, 4}}};
  EXPECT_FALSE(validate_task_graph(detour).ok());
  TaskGraph broken{TaskKind::Path, 0, 3, {{0, 1, 1}, {2, 3, 3}}};
  EXPECT_FALSE(validate_task_graph(broken).ok());
}

TEST(TaskGraph, ReverseMapsBroadcastToAccumulation) {
  // A binomial broadcast tree on Q3 from 0.
  TaskGraph b{TaskKind::Broadcast, 0, 0,
              {{0, 1, 1}, {0, 2, 2}, {1, 3, 2}, {0, 4, 3}, {1, 5, 3}, {2, 6, 3}, {3, 7, 3}}};
  ASSERT_TRUE(validate_task_graph(b).ok());
  auto a = reverse_task_graph(b);
  EXPECT_EQ(a.kind, TaskKind::Accumulation);
  EXPECT_EQ(a.root, 0u);
  EXPECT_TRUE(validate_task_graph(a).ok()) << validate_task_graph(a).summary();
  EXPECT_EQ(task_time(a), 3u);
  EXPECT_EQ(a.edges[0], (TimedEdge{1, 0, 3}));
  auto back = reverse_task_graph(a);
  EXPECT_EQ(back.kind, TaskKind::Broadcast);
  EXPECT_EQ(back.edges, b.edges);
}

TEST(TaskGraph, ReverseSingleEdge) {
  TaskGraph t{TaskKind::Broadcast, 0, 0, {{0, 1, 1}}};
  auto r = reverse_task_graph(t);
  ASSERT_EQ(r.edges.size(), 1u);
  EXPECT_EQ(r.edges[0], (TimedEdge{1, 0, 1}));
}

TEST(TaskGraph, GlobalSumTree) {
  TaskGraph b{TaskKind::Broadcast, 0, 0, {{0, 1, 1}, {0, 2, 2}, {1, 3, 2}}};
  auto g = make_global_sum_tree(b);
  EXPECT_EQ(g.kind, TaskKind::GlobalSumTree);
  EXPECT_EQ(task_time(g), 4u);
  EXPECT_TRUE(validate_task_graph(g).ok()) << validate_task_graph(g).summary();
  auto bad = g;
  bad.edges.pop_back();
  EXPECT_FALSE(validate_task_graph(bad).ok());
}

TEST(Schedule, TwoCubeUniversalBroadcast) {
  auto s = two_cube_broadcast();
  auto r = validate_schedule(s);
  EXPECT_TRUE(r.ok()) << r.summary();
  EXPECT_EQ(schedule_time(s), 2u);
}

TEST(Schedule, DuplicateLabelCollides) {
  CommSchedule s{make_hypercube(2), {}, WireModel::TwoWay};
  s.tasks.push_back({TaskKind::Broadcast, 0, 0, {{0, 1, 3}}});
  s.tasks.push_back({TaskKind::Broadcast, 2, 0, {{2, 0, 1}, {0, 1, 3}}});
  auto r = validate_schedule(s);
  ASSERT_FALSE(r.ok());
  EXPECT_NE(r.violations.back().message.find("collision"), std::string::npos);
}

TEST(Schedule, OppositeDirectionsDependOnWireModel) {
  CommSchedule s{make_hypercube(2), {}, WireModel::TwoWay};
  s.tasks.push_back({TaskKind::Broadcast, 0, 0, {{0, 1, 3}}});
  s.tasks.push_back({TaskKind::Broadcast, 1, 0, {{1, 0, 3}}});
  EXPECT_TRUE(validate_schedule(s).ok());
  s.wire_model = WireModel::OneWay;
  EXPECT_FALSE(validate_schedule(s).ok());
}

TEST(Schedule, EdgeMustBeAWire) {
  CommSchedule s{make_hypercube(2), {}, WireModel::TwoWay};
  s.tasks.push_back({TaskKind::Broadcast, 0, 0, {{0, 3, 1}}});
  EXPECT_FALSE(validate_schedule(s).ok());
}

TEST(Schedule, TimeAccounting) {
  CommSchedule s{make_hypercube(1), {}, WireModel::TwoWay};
  EXPECT_THROW(schedule_time(s), ScheduleError);
  s.tasks.push_back({TaskKind::Broadcast, 0, 0, {{0, 1, 1}}});
  EXPECT_EQ(schedule_time(s), 1u);
}

TEST(Schedule, JsonRoundTrip) {
  auto s = two_cube_broadcast();
  s.tasks.push_back({TaskKind::Path, 0, 3, {{0, 1, 1}, {1, 3, 2}}});
  s.wire_model = WireModel::OneWay;
  const auto text = schedule_to_json(s);
  EXPECT_EQ(schedule_graph_name(text), "q2");
  auto back = schedule_from_json(text, make_hypercube(2));
  EXPECT_EQ(back.wire_model, WireModel::OneWay);
  ASSERT_EQ(back.tasks.size(), s.tasks.size());
  for (std::size_t i = 0; i < s.tasks.size(); ++i) {
    EXPECT_EQ(back.tasks[i].kind, s.tasks[i].kind);
    EXPECT_EQ(back.tasks[i].root, s.tasks[i].root);
    EXPECT_EQ(back.tasks[i].target, s.tasks[i].target);
    EXPECT_EQ(back.tasks[i].edges, s.tasks[i].edges);
  }
  EXPECT_EQ(schedule_to_json(back), text);
  EXPECT_THROW(schedule_from_json("{", make_hypercube(2)), ScheduleError);
  EXPECT_THROW(schedule_from_json(R"({"wire_model":"sideways","tasks":[]})", make_hypercube(2)),
               ScheduleError);
}

TEST(Schedule, DotColorsByTime) {
  auto dot = schedule_to_dot(two_cube_broadcast());
  EXPECT_NE(dot.find("label=\"2\""), std::string::npos);
  EXPECT_NE(dot.find("color="), std::string::npos);
}
