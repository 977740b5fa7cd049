#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cayley/group.hpp"

namespace cayley {

using Time = std::uint32_t;

struct TimedEdge {
  Vertex src = 0;
  Vertex dst = 0;
  Time time = 1;
  friend bool operator==(const TimedEdge&, const TimedEdge&) = default;
};

/// Generic tasks get the precedence checks only.
enum class TaskKind { Broadcast, Accumulation, Path, GlobalSumTree, Generic };

enum class WireModel { TwoWay, OneWay };

/// One task: a time-labeled edge set moving a single word. `root` is the
/// broadcast source / accumulation sink / path source; `target` is only
/// meaningful for Path tasks.
struct TaskGraph {
  TaskKind kind = TaskKind::Broadcast;
  Vertex root = 0;
  Vertex target = 0;
  std::vector<TimedEdge> edges;
};

std::string task_label(const TaskGraph& task);

struct CommSchedule {
  CayleyGraph graph;
  std::vector<TaskGraph> tasks;
  WireModel wire_model = WireModel::TwoWay;
};

struct Violation {
  std::string task;  // empty for schedule-level findings
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::size_t suppressed = 0;  // findings counted but not stored

  bool ok() const noexcept { return violations.empty() && suppressed == 0; }
  void add(std::string task, std::string message);
  std::string summary(std::size_t max_lines = 20) const;
};

class ScheduleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Checks the precedence rules on every pair of comparable edges (two edges
/// are comparable when a directed path of the task begins with one and ends
/// with the other) plus the structural shape demanded by the task kind.
ValidationReport validate_task_graph(const TaskGraph& task);

/// Per-task validation, membership of every edge in the host graph, and
/// label collisions under the schedule's wire model.
ValidationReport validate_schedule(const CommSchedule& schedule);

/// Reverse arrows and map times t -> tau - t + 1, tau defaulting to the
/// task's own time. Broadcast and Accumulation swap; a Path from a to b
/// becomes a Path from b to a. Reversing a whole schedule needs the
/// schedule's tau so that tasks stay aligned with each other.
TaskGraph reverse_task_graph(const TaskGraph& task, Time tau = 0);

Time task_time(const TaskGraph& task);

/// Maximum edge time over all tasks. Throws ScheduleError when there are no
/// edges.
Time schedule_time(const CommSchedule& schedule);

/// Accumulation of the broadcast's reverse followed by the broadcast itself,
/// shifted past the accumulation.
TaskGraph make_global_sum_tree(const TaskGraph& broadcast);

std::string wire_model_name(WireModel model);
WireModel parse_wire_model(const std::string& name);
std::string task_kind_name(TaskKind kind);
TaskKind parse_task_kind(const std::string& name);

/// {"wire_model": ..., "graph": ..., "tasks": [{"kind", "root" | "src"/"dst", "edges"}]}
std::string schedule_to_json(const CommSchedule& schedule);
/// Parses a schedule; the host graph comes from the caller.
CommSchedule schedule_from_json(const std::string& text, CayleyGraph graph);
/// The "graph" field of a schedule document, empty when absent.
std::string schedule_graph_name(const std::string& text);
std::string schedule_to_dot(const CommSchedule& schedule);

}  // namespace cayley
