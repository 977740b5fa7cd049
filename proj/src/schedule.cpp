#include "cayley/schedule.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace cayley {

namespace {

constexpr std::size_t kMaxStoredViolations = 10000;
// Simple-path enumeration is exponential; cyclic tasks beyond this are refused.
constexpr std::size_t kSimplePathLimit = 64;

std::string edge_str(const TimedEdge& e) {
  std::ostringstream os;
  os << "(" << e.src << "->" << e.dst << " @" << e.time << ")";
  return os.str();
}

// Local view of a task graph: dense vertex ids plus in/out edge lists.
struct LocalGraph {
  std::vector<Vertex> vertices;  // sorted
  std::vector<std::vector<std::size_t>> out_edges;
  std::vector<std::vector<std::size_t>> in_edges;
  std::vector<std::size_t> src;
  std::vector<std::size_t> dst;

  explicit LocalGraph(const std::vector<TimedEdge>& edges) {
    for (const auto& e : edges) {
      vertices.push_back(e.src);
      vertices.push_back(e.dst);
    }
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    out_edges.resize(vertices.size());
    in_edges.resize(vertices.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
      src.push_back(index(edges[i].src));
      dst.push_back(index(edges[i].dst));
      out_edges[src.back()].push_back(i);
      in_edges[dst.back()].push_back(i);
    }
  }

  std::size_t index(Vertex v) const {
    return static_cast<std::size_t>(std::lower_bound(vertices.begin(), vertices.end(), v) -
                                    vertices.begin());
  }
  bool contains(Vertex v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }

  bool acyclic() const {
    std::vector<std::size_t> indeg(vertices.size());
    for (std::size_t v = 0; v < vertices.size(); ++v) indeg[v] = in_edges[v].size();
    std::deque<std::size_t> queue;
    for (std::size_t v = 0; v < vertices.size(); ++v)
      if (indeg[v] == 0) queue.push_back(v);
    std::size_t seen = 0;
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop_front();
      ++seen;
      for (auto e : out_edges[v])
        if (--indeg[dst[e]] == 0) queue.push_back(dst[e]);
    }
    return seen == vertices.size();
  }

  std::vector<char> reachable_from(std::size_t start, bool forward) const {
    std::vector<char> seen(vertices.size(), 0);
    std::deque<std::size_t> queue{start};
    seen[start] = 1;
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop_front();
      for (auto e : forward ? out_edges[v] : in_edges[v]) {
        const auto w = forward ? dst[e] : src[e];
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
    return seen;
  }
};

void check_precedence(const std::vector<TimedEdge>& edges, const LocalGraph& g,
                      ValidationReport& report, const std::string& label) {
  if (g.acyclic()) {
    // In a DAG the rules reduce to strictly increasing times across every
    // consecutive pair; longer paths follow by transitivity.
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
      for (auto a : g.in_edges[v])
        for (auto b : g.out_edges[v]) {
          if (edges[a].time < edges[b].time) continue;
          report.add(label, std::string(edges[a].time == edges[b].time ? "rule (ii)" : "rule (i)") +
                                ": " + edge_str(edges[a]) + " precedes " + edge_str(edges[b]) +
                                " on a path but is not earlier");
        }
    return;
  }
  if (edges.size() > kSimplePathLimit) {
    report.add(label, "cyclic task graph too large for the precedence check");
    return;
  }
  // With cycles, comparability needs paths that do not repeat a vertex,
  // except that a path may close up at its starting vertex. A walk could
  // otherwise run through the root of a global-sum tree twice.
  std::vector<char> on_path(g.vertices.size(), 0);
  std::size_t start = 0;
  std::function<bool(std::size_t, std::size_t)> extend = [&](std::size_t at, std::size_t j) {
    if (at == g.src[j]) return !on_path[g.dst[j]] || g.dst[j] == start;
    for (auto e : g.out_edges[at]) {
      const auto w = g.dst[e];
      if (on_path[w]) continue;
      on_path[w] = 1;
      const bool found = extend(w, j);
      on_path[w] = 0;
      if (found) return true;
    }
    return false;
  };
  auto before = [&](std::size_t i, std::size_t j) {
    start = g.src[i];
    on_path[g.src[i]] = on_path[g.dst[i]] = 1;
    const bool found = extend(g.dst[i], j);
    on_path[g.src[i]] = on_path[g.dst[i]] = 0;
    return found;
  };
  for (std::size_t i = 0; i < edges.size(); ++i)
    for (std::size_t j = 0; j < edges.size(); ++j) {
      if (i == j || !before(i, j)) continue;
      const bool mutual = before(j, i);
      if (edges[i].time == edges[j].time) {
        if (i < j || !mutual)
          report.add(label, "rule (ii): comparable edges " + edge_str(edges[i]) + " and " +
                                edge_str(edges[j]) + " share a time");
      } else if (edges[i].time > edges[j].time && !mutual) {
        report.add(label, "rule (i): " + edge_str(edges[i]) + " precedes " + edge_str(edges[j]) +
                              " on a path but is later");
      }
    }
}

// Out-tree (forward) or in-tree (backward) rooted at `root` covering all
// vertices of the edge set.
void check_tree(const std::vector<TimedEdge>& edges, Vertex root, bool forward,
                ValidationReport& report, const std::string& label, const char* what) {
  if (edges.empty()) return;
  LocalGraph g(edges);
  if (!g.contains(root)) {
    report.add(label, std::string(what) + " does not touch its root " + std::to_string(root));
    return;
  }
  const auto r = g.index(root);
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const auto& toward = forward ? g.in_edges[v] : g.out_edges[v];
    const std::size_t expected = v == r ? 0 : 1;
    if (toward.size() != expected)
      report.add(label, std::string(what) + ": vertex " + std::to_string(g.vertices[v]) + " has " +
                            std::to_string(toward.size()) + (forward ? " in-edges" : " out-edges") +
                            ", expected " + std::to_string(expected));
  }
  const auto seen = g.reachable_from(r, forward);
  for (std::size_t v = 0; v < g.vertices.size(); ++v)
    if (!seen[v])
      report.add(label, std::string(what) + ": vertex " + std::to_string(g.vertices[v]) +
                            (forward ? " not reached from root" : " does not reach root"));
}

void check_path(const TaskGraph& task, ValidationReport& report, const std::string& label) {
  if (task.root == task.target) {
    report.add(label, "path task with identical endpoints");
    return;
  }
  if (task.edges.empty()) {
    report.add(label, "path task has no edges");
    return;
  }
  LocalGraph g(task.edges);
  if (!g.contains(task.root) || !g.contains(task.target)) {
    report.add(label, "path does not touch both endpoints");
    return;
  }
  std::size_t at = g.index(task.root);
  const std::size_t goal = g.index(task.target);
  std::vector<char> visited(g.vertices.size(), 0);
  std::size_t steps = 0;
  visited[at] = 1;
  while (at != goal) {
    if (g.out_edges[at].size() != 1) {
      report.add(label, "path branches or stops at vertex " + std::to_string(g.vertices[at]));
      return;
    }
    at = g.dst[g.out_edges[at].front()];
    ++steps;
    if (visited[at]) {
      report.add(label, "path revisits vertex " + std::to_string(g.vertices[at]));
      return;
    }
    visited[at] = 1;
  }
  if (steps != task.edges.size())
    report.add(label, "path task has " + std::to_string(task.edges.size() - steps) +
                          " edges off the source-target path");
}

void check_global_sum(const TaskGraph& task, ValidationReport& report, const std::string& label) {
  Time into_root = 0;
  for (const auto& e : task.edges)
    if (e.dst == task.root) into_root = std::max(into_root, e.time);
  std::vector<TimedEdge> in_part;
  std::vector<TimedEdge> out_part;
  for (const auto& e : task.edges) (e.time <= into_root ? in_part : out_part).push_back(e);
  check_precedence(in_part, LocalGraph(in_part), report, label);
  check_precedence(out_part, LocalGraph(out_part), report, label);
  check_tree(in_part, task.root, false, report, label, "accumulation tree");
  check_tree(out_part, task.root, true, report, label, "distribution tree");
  LocalGraph gi(in_part);
  LocalGraph go(out_part);
  if (gi.vertices != go.vertices)
    report.add(label, "accumulation and distribution trees span different vertex sets");
}

}  // namespace

void ValidationReport::add(std::string task, std::string message) {
  if (violations.size() >= kMaxStoredViolations) {
    ++suppressed;
    return;
  }
  violations.push_back({std::move(task), std::move(message)});
}

std::string ValidationReport::summary(std::size_t max_lines) const {
  if (ok()) return "ok\n";
  std::ostringstream os;
  const std::size_t total = violations.size() + suppressed;
  os << total << " violation(s)\n";
  for (std::size_t i = 0; i < violations.size() && i < max_lines; ++i) {
    const auto& v = violations[i];
    os << "  " << (v.task.empty() ? "schedule" : v.task) << ": " << v.message << "\n";
  }
  if (total > max_lines) os << "  ... " << (total - std::min(max_lines, violations.size())) << " more\n";
  return os.str();
}

std::string task_kind_name(TaskKind kind) {
  switch (kind) {
    case TaskKind::Broadcast: return "broadcast";
    case TaskKind::Accumulation: return "accumulation";
    case TaskKind::Path: return "path";
    case TaskKind::GlobalSumTree: return "global_sum_tree";
    case TaskKind::Generic: return "generic";
  }
  return "unknown";
}

TaskKind parse_task_kind(const std::string& name) {
  if (name == "broadcast") return TaskKind::Broadcast;
  if (name == "accumulation") return TaskKind::Accumulation;
  if (name == "path") return TaskKind::Path;
  if (name == "global_sum_tree") return TaskKind::GlobalSumTree;
  if (name == "generic") return TaskKind::Generic;
  throw ScheduleError("unknown task kind '" + name + "'");
}

std::string wire_model_name(WireModel model) {
  return model == WireModel::TwoWay ? "two_way" : "one_way";
}

WireModel parse_wire_model(const std::string& name) {
  if (name == "two_way" || name == "two-way") return WireModel::TwoWay;
  if (name == "one_way" || name == "one-way") return WireModel::OneWay;
  throw ScheduleError("unknown wire model '" + name + "'");
}

std::string task_label(const TaskGraph& task) {
  if (task.kind == TaskKind::Path)
    return "path(" + std::to_string(task.root) + "->" + std::to_string(task.target) + ")";
  return task_kind_name(task.kind) + "(" + std::to_string(task.root) + ")";
}

ValidationReport validate_task_graph(const TaskGraph& task) {
  ValidationReport report;
  const auto label = task_label(task);
  for (const auto& e : task.edges) {
    if (e.time < 1) report.add(label, "edge " + edge_str(e) + " has time 0");
    if (e.src == e.dst) report.add(label, "edge " + edge_str(e) + " is a loop");
  }
  if (!report.ok()) return report;
  // A global-sum tree passes through its root twice; its halves are checked
  // separately.
  if (task.kind != TaskKind::GlobalSumTree) check_precedence(task.edges, LocalGraph(task.edges), report, label);
  switch (task.kind) {
    case TaskKind::Broadcast: check_tree(task.edges, task.root, true, report, label, "broadcast"); break;
    case TaskKind::Accumulation:
      check_tree(task.edges, task.root, false, report, label, "accumulation");
      break;
    case TaskKind::Path: check_path(task, report, label); break;
    case TaskKind::GlobalSumTree: check_global_sum(task, report, label); break;
    case TaskKind::Generic: break;
  }
  return report;
}

ValidationReport validate_schedule(const CommSchedule& schedule) {
  ValidationReport report;
  for (const auto& task : schedule.tasks) {
    auto r = validate_task_graph(task);
    for (auto& v : r.violations) report.add(std::move(v.task), std::move(v.message));
    report.suppressed += r.suppressed;
  }

  struct Use {
    Time time;
    Vertex a;
    Vertex b;
    std::uint32_t task;
    bool operator<(const Use& o) const { return std::tie(time, a, b) < std::tie(o.time, o.a, o.b); }
    bool same_slot(const Use& o) const { return time == o.time && a == o.a && b == o.b; }
  };
  std::vector<Use> uses;
  std::size_t total = 0;
  for (const auto& t : schedule.tasks) total += t.edges.size();
  uses.reserve(total);
  const bool one_way = schedule.wire_model == WireModel::OneWay;
  for (std::uint32_t i = 0; i < schedule.tasks.size(); ++i) {
    const auto& task = schedule.tasks[i];
    for (const auto& e : task.edges) {
      if (!schedule.graph.has_edge(e.src, e.dst))
        report.add(task_label(task), "edge " + edge_str(e) + " is not a wire of the network");
      Vertex a = e.src;
      Vertex b = e.dst;
      if (one_way && a > b) std::swap(a, b);
      uses.push_back({e.time, a, b, i});
    }
  }
  std::sort(uses.begin(), uses.end());
  for (std::size_t i = 1; i < uses.size(); ++i) {
    if (!uses[i].same_slot(uses[i - 1])) continue;
    const auto& u = uses[i];
    report.add("", std::string(one_way ? "one-way" : "two-way") + " collision at time " +
                       std::to_string(u.time) + " on wire " + std::to_string(u.a) +
                       (one_way ? "<->" : "->") + std::to_string(u.b) + " between " +
                       task_label(schedule.tasks[uses[i - 1].task]) + " and " +
                       task_label(schedule.tasks[u.task]));
  }
  return report;
}

Time task_time(const TaskGraph& task) {
  Time tau = 0;
  for (const auto& e : task.edges) tau = std::max(tau, e.time);
  return tau;
}

TaskGraph reverse_task_graph(const TaskGraph& task, Time tau) {
  if (tau == 0) tau = task_time(task);
  if (tau < task_time(task)) throw ScheduleError("reversal time shorter than the task");
  TaskGraph out;
  out.root = task.root;
  out.target = task.target;
  switch (task.kind) {
    case TaskKind::Broadcast: out.kind = TaskKind::Accumulation; break;
    case TaskKind::Accumulation: out.kind = TaskKind::Broadcast; break;
    case TaskKind::Path:
      out.kind = TaskKind::Path;
      out.root = task.target;
      out.target = task.root;
      break;
    case TaskKind::GlobalSumTree: out.kind = TaskKind::GlobalSumTree; break;
    case TaskKind::Generic: out.kind = TaskKind::Generic; break;
  }
  out.edges.reserve(task.edges.size());
  for (const auto& e : task.edges) out.edges.push_back({e.dst, e.src, tau - e.time + 1});
  return out;
}

Time schedule_time(const CommSchedule& schedule) {
  Time tau = 0;
  for (const auto& t : schedule.tasks) tau = std::max(tau, task_time(t));
  if (tau == 0) throw ScheduleError("empty schedule has no time");
  return tau;
}

TaskGraph make_global_sum_tree(const TaskGraph& broadcast) {
  const Time tau = task_time(broadcast);
  TaskGraph out;
  out.kind = TaskKind::GlobalSumTree;
  out.root = broadcast.root;
  auto in_tree = reverse_task_graph(broadcast);
  out.edges = in_tree.edges;
  for (const auto& e : broadcast.edges) out.edges.push_back({e.src, e.dst, e.time + tau});
  return out;
}

std::string schedule_to_json(const CommSchedule& schedule) {
  std::ostringstream os;
  os << "{\"graph\":" << nlohmann::json(schedule.graph.name()).dump() << ",\"tasks\":[";
  for (std::size_t i = 0; i < schedule.tasks.size(); ++i) {
    const auto& t = schedule.tasks[i];
    if (i) os << ',';
    os << "{\"kind\":\"" << task_kind_name(t.kind) << "\",";
    if (t.kind == TaskKind::Path)
      os << "\"src\":" << t.root << ",\"dst\":" << t.target << ',';
    else
      os << "\"root\":" << t.root << ',';
    os << "\"edges\":[";
    for (std::size_t j = 0; j < t.edges.size(); ++j) {
      const auto& e = t.edges[j];
      if (j) os << ',';
      os << '[' << e.src << ',' << e.dst << ',' << e.time << ']';
    }
    os << "]}";
  }
  os << "],\"wire_model\":\"" << wire_model_name(schedule.wire_model) << "\"}\n";
  return os.str();
}

std::string schedule_graph_name(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (j.contains("graph") && j["graph"].is_string()) return j["graph"].get<std::string>();
  return {};
}

CommSchedule schedule_from_json(const std::string& text, CayleyGraph graph) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ScheduleError(std::string("malformed schedule JSON: ") + e.what());
  }
  CommSchedule s{std::move(graph), {}, WireModel::TwoWay};
  try {
    s.wire_model = parse_wire_model(j.at("wire_model").get<std::string>());
    for (const auto& jt : j.at("tasks")) {
      TaskGraph t;
      t.kind = parse_task_kind(jt.at("kind").get<std::string>());
      if (t.kind == TaskKind::Path) {
        t.root = jt.at("src").get<Vertex>();
        t.target = jt.at("dst").get<Vertex>();
      } else {
        t.root = jt.at("root").get<Vertex>();
      }
      for (const auto& je : jt.at("edges")) {
        if (!je.is_array() || je.size() != 3) throw ScheduleError("edge must be [src,dst,time]");
        const auto time = je[2].get<long long>();
        if (time < 0) throw ScheduleError("negative edge time");
        t.edges.push_back({je[0].get<Vertex>(), je[1].get<Vertex>(), static_cast<Time>(time)});
      }
      s.tasks.push_back(std::move(t));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ScheduleError(std::string("invalid schedule document: ") + e.what());
  }
  return s;
}

std::string schedule_to_dot(const CommSchedule& schedule) {
  static const char* palette[] = {"black",  "red",    "blue",    "darkgreen", "orange",
                                  "purple", "brown",  "magenta", "cyan4",     "gold4"};
  std::ostringstream os;
  os << "digraph schedule {\n";
  for (const auto& t : schedule.tasks) {
    const auto label = task_label(t);
    for (const auto& e : t.edges)
      os << "  " << e.src << " -> " << e.dst << " [label=\"" << e.time << "\",color=\""
         << palette[e.time % 10] << "\",task=\"" << label << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace cayley
