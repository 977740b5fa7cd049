#include "cayley/sim.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "json.hpp"

namespace cayley {

namespace {

constexpr long kNever = -1;
constexpr std::size_t kMaxListed = 1000;
constexpr Time kInf = std::numeric_limits<Time>::max();

std::vector<TimedEdge> by_time(const TaskGraph& task) {
  auto edges = task.edges;
  std::stable_sort(edges.begin(), edges.end(), [](const TimedEdge& a, const TimedEdge& b) { return a.time < b.time; });
  return edges;
}

std::string where(std::size_t task, const TimedEdge& e) {
  return "task " + std::to_string(task) + " edge " + std::to_string(e.src) + "->" + std::to_string(e.dst) + " @" +
         std::to_string(e.time);
}

// Arrival time of a single word spreading from `root`.
std::vector<Time> spread(const CayleyGraph& g, std::size_t index, Vertex root, Time start,
                         const std::vector<TimedEdge>& edges) {
  std::vector<Time> have(g.vertex_count(), kInf);
  have[root] = start;
  for (const auto& e : edges) {
    if (have[e.src] >= e.time) throw SimError(SimErrc::PrematureFire, "word not present before " + where(index, e));
    have[e.dst] = std::min(have[e.dst], e.time);
  }
  return have;
}

struct Collected {
  std::vector<Vertex> sources;  // words merged into the root
  std::vector<Time> arrival;    // per source, time it reached the root
  double sum = 0.0;
};

// Partial sums flowing towards `root`. A vertex's word leaves with its first
// send; anything arriving at or after that time is lost.
Collected collect(const CayleyGraph& g, std::size_t index, Vertex root, const std::vector<TimedEdge>& edges,
                  const std::vector<double>* values) {
  const std::size_t p = g.vertex_count();
  std::vector<std::vector<Vertex>> held(p);
  std::vector<double> partial(p, 0.0);
  std::vector<Time> sent(p, kInf);
  Collected out;
  std::vector<Time> arrival(p, kInf);
  for (Vertex v = 0; v < p; ++v) {
    if (v != root) held[v].push_back(v);
    if (values && v != root) partial[v] = (*values)[v];
  }
  for (const auto& e : edges) sent[e.src] = std::min(sent[e.src], e.time);
  for (const auto& e : edges)
    if (sent[e.dst] <= e.time)
      throw SimError(SimErrc::PrematureFire, "summand arrives after the partial sum left, " + where(index, e));
  for (const auto& e : edges) {
    held[e.dst].insert(held[e.dst].end(), held[e.src].begin(), held[e.src].end());
    partial[e.dst] += partial[e.src];
    if (e.dst == root)
      for (Vertex s : held[e.src]) arrival[s] = std::min(arrival[s], e.time);
  }
  std::vector<char> seen(p, 0);
  for (Vertex s : held[root]) {
    if (seen[s]) throw SimError(SimErrc::DoubleCount, "word of " + std::to_string(s) + " counted twice at root " +
                                                           std::to_string(root) + " in task " + std::to_string(index));
    seen[s] = 1;
    out.sources.push_back(s);
    out.arrival.push_back(arrival[s]);
  }
  out.sum = partial[root];
  return out;
}

class DistanceOracle {
 public:
  explicit DistanceOracle(const CayleyGraph& g) : g_(g), cube_(g.hypercube_dimension().has_value()) {}
  // Distance from u to every vertex.
  const std::vector<int>& from(Vertex u) {
    if (cached_ != u || row_.empty()) {
      cached_ = u;
      if (cube_) {
        row_.resize(g_.vertex_count());
        for (Vertex v = 0; v < g_.vertex_count(); ++v) row_[v] = std::popcount(u ^ v);
      } else {
        row_ = distances_from(g_, u);
      }
    }
    return row_;
  }

 private:
  const CayleyGraph& g_;
  bool cube_;
  Vertex cached_ = 0;
  std::vector<int> row_;
};

class Tally {
 public:
  Tally(SimReport& r, std::size_t p, bool per_pair) : r_(r) {
    if (per_pair) r_.completion = std::vector<std::vector<long>>(p, std::vector<long>(p, kNever));
    if (r_.completion)
      for (std::size_t v = 0; v < p; ++v) (*r_.completion)[v][v] = 0;
  }
  void record(Vertex s, Vertex t, Time when) {
    if (!r_.completion || when == kInf) return;
    long& c = (*r_.completion)[s][t];
    if (c == kNever || c > static_cast<long>(when)) c = static_cast<long>(when);
  }
  void require(Vertex s, Vertex t, bool delivered) {
    ++r_.required_pairs;
    if (delivered) {
      ++r_.delivered_pairs;
      return;
    }
    ++r_.undelivered_total;
    if (r_.undelivered.size() < kMaxListed) r_.undelivered.emplace_back(s, t);
  }

 private:
  SimReport& r_;
};

bool wanted(const std::vector<int>& distances, int dist) {
  if (dist <= 0) return false;
  return distances.empty() || std::find(distances.begin(), distances.end(), dist) != distances.end();
}

std::vector<std::vector<std::size_t>> tasks_by_root(const CommSchedule& s, TaskKind kind) {
  std::vector<std::vector<std::size_t>> out(s.graph.vertex_count());
  for (std::size_t i = 0; i < s.tasks.size(); ++i)
    if (s.tasks[i].kind == kind && s.tasks[i].root < out.size()) out[s.tasks[i].root].push_back(i);
  return out;
}

void precheck(const CommSchedule& s, const SimOptions& o, SimReport& r) {
  if (o.require_valid) {
    const auto rep = validate_schedule(s);
    if (!rep.ok()) throw SimError(SimErrc::InvalidSchedule, rep.summary(5));
  }
  for (const auto& t : s.tasks)
    for (const auto& e : t.edges) r.tau = std::max(r.tau, e.time);
}

void simulate_broadcast(const CommSchedule& s, const DeliveryGoal& goal, Tally& tally) {
  const auto roots = tasks_by_root(s, TaskKind::Broadcast);
  DistanceOracle dist(s.graph);
  const std::size_t p = s.graph.vertex_count();
  for (Vertex r = 0; r < p; ++r) {
    std::vector<Time> best(p, kInf);
    best[r] = 0;
    for (auto i : roots[r]) {
      const auto have = spread(s.graph, i, r, 0, by_time(s.tasks[i]));
      for (Vertex v = 0; v < p; ++v) best[v] = std::min(best[v], have[v]);
    }
    const auto& row = dist.from(r);
    for (Vertex v = 0; v < p; ++v) {
      if (v != r) tally.record(r, v, best[v]);
      if (wanted(goal.distances, row[v])) tally.require(r, v, best[v] != kInf);
    }
  }
}

void simulate_exchange(const CommSchedule& s, const DeliveryGoal& goal, Tally& tally) {
  const auto roots = tasks_by_root(s, TaskKind::Path);
  DistanceOracle dist(s.graph);
  const std::size_t p = s.graph.vertex_count();
  for (Vertex x = 0; x < p; ++x) {
    std::vector<Time> best(p, kInf);
    for (auto i : roots[x]) {
      const auto& task = s.tasks[i];
      if (task.target >= p) continue;
      const auto have = spread(s.graph, i, x, 0, by_time(task));
      // The payload is stamped for its target only.
      best[task.target] = std::min(best[task.target], have[task.target]);
    }
    const auto& row = dist.from(x);
    for (Vertex y = 0; y < p; ++y) {
      if (y != x) tally.record(x, y, best[y]);
      if (wanted(goal.distances, row[y])) tally.require(x, y, best[y] != kInf);
    }
  }
}

void simulate_accumulation_goal(const CommSchedule& s, const std::vector<int>& distances, Tally& tally,
                                const std::vector<double>* values, std::vector<std::pair<Vertex, double>>* sums) {
  const std::size_t p = s.graph.vertex_count();
  std::vector<std::vector<Time>> best(p);
  for (std::size_t i = 0; i < s.tasks.size(); ++i) {
    const auto& task = s.tasks[i];
    if (task.kind != TaskKind::Accumulation || task.root >= p) continue;
    const auto got = collect(s.graph, i, task.root, by_time(task), values);
    if (sums) sums->emplace_back(task.root, got.sum);
    auto& row = best[task.root];
    if (row.empty()) row.assign(p, kInf);
    for (std::size_t k = 0; k < got.sources.size(); ++k)
      row[got.sources[k]] = std::min(row[got.sources[k]], got.arrival[k]);
  }
  DistanceOracle dist(s.graph);
  for (Vertex u = 0; u < p; ++u) {
    const auto& row = dist.from(u);
    for (Vertex r = 0; r < p; ++r) {
      const Time t = best[r].empty() ? kInf : best[r][u];
      if (u != r) tally.record(u, r, t);
      if (wanted(distances, row[r])) tally.require(u, r, t != kInf);
    }
  }
}

// Accumulate into the root up to the last edge entering it, then spread the
// total.
void simulate_global_sum(const CommSchedule& s, Tally& tally) {
  const std::size_t p = s.graph.vertex_count();
  std::vector<std::vector<char>> knows(p, std::vector<char>(p, 0));
  for (Vertex v = 0; v < p; ++v) knows[v][v] = 1;
  for (std::size_t i = 0; i < s.tasks.size(); ++i) {
    const auto& task = s.tasks[i];
    if (task.kind != TaskKind::GlobalSumTree || task.root >= p) continue;
    Time split = 0;
    for (const auto& e : task.edges)
      if (e.dst == task.root) split = std::max(split, e.time);
    std::vector<TimedEdge> up, down;
    for (const auto& e : by_time(task)) (e.time <= split ? up : down).push_back(e);
    const auto got = collect(s.graph, i, task.root, up, nullptr);
    std::vector<Vertex> total = got.sources;
    total.push_back(task.root);
    for (std::size_t k = 0; k < got.sources.size(); ++k) tally.record(got.sources[k], task.root, got.arrival[k]);
    const auto have = spread(s.graph, i, task.root, split, down);
    for (Vertex v = 0; v < p; ++v) {
      if (have[v] == kInf && v != task.root) continue;
      for (Vertex u : total) {
        knows[v][u] = 1;
        if (v != task.root && u != v) tally.record(u, v, have[v]);
      }
    }
  }
  for (Vertex u = 0; u < p; ++u)
    for (Vertex v = 0; v < p; ++v)
      if (u != v) tally.require(u, v, knows[v][u]);
}

}  // namespace

std::string goal_kind_name(DeliveryGoal::Kind k) {
  switch (k) {
    case DeliveryGoal::Kind::Broadcast: return "broadcast";
    case DeliveryGoal::Kind::Accumulation: return "accumulation";
    case DeliveryGoal::Kind::Exchange: return "exchange";
    case DeliveryGoal::Kind::GlobalSum: return "global_sum";
  }
  return "?";
}

DeliveryGoal::Kind parse_goal_kind(const std::string& name) {
  for (auto k : {DeliveryGoal::Kind::Broadcast, DeliveryGoal::Kind::Accumulation, DeliveryGoal::Kind::Exchange,
                 DeliveryGoal::Kind::GlobalSum})
    if (goal_kind_name(k) == name) return k;
  if (name == "global-sum") return DeliveryGoal::Kind::GlobalSum;
  throw std::invalid_argument("unknown goal '" + name + "'");
}

SimReport simulate(const CommSchedule& schedule, const DeliveryGoal& goal, const SimOptions& options) {
  SimReport r;
  precheck(schedule, options, r);
  Tally tally(r, schedule.graph.vertex_count(), options.per_pair && schedule.graph.vertex_count() <= 1024);
  switch (goal.kind) {
    case DeliveryGoal::Kind::Broadcast: simulate_broadcast(schedule, goal, tally); break;
    case DeliveryGoal::Kind::Exchange: simulate_exchange(schedule, goal, tally); break;
    case DeliveryGoal::Kind::Accumulation:
      simulate_accumulation_goal(schedule, goal.distances, tally, nullptr, nullptr);
      break;
    case DeliveryGoal::Kind::GlobalSum: simulate_global_sum(schedule, tally); break;
  }
  r.ok = r.undelivered_total == 0;
  return r;
}

AccumulationResult simulate_accumulation(const CommSchedule& schedule, const std::vector<double>& values,
                                         const std::vector<int>& distances, const SimOptions& options) {
  if (values.size() != schedule.graph.vertex_count()) throw std::invalid_argument("one value per vertex expected");
  AccumulationResult out;
  precheck(schedule, options, out.report);
  Tally tally(out.report, schedule.graph.vertex_count(), options.per_pair && schedule.graph.vertex_count() <= 1024);
  simulate_accumulation_goal(schedule, distances, tally, &values, &out.sums);
  out.report.ok = out.report.undelivered_total == 0;
  return out;
}

std::string sim_report_json(const SimReport& report) {
  nlohmann::json j;
  j["ok"] = report.ok;
  j["tau"] = report.tau;
  j["required_pairs"] = report.required_pairs;
  j["delivered_pairs"] = report.delivered_pairs;
  auto und = nlohmann::json::array();
  for (const auto& [a, b] : report.undelivered) und.push_back({a, b});
  j["undelivered"] = und;
  j["undelivered_total"] = report.undelivered_total;
  if (report.completion) j["per_pair_completion"] = *report.completion;
  return j.dump() + "\n";
}

}  // namespace cayley
