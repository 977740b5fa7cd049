#include "cayley/regular_order.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "cayley/bounds.hpp"
#include "cayley/subsets.hpp"
#include "json.hpp"

namespace cayley {

namespace {

std::string block_name(std::size_t a) { return "block " + std::to_string(a); }

template <class T>
bool is_permutation_of_range(const std::vector<T>& v, std::size_t n) {
  if (v.size() != n) return false;
  std::vector<char> seen(n, 0);
  for (T x : v) {
    if (static_cast<std::size_t>(x) >= n || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

}  // namespace

ValidationReport check_regular_order(const CayleyGraph& graph, const RegularOrder& order) {
  ValidationReport rep;
  if (!graph.group()) {
    rep.add("", "regular orders are only checked on Cayley graphs with a trivial subgroup");
    return rep;
  }
  const std::size_t p = graph.vertex_count();
  const std::size_t d = graph.degree();
  if (!is_permutation_of_range(order.generator_order, d)) rep.add("", "generator_order is not a permutation");
  if (!is_permutation_of_range(order.vertex_order, p)) rep.add("", "vertex_order is not a permutation");
  if (order.parents.size() + 1 != p) rep.add("", "expected one parent direction per non-identity vertex");
  if (!rep.ok()) return rep;

  // (i)
  if (order.vertex_order[0] != graph.identity_vertex()) rep.add("", "(i) g_0 is not the identity");

  // (ii)
  const auto dist = distances_from(graph, graph.identity_vertex());
  for (std::size_t i = 1; i < p; ++i)
    if (dist[order.vertex_order[i]] < dist[order.vertex_order[i - 1]]) {
      rep.add(block_name((i - 1) / d), "(ii) vertex at position " + std::to_string(i) +
                                           " is closer to g_0 than the one before it");
      break;
    }

  // (iii)
  std::vector<std::size_t> position(p);
  for (std::size_t i = 0; i < p; ++i) position[order.vertex_order[i]] = i;
  const auto& group = *graph.group();
  for (std::size_t a = 0; a * d + 1 < p; ++a) {
    std::vector<char> used(d, 0);
    for (std::size_t c = 1; c <= d && a * d + c < p; ++c) {
      const std::size_t i = a * d + c;
      const std::uint32_t dir = order.parents[i - 1];
      if (dir >= d) {
        rep.add(block_name(a), "(iii) parent direction out of range at position " + std::to_string(i));
        continue;
      }
      if (used[dir]) rep.add(block_name(a), "(iii) direction " + std::to_string(dir) + " repeated");
      used[dir] = 1;
      const Element gen = graph.generators()[order.generator_order[dir]];
      const Vertex gi = order.vertex_order[i];
      const Vertex parent = group.multiply(gi, group.inverse(gen));
      if (position[parent] > a * d)
        rep.add(block_name(a), "(iii) parent of position " + std::to_string(i) + " is not among the first " +
                                   std::to_string(a * d + 1));
      if (dist[parent] != dist[gi] - 1)
        rep.add(block_name(a), "(iii) parent of position " + std::to_string(i) + " is not one sphere inward");
    }
  }
  return rep;
}

RegularOrder hypercube_regular_order(int d) {
  if (d < 1 || d > 24) throw std::invalid_argument("dimension must be in 1..24");
  const auto o = order_all_subsets(d, d, {false, false, true, true});
  RegularOrder r;
  for (int g = 0; g < d; ++g) r.generator_order.push_back(static_cast<std::uint32_t>(g));
  r.vertex_order.push_back(0);
  for (std::size_t i = 1; i <= o.subsets.size(); ++i) {
    r.vertex_order.push_back(static_cast<Vertex>(o.subsets[i - 1]));
    r.parents.push_back(static_cast<std::uint32_t>(required_bit(i, d)));
  }
  return r;
}

CommSchedule broadcast_from_regular_order(const CayleyGraph& graph, const RegularOrder& order) {
  if (const auto rep = check_regular_order(graph, order); !rep.ok())
    throw RegularOrderInvalid("invalid regular order: " + rep.summary(5));
  const std::size_t p = graph.vertex_count();
  if (p * (p - 1) > (std::size_t{1} << 25)) throw std::invalid_argument("graph too large to materialize");
  const std::size_t d = graph.degree();
  const auto& group = *graph.group();

  std::vector<TimedEdge> tmpl;
  for (std::size_t i = 1; i < p; ++i) {
    const Vertex gi = order.vertex_order[i];
    const Element gen = graph.generators()[order.generator_order[order.parents[i - 1]]];
    tmpl.push_back({group.multiply(gi, group.inverse(gen)), gi, static_cast<Time>((i - 1) / d + 1)});
  }
  CommSchedule s{graph, {}, WireModel::TwoWay};
  s.tasks.reserve(p);
  for (Vertex g = 0; g < p; ++g) {
    TaskGraph task{TaskKind::Broadcast, g, 0, {}};
    task.edges.reserve(tmpl.size());
    for (const auto& e : tmpl) task.edges.push_back({group.multiply(g, e.src), group.multiply(g, e.dst), e.time});
    s.tasks.push_back(std::move(task));
  }
  return s;
}

// ---------------------------------------------------------------- search

namespace {

class BroadcastSearch {
 public:
  BroadcastSearch(const CayleyGraph& g, std::uint64_t budget) : graph_(g), budget_(budget) {
    p_ = g.vertex_count();
    full_ = p_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << p_) - 1;
    for (Vertex u = 0; u < p_; ++u)
      for (std::size_t k = 0; k < g.degree(); ++k) {
        const Vertex v = g.neighbor(u, k);
        if (v != u) edges_.emplace_back(u, v);
      }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    tau_ = static_cast<Time>(twoway_broadcast_lower_bound(p_, g.degree()));

    // within_[k][v]: vertices at distance <= k from v (towards v).
    std::vector<std::vector<int>> dist(p_);
    for (Vertex v = 0; v < p_; ++v) dist[v] = distances_from(g, v);
    within_.assign(tau_ + 1, std::vector<std::uint64_t>(p_, 0));
    for (Time k = 0; k <= tau_; ++k)
      for (Vertex v = 0; v < p_; ++v)
        for (Vertex u = 0; u < p_; ++u)
          if (dist[u][v] >= 0 && dist[u][v] <= static_cast<int>(k)) within_[k][v] |= std::uint64_t{1} << u;
    informed_.resize(p_);
    for (Vertex r = 0; r < p_; ++r) informed_[r] = std::uint64_t{1} << r;
  }

  SearchResult run() {
    SearchResult res;
    res.target_time = tau_;
    // Distance alone can rule the target out.
    bool reachable = true;
    for (Vertex r = 0; r < p_; ++r)
      if (!reaches_in_time(r, tau_)) reachable = false;
    if (reachable && step(1)) {
      res.status = SearchStatus::Found;
      res.schedule = build();
    } else {
      res.status = exhausted_ ? SearchStatus::BudgetExhausted : SearchStatus::ProvenInfeasible;
    }
    res.nodes = nodes_;
    return res;
  }

 private:
  bool reaches_in_time(Vertex r, Time steps) const {
    for (std::uint64_t rest = full_ & ~informed_[r]; rest; rest &= rest - 1)
      if (!(within_[steps][std::countr_zero(rest)] & informed_[r])) return false;
    return true;
  }

  std::uint64_t demand() const {
    std::uint64_t total = 0;
    for (Vertex r = 0; r < p_; ++r) total += static_cast<std::uint64_t>(std::popcount(full_ & ~informed_[r]));
    return total;
  }

  bool step(Time t) {
    if (t == tau_) return last_step();
    const std::uint64_t capacity = static_cast<std::uint64_t>(tau_ - t + 1) * edges_.size();
    const std::uint64_t need = demand();
    if (need > capacity) return false;
    assign_.emplace_back(edges_.size(), -1);
    claimed_.assign(p_, 0);
    if (edge(t, 0, capacity - need)) return true;
    assign_.pop_back();
    return false;
  }

  bool edge(Time t, std::size_t k, std::uint64_t slack) {
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return false;
    }
    if (k == edges_.size()) return close_step(t);
    const auto [u, v] = edges_[k];
    const std::uint64_t ub = std::uint64_t{1} << u;
    const std::uint64_t vb = std::uint64_t{1} << v;
    for (Vertex r = 0; r < p_; ++r) {
      if (!(informed_[r] & ub) || (informed_[r] & vb) || (claimed_[r] & vb)) continue;
      claimed_[r] |= vb;
      assign_.back()[k] = static_cast<int>(r);
      if (edge(t, k + 1, slack)) return true;
      claimed_[r] &= ~vb;
      if (exhausted_) return false;
    }
    assign_.back()[k] = -1;
    return slack > 0 && edge(t, k + 1, slack - 1);
  }

  bool close_step(Time t) {
    const auto saved_informed = informed_;
    const auto saved_claimed = claimed_;
    for (Vertex r = 0; r < p_; ++r) informed_[r] |= claimed_[r];
    bool ok = true;
    for (Vertex r = 0; r < p_ && ok; ++r) ok = reaches_in_time(r, tau_ - t);
    if (ok && step(t + 1)) return true;
    informed_ = saved_informed;
    claimed_ = saved_claimed;
    return false;
  }

  // Every remaining (task, vertex) demand needs its own in-edge; demands on
  // different vertices never share an edge, so match each vertex alone.
  bool last_step() {
    ++nodes_;
    std::vector<int> assign(edges_.size(), -1);
    std::vector<std::vector<std::size_t>> in(p_);
    for (std::size_t k = 0; k < edges_.size(); ++k) in[edges_[k].second].push_back(k);
    for (Vertex v = 0; v < p_; ++v) {
      std::vector<Vertex> tasks;
      for (Vertex r = 0; r < p_; ++r)
        if (!(informed_[r] >> v & 1)) tasks.push_back(r);
      if (tasks.size() > in[v].size()) return false;
      std::vector<int> owner(in[v].size(), -1);  // edge slot -> task index
      std::function<bool(std::size_t, std::vector<char>&)> augment = [&](std::size_t ti, std::vector<char>& seen) {
        for (std::size_t j = 0; j < in[v].size(); ++j) {
          const Vertex u = edges_[in[v][j]].first;
          if (seen[j] || !(informed_[tasks[ti]] >> u & 1)) continue;
          seen[j] = 1;
          if (owner[j] < 0 || augment(static_cast<std::size_t>(owner[j]), seen)) {
            owner[j] = static_cast<int>(ti);
            return true;
          }
        }
        return false;
      };
      for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
        std::vector<char> seen(in[v].size(), 0);
        if (!augment(ti, seen)) return false;
      }
      for (std::size_t j = 0; j < in[v].size(); ++j)
        if (owner[j] >= 0) assign[in[v][j]] = static_cast<int>(tasks[static_cast<std::size_t>(owner[j])]);
    }
    assign_.push_back(std::move(assign));
    return true;
  }

  CommSchedule build() const {
    CommSchedule s{graph_, {}, WireModel::TwoWay};
    for (Vertex r = 0; r < p_; ++r) s.tasks.push_back({TaskKind::Broadcast, r, 0, {}});
    for (std::size_t t = 0; t < assign_.size(); ++t)
      for (std::size_t k = 0; k < edges_.size(); ++k)
        if (assign_[t][k] >= 0)
          s.tasks[static_cast<std::size_t>(assign_[t][k])].edges.push_back(
              {edges_[k].first, edges_[k].second, static_cast<Time>(t + 1)});
    return s;
  }

  const CayleyGraph& graph_;
  std::uint64_t budget_;
  std::size_t p_ = 0;
  std::uint64_t full_ = 0;
  Time tau_ = 0;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<std::vector<std::uint64_t>> within_;
  std::vector<std::uint64_t> informed_;
  std::vector<std::uint64_t> claimed_;
  std::vector<std::vector<int>> assign_;  // per step: edge -> task or -1
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

SearchResult search_broadcast_schedule(const CayleyGraph& graph, std::uint64_t budget) {
  if (graph.vertex_count() < 2 || graph.vertex_count() > 64)
    throw std::invalid_argument("search needs 2 <= P <= 64");
  return BroadcastSearch(graph, budget).run();
}

std::string search_status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::BudgetExhausted: return "budget_exhausted";
    case SearchStatus::ProvenInfeasible: return "proven_infeasible";
  }
  return "?";
}

std::string regular_order_to_json(const RegularOrder& order) {
  nlohmann::json j;
  j["generator_order"] = order.generator_order;
  j["vertex_order"] = order.vertex_order;
  j["parents"] = order.parents;
  return j.dump() + "\n";
}

RegularOrder regular_order_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  RegularOrder r;
  r.generator_order = j.at("generator_order").get<std::vector<std::uint32_t>>();
  r.vertex_order = j.at("vertex_order").get<std::vector<Vertex>>();
  r.parents = j.at("parents").get<std::vector<std::uint32_t>>();
  return r;
}

}  // namespace cayley
