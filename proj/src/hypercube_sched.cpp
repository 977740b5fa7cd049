#include "cayley/hypercube_sched.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <stdexcept>

#include "cayley/bounds.hpp"
#include "json.hpp"

namespace cayley {

namespace {

void check_dimension(int d, int max_d) {
  if (d < 1 || d > max_d)
    throw std::invalid_argument("dimension must be in 1.." + std::to_string(max_d));
}

int parity(Vertex x) { return std::popcount(x) & 1; }

Mask bit(int e) { return Mask{1} << e; }

}  // namespace

// ---------------------------------------------------------------- broadcast

BroadcastTemplate broadcast_template(int d, int l) {
  check_dimension(d, 24);
  if (l < 1 || l > d) throw std::invalid_argument("radius must be in 1..d");
  BroadcastTemplate t;
  t.d = d;
  t.l = l;
  t.ordering = order_all_subsets(d, l, {false, false, true, true});
  const auto& sets = t.ordering.subsets;
  const std::size_t n = sets.size();
  const auto du = static_cast<std::size_t>(d);
  for (std::size_t i = 1; i <= n; ++i) {
    const Mask v = sets[i - 1];
    const Mask u = v ^ bit(required_bit(i, d));
    t.edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), static_cast<Time>((i - 1) / du + 1)});
  }
  const std::size_t r = n % du;
  if (r >= 1 && 2 * r <= du) {
    t.tail_swap = true;
    const auto last = static_cast<Time>((n - 1) / du + 1);
    for (std::size_t q = n - r + 1; q <= n; ++q) {
      const int tb = static_cast<int>(q - (n - r) - 1 + r);
      const Mask v = sets[q - 1];
      t.swapped_edges.push_back({static_cast<Vertex>(v ^ bit(tb)), static_cast<Vertex>(v), last});
    }
  }
  return t;
}

CommSchedule build_oneway_broadcast(int d, int l, const std::vector<bool>& parity_flip) {
  check_dimension(d, 16);
  const auto t = broadcast_template(d, l);
  const std::size_t n = t.edges.size();
  const std::size_t swap_from = n - t.swapped_edges.size();
  auto flipped = [&](int e) { return static_cast<std::size_t>(e) < parity_flip.size() && parity_flip[e]; };

  CommSchedule s{make_hypercube(d), {}, WireModel::OneWay};
  const Vertex p = Vertex{1} << d;
  s.tasks.reserve(p);
  for (Vertex x = 0; x < p; ++x) {
    TaskGraph task{TaskKind::Broadcast, x, 0, {}};
    task.edges.reserve(n);
    const bool odd = parity(x) == 1;
    for (std::size_t i = 0; i < n; ++i) {
      const Time a = t.edges[i].time - 1;
      if (t.tail_swap && i >= swap_from) {
        const auto& e = odd ? t.swapped_edges[i - swap_from] : t.edges[i];
        task.edges.push_back({e.src ^ x, e.dst ^ x, 2 * a + 1});
        continue;
      }
      const bool odd_step = odd == flipped(required_bit(i + 1, d));
      const auto& e = t.edges[i];
      task.edges.push_back({e.src ^ x, e.dst ^ x, odd_step ? 2 * a + 1 : 2 * a + 2});
    }
    s.tasks.push_back(std::move(task));
  }
  return s;
}

CommSchedule build_oneway_accumulation(int d, int l) {
  auto s = build_oneway_broadcast(d, l);
  const Time tau = schedule_time(s);
  for (auto& task : s.tasks) task = reverse_task_graph(task, tau);
  return s;
}

// ---------------------------------------------------------------- colouring

std::vector<int> bipartite_edge_coloring(std::size_t left, std::size_t right,
                                         const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  const std::size_t nodes = left + right;
  std::vector<std::size_t> degree(nodes, 0);
  for (const auto& [u, v] : edges) {
    if (u >= left || v >= right) throw std::invalid_argument("edge endpoint out of range");
    ++degree[u];
    ++degree[left + v];
  }
  const std::size_t colours = nodes ? *std::max_element(degree.begin(), degree.end()) : 0;
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> at(nodes * colours, kNone);  // node * colours + c -> edge
  std::vector<int> colour(edges.size(), -1);
  auto end_u = [&](std::size_t e) { return edges[e].first; };
  auto end_v = [&](std::size_t e) { return left + edges[e].second; };
  auto free_colour = [&](std::size_t node) {
    for (std::size_t c = 0; c < colours; ++c)
      if (at[node * colours + c] == kNone) return c;
    throw std::logic_error("no free colour");
  };

  for (std::size_t e = 0; e < edges.size(); ++e) {
    const std::size_t u = end_u(e);
    const std::size_t v = end_v(e);
    const std::size_t a = free_colour(u);
    if (at[v * colours + a] != kNone) {
      // Swap a and b along the alternating path from v; it cannot reach u.
      const std::size_t b = free_colour(v);
      std::vector<std::size_t> path;
      std::size_t cur = v;
      std::size_t want = a;
      while (at[cur * colours + want] != kNone) {
        const std::size_t f = at[cur * colours + want];
        path.push_back(f);
        cur = end_u(f) == cur ? end_v(f) : end_u(f);
        want = want == a ? b : a;
      }
      for (auto f : path) {
        at[end_u(f) * colours + static_cast<std::size_t>(colour[f])] = kNone;
        at[end_v(f) * colours + static_cast<std::size_t>(colour[f])] = kNone;
      }
      for (auto f : path) {
        const std::size_t c = static_cast<std::size_t>(colour[f]) == a ? b : a;
        colour[f] = static_cast<int>(c);
        at[end_u(f) * colours + c] = f;
        at[end_v(f) * colours + c] = f;
      }
    }
    colour[e] = static_cast<int>(a);
    at[u * colours + a] = e;
    at[v * colours + a] = e;
  }
  return colour;
}

// ---------------------------------------------------------------- exchange

namespace {

// Slots first_slot..first_slot+count-1 for the given targets, by colouring
// the direction/target incidence graph.
std::vector<ExchangePath> colour_paths(int d, const std::vector<Mask>& targets, Time first_slot) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t y = 0; y < targets.size(); ++y)
    for (int e = 0; e < d; ++e)
      if (targets[y] >> e & 1) edges.emplace_back(static_cast<std::size_t>(e), y);
  const auto colour = bipartite_edge_coloring(static_cast<std::size_t>(d), targets.size(), edges);
  std::vector<ExchangePath> paths(targets.size());
  for (std::size_t y = 0; y < targets.size(); ++y) paths[y].target = targets[y];
  for (std::size_t k = 0; k < edges.size(); ++k)
    paths[edges[k].second].steps.emplace_back(static_cast<int>(edges[k].first),
                                               first_slot + static_cast<Time>(colour[k]));
  for (auto& p : paths)
    std::sort(p.steps.begin(), p.steps.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  return paths;
}

bool slots_increase(const std::vector<ExchangePath>& paths) {
  for (const auto& p : paths)
    for (std::size_t i = 1; i < p.steps.size(); ++i)
      if (p.steps[i - 1].second >= p.steps[i].second) return false;
  return true;
}

std::vector<int> elements(Mask m) {
  std::vector<int> out;
  for (int e = 0; m; ++e, m >>= 1)
    if (m & 1) out.push_back(e);
  return out;
}

// Order in which the special class adds the elements of its first block w:
// the reverse of a chain of regular antecedents from w down to one element.
std::vector<int> special_add_order(Mask w, int d) {
  std::vector<int> removal;
  Mask cur = w;
  while (std::popcount(cur) >= 2) {
    const Mask a = regular_antecedent(cur, d);
    removal.push_back(std::countr_zero(cur ^ a));
    cur = a;
  }
  removal.push_back(std::countr_zero(cur));
  std::reverse(removal.begin(), removal.end());
  return removal;
}

// Path order of a regular class avoiding the one seam clash of the layout:
// class 1 at local levels 2..n-1 sits in the same slot as its own next level
// in the last column, so the direction step must stay within [1, d-2b].
bool seam_safe_order(const std::vector<int>& elems, int d, int b, int n, std::vector<int>& order) {
  const std::size_t s = elems.size();
  std::vector<char> used(s, 0);
  order.clear();
  std::function<bool()> extend = [&]() {
    if (order.size() == s) return true;
    const std::size_t g = order.size();  // next global level index (0-based)
    for (std::size_t k = 0; k < s; ++k) {
      if (used[k]) continue;
      if (g > 0) {
        const int il = static_cast<int>((g - 1) % static_cast<std::size_t>(n)) + 1;  // level of order[g-1]
        if (il >= 2 && il <= n - 1) {
          const int step = ((elems[k] - order.back()) % d + d) % d;
          if (step < 1 || step > d - 2 * b) continue;
        }
      }
      used[k] = 1;
      order.push_back(elems[k]);
      if (extend()) return true;
      order.pop_back();
      used[k] = 0;
    }
    return false;
  };
  return extend();
}

// Table layout for one bundle: special class plus n-1 regular classes,
// t rounds of n(n-1)+1 slots.
std::vector<ExchangePath> table_bundle(int d, int s, const BlockClass& special, const std::vector<Mask>& regulars,
                                       const std::vector<int>& first_order, Time base) {
  const int b = special.block_size;
  const int n = special.n;
  const Time round = static_cast<Time>(n * (n - 1) + 1);
  std::vector<ExchangePath> paths;

  const auto add = special_add_order(special.representative & ((Mask{1} << b) - 1), d);
  for (int k = 0; k < b; ++k) {
    ExchangePath p{rotate(special.representative, k, d), {}};
    for (int i = 1; i <= s; ++i) {
      const int rho = (i - 1) / n;
      const int m = (i - 1) % n;
      const int dir = m * b + (add[static_cast<std::size_t>(rho)] + k) % b;
      p.steps.emplace_back(dir, base + static_cast<Time>(rho) * round + static_cast<Time>((m + 1) * (n - 1) + 1));
    }
    paths.push_back(std::move(p));
  }

  for (std::size_t q = 1; q <= regulars.size(); ++q) {
    const Mask rep = regulars[q - 1];
    const auto order = q == 1 ? first_order : elements(rep);
    for (int k = 0; k < d; ++k) {
      ExchangePath p{rotate(rep, k, d), {}};
      for (int i = 1; i <= s; ++i) {
        const int dir = (order[static_cast<std::size_t>(i - 1)] + k) % d;
        const int il = (i - 1) % n + 1;
        const int rho = (i - 1) / n;
        const int j = dir / b + 1;
        const int late = il > j ? 1 : 0;
        const int start = (il - 1) * (n - 1) + 1 + late;
        const int c0 = (j - 1 + late) % (n - 1) + 1;
        const int offset = ((static_cast<int>(q) - c0) % (n - 1) + (n - 1)) % (n - 1);
        p.steps.emplace_back(dir, base + static_cast<Time>(rho) * round + static_cast<Time>(start + offset));
      }
      paths.push_back(std::move(p));
    }
  }
  return paths;
}

}  // namespace

ExchangeTemplate exchange_template(int d, int s) {
  check_dimension(d, 20);
  if (s < 1 || s > d - 1) throw std::invalid_argument("distance must be in 1..d-1");
  ExchangeTemplate t;
  t.d = d;
  t.distances = {s};
  t.method = "table";
  const auto classes = classify_subsets(d, s);
  const auto theta = theta_assignment(d, s);
  std::vector<char> bundled(classes.size(), 0);
  Time next = 1;

  for (const auto& entry : theta) {
    const auto& special = classes[entry.special_class];
    ExchangeBundle bundle;
    bundle.special = special.representative;
    bundle.block = special.block_size;
    bundle.n = special.n;
    bundle.first_slot = next;
    bundle.slot_count = static_cast<Time>((special.n - 1) * s + s / special.n);
    bundled[entry.special_class] = 1;
    std::vector<Mask> regs;
    for (auto c : entry.regular_classes) {
      bundled[c] = 1;
      regs.push_back(classes[c].representative);
    }

    std::vector<ExchangePath> paths;
    bool placed = false;
    // Any bundled class may play class 1; take the first that admits a
    // seam-safe order.
    for (std::size_t first = 0; first < regs.size() && !placed; ++first) {
      std::vector<Mask> order_regs = regs;
      std::rotate(order_regs.begin(), order_regs.begin() + static_cast<std::ptrdiff_t>(first), order_regs.end());
      std::vector<int> order;
      if (!seam_safe_order(elements(order_regs[0]), d, special.block_size, special.n, order)) continue;
      auto candidate = table_bundle(d, s, special, order_regs, order, next - 1);
      if (!slots_increase(candidate)) continue;
      paths = std::move(candidate);
      bundle.regulars = order_regs;
      bundle.first_order = order;
      placed = true;
    }
    if (!placed) {
      std::vector<Mask> targets = special.members;
      for (auto c : entry.regular_classes)
        for (Mask m : classes[c].members) targets.push_back(m);
      paths = colour_paths(d, targets, next);
      bundle.regulars = regs;
      bundle.table_layout = false;
      ++t.coloring_fallbacks;
      t.method = "table+coloring";
    }
    for (auto& p : paths) t.paths.push_back(std::move(p));
    next += bundle.slot_count;
    t.bundles.push_back(std::move(bundle));
  }

  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (bundled[c]) continue;
    if (classes[c].is_special) throw std::logic_error("special class left without a bundle");
    const auto order = elements(classes[c].representative);
    for (int k = 0; k < d; ++k) {
      ExchangePath p{rotate(classes[c].representative, k, d), {}};
      for (int i = 0; i < s; ++i) p.steps.emplace_back((order[static_cast<std::size_t>(i)] + k) % d, next + static_cast<Time>(i));
      t.paths.push_back(std::move(p));
    }
    next += static_cast<Time>(s);
  }
  t.slots = next - 1;
  if (const auto err = check_exchange_template(t); !err.empty())
    throw std::logic_error("exchange template d=" + std::to_string(d) + " s=" + std::to_string(s) + ": " + err);
  return t;
}

ExchangeTemplate exchange_far_template(int d) {
  check_dimension(d, 20);
  ExchangeTemplate t;
  t.d = d;
  if (d == 1) {
    t.distances = {1};
    t.paths.push_back({1, {{0, 1}}});
    t.slots = 1;
    t.method = "single-wire";
    return t;
  }
  t.distances = {d - 1, d};
  t.method = "coloring";
  std::vector<Mask> targets;
  for (int e = 0; e < d; ++e) targets.push_back(full_mask(d) & ~bit(e));
  targets.push_back(full_mask(d));
  t.paths = colour_paths(d, targets, 1);
  t.slots = static_cast<Time>(d);
  if (const auto err = check_exchange_template(t); !err.empty())
    throw std::logic_error("far exchange template d=" + std::to_string(d) + ": " + err);
  return t;
}

std::string check_exchange_template(const ExchangeTemplate& t) {
  std::vector<std::vector<char>> used(t.slots + 1, std::vector<char>(static_cast<std::size_t>(t.d), 0));
  for (const auto& p : t.paths) {
    Mask seen = 0;
    Time last = 0;
    for (const auto& [dir, slot] : p.steps) {
      if (dir < 0 || dir >= t.d) return "direction out of range";
      if (slot < 1 || slot > t.slots) return "slot out of range";
      if (slot <= last) return "slots not increasing on path to " + std::to_string(p.target);
      last = slot;
      if (seen >> dir & 1) return "direction repeated on a path";
      seen |= bit(dir);
      auto& u = used[slot][static_cast<std::size_t>(dir)];
      if (u) return "direction " + std::to_string(dir) + " used twice in slot " + std::to_string(slot);
      u = 1;
    }
    if (seen != p.target) return "path does not reach its target " + std::to_string(p.target);
  }
  return {};
}

namespace {

// Translate a template over all roots. One-way: even roots on odd times,
// odd roots on the following even times.
void emit_exchange(const ExchangeTemplate& t, WireModel wire, Time offset, std::vector<TaskGraph>& tasks) {
  const Vertex p = Vertex{1} << t.d;
  for (Vertex x = 0; x < p; ++x) {
    const Time shift = wire == WireModel::OneWay ? static_cast<Time>(parity(x)) : 0;
    for (const auto& path : t.paths) {
      TaskGraph task{TaskKind::Path, x, x ^ static_cast<Vertex>(path.target), {}};
      Vertex cur = x;
      for (const auto& [dir, slot] : path.steps) {
        const Vertex nxt = cur ^ (Vertex{1} << dir);
        const Time time = wire == WireModel::OneWay ? 2 * slot - 1 + shift : slot;
        task.edges.push_back({cur, nxt, offset + time});
        cur = nxt;
      }
      tasks.push_back(std::move(task));
    }
  }
}

Time span(const ExchangeTemplate& t, WireModel wire) { return wire == WireModel::OneWay ? 2 * t.slots : t.slots; }

}  // namespace

CommSchedule build_oneway_exchange(int d, int s) {
  check_dimension(d, 12);
  CommSchedule out{make_hypercube(d), {}, WireModel::OneWay};
  emit_exchange(exchange_template(d, s), WireModel::OneWay, 0, out.tasks);
  return out;
}

CommSchedule build_oneway_exchange_far(int d) {
  check_dimension(d, 12);
  if (d < 2) throw std::invalid_argument("far exchange needs d >= 2");
  CommSchedule out{make_hypercube(d), {}, WireModel::OneWay};
  emit_exchange(exchange_far_template(d), WireModel::OneWay, 0, out.tasks);
  return out;
}

CommSchedule build_universal_exchange(int d, WireModel wire) {
  check_dimension(d, 12);
  CommSchedule out{make_hypercube(d), {}, wire};
  Time offset = 0;
  // Phases run back to back: distances 1..d-2, then d-1 and d together.
  for (int s = 1; s <= d - 2; ++s) {
    const auto t = exchange_template(d, s);
    emit_exchange(t, wire, offset, out.tasks);
    offset += span(t, wire);
  }
  emit_exchange(exchange_far_template(d), wire, offset, out.tasks);
  return out;
}

CommSchedule build_twoway_variants(int d, TwoWayTask task, int param) {
  check_dimension(d, task == TwoWayTask::BroadcastToDistance ? 16 : 12);
  CommSchedule out{make_hypercube(d), {}, WireModel::TwoWay};
  switch (task) {
    case TwoWayTask::BroadcastToDistance: {
      const auto t = broadcast_template(d, param == 0 ? d : param);
      const Vertex p = Vertex{1} << d;
      for (Vertex x = 0; x < p; ++x) {
        TaskGraph tg{TaskKind::Broadcast, x, 0, {}};
        tg.edges.reserve(t.edges.size());
        for (const auto& e : t.edges) tg.edges.push_back({e.src ^ x, e.dst ^ x, e.time});
        out.tasks.push_back(std::move(tg));
      }
      break;
    }
    case TwoWayTask::ExchangeToDistance:
      emit_exchange(exchange_template(d, param), WireModel::TwoWay, 0, out.tasks);
      break;
    case TwoWayTask::ExchangeFar:
      if (d < 2) throw std::invalid_argument("far exchange needs d >= 2");
      emit_exchange(exchange_far_template(d), WireModel::TwoWay, 0, out.tasks);
      break;
    case TwoWayTask::UniversalExchange: return build_universal_exchange(d, WireModel::TwoWay);
  }
  return out;
}

std::vector<std::pair<Vertex, Vertex>> translate_template(const std::vector<std::pair<Vertex, Vertex>>& edges, int d,
                                                          int parity_class) {
  check_dimension(d, 20);
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex x = 0; x < (Vertex{1} << d); ++x) {
    if (parity_class >= 0 && parity(x) != parity_class) continue;
    for (const auto& [u, v] : edges) out.emplace_back(u ^ x, v ^ x);
  }
  return out;
}

// ---------------------------------------------------------------- audit

std::string broadcast_template_json(const BroadcastTemplate& t) {
  nlohmann::json j;
  j["d"] = t.d;
  j["l"] = t.l;
  j["ordering"] = t.ordering.subsets;
  j["fallback_events"] = t.ordering.fallback_events;
  auto edges = nlohmann::json::array();
  for (const auto& e : t.edges) edges.push_back({e.src, e.dst, e.time});
  j["template"] = edges;
  j["tail_swap"] = t.tail_swap;
  auto swapped = nlohmann::json::array();
  for (const auto& e : t.swapped_edges) swapped.push_back({e.src, e.dst, e.time});
  j["swapped"] = swapped;
  return j.dump(2) + "\n";
}

std::string exchange_template_json(const ExchangeTemplate& t) {
  nlohmann::json j;
  j["d"] = t.d;
  j["distances"] = t.distances;
  j["slots"] = t.slots;
  j["method"] = t.method;
  j["coloring_fallbacks"] = t.coloring_fallbacks;
  auto bundles = nlohmann::json::array();
  for (const auto& b : t.bundles)
    bundles.push_back({{"special", b.special},
                       {"block", b.block},
                       {"n", b.n},
                       {"regulars", b.regulars},
                       {"first_order", b.first_order},
                       {"first_slot", b.first_slot},
                       {"slot_count", b.slot_count},
                       {"table_layout", b.table_layout}});
  j["bundles"] = bundles;
  auto paths = nlohmann::json::array();
  for (const auto& p : t.paths) {
    auto steps = nlohmann::json::array();
    for (const auto& [dir, slot] : p.steps) steps.push_back({dir, slot});
    paths.push_back({{"target", p.target}, {"steps", steps}});
  }
  j["paths"] = paths;
  return j.dump(2) + "\n";
}

}  // namespace cayley
