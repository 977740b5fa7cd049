// cayleycomm: build, check and replay communication schedules on Cayley graphs.

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "cayley/bounds.hpp"
#include "cayley/global_sum.hpp"
#include "cayley/group.hpp"
#include "cayley/hypercube_sched.hpp"
#include "cayley/regular_order.hpp"
#include "cayley/schedule.hpp"
#include "cayley/sim.hpp"
#include "json.hpp"

using namespace cayley;

namespace {

constexpr const char* kOutDirEnv = "CAYLEYCOMM_OUT_DIR";

// Usage and IO problems exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::string output_path(const std::string& given, const std::string& fallback_name) {
  if (!given.empty()) return given;
  const char* dir = std::getenv(kOutDirEnv);
  return (std::filesystem::path(dir && *dir ? dir : ".") / fallback_name).string();
}

// A graph file is either a group description
//   {"group": "hypercube", "dimension": d}
//   {"group": "abelian", "moduli": [...], "generators": [[...], ...]}
//   {"group": "table", "order": n, "table": [...], "generators": [...], "subgroup": [...]}
// or the edge list written by `graph --format json`.
CayleyGraph graph_from_file(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("malformed graph file " + path + ": " + e.what());
  }
  const std::string name = j.value("name", std::filesystem::path(path).stem().string());
  if (j.contains("edges")) {
    const auto p = j.at("p").get<std::size_t>();
    std::vector<std::vector<Vertex>> nbrs(p);
    for (const auto& e : j.at("edges")) nbrs.at(e.at(0).get<Vertex>()).push_back(e.at(1).get<Vertex>());
    return make_unchecked_graph(p, nbrs, name);
  }
  const auto kind = j.at("group").get<std::string>();
  GroupSpec spec;
  spec.name = name;
  if (kind == "hypercube") {
    spec.kind = HypercubeZ2d{j.at("dimension").get<int>()};
  } else if (kind == "abelian") {
    AbelianProduct g{j.at("moduli").get<std::vector<std::uint32_t>>()};
    for (const auto& t : j.at("generators")) spec.generators.push_back(encode_abelian(g, t.get<std::vector<long>>()));
    spec.kind = g;
  } else if (kind == "table") {
    spec.kind = ExplicitTable{j.at("order").get<std::size_t>(), j.at("table").get<std::vector<Element>>()};
    spec.generators = j.at("generators").get<std::vector<Element>>();
    spec.subgroup = j.value("subgroup", std::vector<Element>{});
  } else {
    throw UsageError("unknown group kind '" + kind + "'");
  }
  return build_cayley_graph(spec);
}

CayleyGraph load_graph(const std::string& spec) {
  if (spec.size() > 5 && spec.ends_with(".json")) return graph_from_file(spec);
  return builtin_graph(spec);
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoi(item));
  return out;
}

std::string verdict(std::uint64_t tau, std::optional<std::uint64_t> bound) {
  std::ostringstream os;
  os << "tau=" << tau;
  if (!bound) {
    os << " bound=none";
  } else {
    os << " bound=" << *bound << (tau == *bound ? " OPTIMAL" : " ABOVE_BOUND");
  }
  return os.str();
}

// ---------------------------------------------------------------- schedule

struct ScheduleArgs {
  std::string graph = "q3";
  std::string task = "broadcast";
  std::string wire = "two-way";
  int l = 0;
  int s = 0;
  bool far = false;
  bool search = false;
  std::uint64_t budget = kDefaultSearchBudget;
  std::string out;
  std::string format = "json";
  std::string emit_template;
};

struct Built {
  CommSchedule schedule;
  std::optional<std::uint64_t> bound;
  std::string tag;
};

Built build(const ScheduleArgs& a) {
  const auto graph = load_graph(a.graph);
  const WireModel wire = parse_wire_model(a.wire);
  const auto cube = graph.hypercube_dimension();
  const int d = cube.value_or(0);
  const std::uint64_t p = graph.vertex_count();
  const auto need_cube = [&](const std::string& what) {
    if (!cube) throw UsageError(what + " is only constructed on hypercubes (use --search for broadcast)");
  };
  const int l = a.l == 0 ? d : a.l;
  if (cube && (l < 1 || l > d)) throw UsageError("--l must be in 1..d");
  auto emit = [&](const std::string& text) {
    if (!a.emit_template.empty()) write_file(a.emit_template, text);
  };

  if (a.task == "broadcast" || a.task == "accumulation") {
    const bool acc = a.task == "accumulation";
    if (a.search) {
      if (wire != WireModel::TwoWay || acc) throw UsageError("--search builds two-way broadcasts only");
      auto r = search_broadcast_schedule(graph, a.budget);
      if (r.status != SearchStatus::Found)
        throw std::runtime_error("search ended: " + search_status_name(r.status) + " after " +
                                 std::to_string(r.nodes) + " nodes");
      return {std::move(*r.schedule), twoway_broadcast_lower_bound(p, graph.degree()), "search"};
    }
    need_cube(a.task);
    Built b;
    b.tag = "l" + std::to_string(l);
    if (wire == WireModel::OneWay) {
      emit(broadcast_template_json(broadcast_template(d, l)));
      b.schedule = acc ? build_oneway_accumulation(d, l) : build_oneway_broadcast(d, l);
    } else if (l == d) {
      const auto order = hypercube_regular_order(d);
      emit(regular_order_to_json(order));
      b.schedule = broadcast_from_regular_order(graph, order);
    } else {
      emit(broadcast_template_json(broadcast_template(d, l)));
      b.schedule = build_twoway_variants(d, TwoWayTask::BroadcastToDistance, l);
    }
    if (acc && wire == WireModel::TwoWay) {
      const Time tau = schedule_time(b.schedule);
      for (auto& t : b.schedule.tasks) t = reverse_task_graph(t, tau);
    }
    b.bound = cube_broadcast_time(d, l, wire);
    return b;
  }
  if (a.task == "exchange") {
    need_cube("exchange");
    if (a.far == (a.s != 0)) throw UsageError("exchange needs exactly one of --s or --far");
    if (a.far) {
      if (d < 2) throw UsageError("--far needs d >= 2");
      emit(exchange_template_json(exchange_far_template(d)));
      auto s = wire == WireModel::OneWay ? build_oneway_exchange_far(d)
                                         : build_twoway_variants(d, TwoWayTask::ExchangeFar);
      return {std::move(s), cube_exchange_far_time(d, wire), "far"};
    }
    if (a.s < 1 || a.s > d - 1) throw UsageError("--s must be in 1..d-1 (or use --far)");
    emit(exchange_template_json(exchange_template(d, a.s)));
    auto s = wire == WireModel::OneWay ? build_oneway_exchange(d, a.s)
                                       : build_twoway_variants(d, TwoWayTask::ExchangeToDistance, a.s);
    return {std::move(s), cube_exchange_time(d, a.s, wire), "s" + std::to_string(a.s)};
  }
  if (a.task == "universal-exchange") {
    need_cube("universal exchange");
    return {build_universal_exchange(d, wire), cube_universal_exchange_time(d, wire), ""};
  }
  throw UsageError("unknown task '" + a.task + "'");
}

int cmd_schedule(const ScheduleArgs& a) {
  Built b = build(a);
  const auto rep = validate_schedule(b.schedule);
  if (!rep.ok()) {
    std::cerr << "generated schedule failed validation:\n" << rep.summary();
    return 1;
  }
  std::string name = b.schedule.graph.name() + "-" + a.task + "-" + wire_model_name(b.schedule.wire_model);
  if (!b.tag.empty()) name += "-" + b.tag;
  const bool dot = a.format == "dot";
  const auto path = output_path(a.out, name + (dot ? ".dot" : ".json"));
  write_file(path, dot ? schedule_to_dot(b.schedule) : schedule_to_json(b.schedule));
  std::cout << verdict(schedule_time(b.schedule), b.bound) << "\n";
  std::cout << "wrote " << path << "\n";
  return 0;
}

// ---------------------------------------------------------------- validate / simulate

CommSchedule load_schedule(const std::string& path, const std::string& graph_override) {
  const auto text = read_file(path);
  std::string gname = graph_override;
  try {
    if (gname.empty()) gname = schedule_graph_name(text);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("malformed schedule " + path + ": " + e.what());
  }
  if (gname.empty()) throw UsageError("schedule names no graph; pass --graph");
  try {
    return schedule_from_json(text, load_graph(gname));
  } catch (const ScheduleError& e) {
    throw UsageError(e.what());
  }
}

int cmd_validate(const std::string& file, const std::string& graph) {
  const auto s = load_schedule(file, graph);
  const auto rep = validate_schedule(s);
  if (rep.ok()) {
    std::cout << "ok tasks=" << s.tasks.size() << " tau=" << (s.tasks.empty() ? 0 : schedule_time(s)) << "\n";
    return 0;
  }
  std::cout << rep.summary();
  return 1;
}

struct SimulateArgs {
  std::string file;
  std::string graph;
  std::string goal = "broadcast";
  std::string distances;
  bool per_pair = false;
  std::string format = "text";
  bool sums = false;
  std::uint64_t seed = 1;
};

int cmd_simulate(const SimulateArgs& a) {
  const auto s = load_schedule(a.file, a.graph);
  DeliveryGoal goal{parse_goal_kind(a.goal), parse_int_list(a.distances)};
  SimOptions opt{true, a.per_pair};
  try {
    SimReport r;
    std::vector<std::pair<Vertex, double>> sums;
    std::vector<double> x;
    if (a.sums) {
      if (goal.kind != DeliveryGoal::Kind::Accumulation) throw UsageError("--sums needs --goal accumulation");
      std::mt19937_64 rng(a.seed);
      std::uniform_int_distribution<int> dist(-1000, 1000);
      x.resize(s.graph.vertex_count());
      for (auto& v : x) v = dist(rng);
      auto acc = simulate_accumulation(s, x, goal.distances, opt);
      r = std::move(acc.report);
      sums = std::move(acc.sums);
    } else {
      r = simulate(s, goal, opt);
    }
    // Integer test vectors: every root total must be exact.
    bool sums_ok = true;
    for (const auto& [root, got] : sums) {
      // Generators here are closed under inverses, so distance is symmetric.
      const auto row = distances_from(s.graph, root);
      double want = 0;
      for (Vertex v = 0; v < x.size(); ++v) {
        const auto dv = row[v];
        if (v != root && dv > 0 &&
            (goal.distances.empty() ||
             std::find(goal.distances.begin(), goal.distances.end(), dv) != goal.distances.end()))
          want += x[v];
      }
      sums_ok = sums_ok && got == want;
    }
    if (a.format == "json") {
      std::cout << sim_report_json(r);
    } else {
      std::cout << (r.ok ? "delivered" : "NOT delivered") << " tau=" << r.tau << " pairs=" << r.delivered_pairs << "/"
                << r.required_pairs << "\n";
      for (const auto& [u, v] : r.undelivered) std::cout << "  undelivered " << u << " -> " << v << "\n";
      if (a.sums) std::cout << (sums_ok ? "sums exact" : "sums WRONG") << " roots=" << sums.size() << "\n";
    }
    return r.ok && sums_ok ? 0 : 1;
  } catch (const SimError& e) {
    std::cerr << "simulation failed: " << e.what() << "\n";
    return 1;
  }
}

// ---------------------------------------------------------------- bounds / gsum / graph

int cmd_bounds(const std::string& gname, const std::string& format) {
  const auto g = load_graph(gname);
  std::vector<BoundReport> rows;
  if (const auto cube = g.hypercube_dimension()) {
    rows = hypercube_optimal_times(*cube);
  } else {
    const std::uint64_t p = g.vertex_count();
    const std::uint64_t d = g.degree();
    rows.push_back({BoundTask::UniversalBroadcast, WireModel::OneWay, oneway_broadcast_lower_bound(p, d), 0,
                    "ceil(2(P-1)/d)"});
    rows.push_back({BoundTask::UniversalBroadcast, WireModel::TwoWay, twoway_broadcast_lower_bound(p, d), 0,
                    "ceil((P-1)/d)"});
    if (p >= 2)
      rows.push_back({BoundTask::UniversalBroadcastAllButFarthest, WireModel::OneWay,
                      all_but_farthest_lower_bound(p, d), 0, "ceil(2(P-2)/d)"});
  }
  std::cout << (format == "json" ? bounds_to_json(rows) : bounds_to_text(rows));
  return 0;
}

int cmd_gsum(const std::string& gname, const std::string& values, std::uint64_t seed, const std::string& format) {
  const auto g = load_graph(gname);
  std::vector<double> x;
  if (values.empty() || values == "random") {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    x.resize(g.vertex_count());
    for (auto& v : x) v = u(rng);
  } else {
    try {
      const auto text = values.ends_with(".json") ? read_file(values) : values;
      x = nlohmann::json::parse(text).get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("--values must be a JSON array: ") + e.what());
    }
  }
  const auto plan = build_sum_plan(g);
  const auto r = run_sum_plan(g, plan, x);
  const double want = std::accumulate(x.begin(), x.end(), 0.0);
  const double norm = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
  const double tol = 1e-9 * std::max(norm, 1e-300);
  const bool ok = std::abs(r.recovered_sum - want) <= tol && r.max_deviation / plan.scale <= tol;
  if (format == "json") {
    std::cout << sum_report_json(plan, r, want);
  } else {
    std::cout << "rounds=" << plan.rounds << " diameter=" << plan.diameter << " scale=" << plan.scale << "\n"
              << "recovered=" << r.recovered_sum << " true=" << want << " max_deviation=" << r.max_deviation << "\n"
              << (ok ? "MATCH" : "MISMATCH") << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_graph(const std::string& gname, const std::string& format) {
  const auto g = load_graph(gname);
  if (format == "dot") {
    std::cout << graph_to_dot(g);
  } else if (format == "json") {
    std::cout << graph_to_json(g) << "\n";
  } else {
    std::cout << g.name() << " P=" << g.vertex_count() << " d=" << g.degree() << " diameter=" << diameter(g)
              << " two-way-bound=" << twoway_broadcast_lower_bound(g.vertex_count(), g.degree()) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Communication schedules on Cayley graphs"};
  app.require_subcommand(1);

  ScheduleArgs sa;
  auto* sched = app.add_subcommand("schedule", "build a schedule, validate it, write it out");
  sched->add_option("--graph", sa.graph, "builtin name (q1..q16, petersen, z2z8x5, kN, cN) or JSON file");
  sched->add_option("--task", sa.task, "broadcast | accumulation | exchange | universal-exchange");
  sched->add_option("--wire", sa.wire, "two-way | one-way");
  sched->add_option("--l", sa.l, "broadcast radius (default d)");
  sched->add_option("--s", sa.s, "exchange distance, 1..d-1");
  sched->add_flag("--far", sa.far, "exchange to distances d-1 and d");
  sched->add_flag("--search", sa.search, "backtracking search instead of a construction");
  sched->add_option("--budget", sa.budget, "search node budget");
  sched->add_option("--out,-o", sa.out, "output file");
  sched->add_option("--format", sa.format, "json | dot")->check(CLI::IsMember({"json", "dot"}));
  sched->add_option("--emit-template", sa.emit_template, "also dump the template / ordering tables here");

  std::string vfile, vgraph;
  auto* val = app.add_subcommand("validate", "check a schedule file");
  val->add_option("file", vfile)->required();
  val->add_option("--graph", vgraph, "host graph when the file does not name a builtin");

  SimulateArgs ma;
  auto* sim = app.add_subcommand("simulate", "replay a schedule file and check delivery");
  sim->add_option("file", ma.file)->required();
  sim->add_option("--graph", ma.graph);
  sim->add_option("--goal", ma.goal, "broadcast | accumulation | exchange | global_sum");
  sim->add_option("--distances", ma.distances, "comma list, default all");
  sim->add_flag("--per-pair", ma.per_pair, "include the completion matrix (json)");
  sim->add_flag("--sums", ma.sums, "numeric replay with random integers (accumulation)");
  sim->add_option("--seed", ma.seed);
  sim->add_option("--format", ma.format)->check(CLI::IsMember({"text", "json"}));

  std::string bgraph = "q3", bformat = "text";
  auto* bnd = app.add_subcommand("bounds", "lower bounds and optimal times");
  bnd->add_option("--graph", bgraph);
  bnd->add_option("--format", bformat)->check(CLI::IsMember({"text", "json"}));

  std::string ggraph = "q3", gvalues, gformat = "text";
  std::uint64_t gseed = 1;
  auto* gs = app.add_subcommand("gsum", "spectral global sum");
  gs->add_option("--graph", ggraph);
  gs->add_option("--values", gvalues, "JSON array, JSON file, or 'random'");
  gs->add_option("--seed", gseed);
  gs->add_option("--format", gformat)->check(CLI::IsMember({"text", "json"}));

  std::string hgraph = "q3", hformat = "text";
  auto* gr = app.add_subcommand("graph", "describe or export a graph");
  gr->add_option("--graph", hgraph);
  gr->add_option("--format", hformat)->check(CLI::IsMember({"text", "json", "dot"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*sched) return cmd_schedule(sa);
    if (*val) return cmd_validate(vfile, vgraph);
    if (*sim) return cmd_simulate(ma);
    if (*bnd) return cmd_bounds(bgraph, bformat);
    if (*gs) return cmd_gsum(ggraph, gvalues, gseed, gformat);
    if (*gr) return cmd_graph(hgraph, hformat);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const GroupError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
