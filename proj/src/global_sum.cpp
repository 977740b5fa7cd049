#include "cayley/global_sum.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace cayley {

namespace {

constexpr std::size_t kMaxDense = 2048;

Eigen::MatrixXd adjacency(const CayleyGraph& graph) {
  const auto p = static_cast<Eigen::Index>(graph.vertex_count());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(p, p);
  for (Vertex u = 0; u < graph.vertex_count(); ++u)
    for (std::size_t g = 0; g < graph.degree(); ++g) a(u, graph.neighbor(u, g)) += 1.0;
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 0)
    throw NotSymmetric("adjacency matrix of " + graph.name() + " is not symmetric");
  return a;
}

}  // namespace

std::vector<double> distinct_eigenvalues(const CayleyGraph& graph) {
  if (const auto d = graph.hypercube_dimension()) {
    std::vector<double> out;
    for (int i = 0; i <= *d; ++i) out.push_back(static_cast<double>(*d - 2 * i));
    return out;
  }
  if (graph.vertex_count() > kMaxDense) throw std::invalid_argument("dense eigensolver limited to 2048 vertices");
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adjacency(graph), Eigen::EigenvaluesOnly);
  std::vector<double> all(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(all.rbegin(), all.rend());
  const double radius = std::max(std::abs(all.front()), std::abs(all.back()));
  const double tol = 1e-8 * std::max(radius, 1.0);
  std::vector<double> out;
  for (double v : all)
    if (out.empty() || out.back() - v > tol) out.push_back(v);
  return out;
}

SumPlan build_sum_plan(const CayleyGraph& graph) {
  if (!graph.hypercube_dimension()) adjacency(graph);  // symmetry check
  const auto eig = distinct_eigenvalues(graph);
  const double d = static_cast<double>(graph.degree());
  SumPlan plan;
  plan.exact_spectrum = graph.hypercube_dimension().has_value();
  double prod = 1.0;
  // eig.front() is the degree for a connected regular graph.
  for (std::size_t i = 1; i < eig.size(); ++i) {
    plan.steps.push_back({eig[i]});
    prod *= d - eig[i];
  }
  plan.rounds = plan.steps.size();
  plan.scale = prod / static_cast<double>(graph.vertex_count());
  plan.diameter = diameter(graph);
  return plan;
}

SumResult run_sum_plan(const CayleyGraph& graph, const SumPlan& plan, const std::vector<double>& x) {
  if (x.size() != graph.vertex_count()) throw std::invalid_argument("value vector length must equal P");
  std::vector<double> cur = x;
  std::vector<double> next(x.size());
  for (const auto& step : plan.steps) {
    // Each vertex hears every neighbor's previous value in the same round.
    for (Vertex v = 0; v < graph.vertex_count(); ++v) {
      double acc = -step.coefficient * cur[v];
      for (std::size_t g = 0; g < graph.degree(); ++g) acc += cur[graph.neighbor(v, g)];
      next[v] = acc;
    }
    cur.swap(next);
  }
  SumResult r;
  r.values = cur;
  for (double v : cur) r.max_deviation = std::max(r.max_deviation, std::abs(v - cur[0]));
  r.recovered_sum = cur.empty() ? 0.0 : cur[0] / plan.scale;
  return r;
}

std::string sum_report_json(const SumPlan& plan, const SumResult& result, double true_sum) {
  nlohmann::json j;
  auto coeffs = nlohmann::json::array();
  for (const auto& s : plan.steps) coeffs.push_back(s.coefficient);
  j["steps"] = coeffs;
  j["rounds"] = plan.rounds;
  j["diameter"] = plan.diameter;
  j["scale"] = plan.scale;
  j["recovered_sum"] = result.recovered_sum;
  j["true_sum"] = true_sum;
  j["max_deviation"] = result.max_deviation;
  return j.dump(2) + "\n";
}

}  // namespace cayley
