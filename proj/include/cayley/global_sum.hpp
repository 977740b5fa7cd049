#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "cayley/group.hpp"

namespace cayley {

class NotSymmetric : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One round: every vertex replaces its value by the sum of its neighbors'
/// values minus coefficient * own value.
struct SumStep {
  double coefficient = 0.0;
};

struct SumPlan {
  std::vector<SumStep> steps;  // descending coefficients
  double scale = 1.0;          // prod(d - lambda) / P
  std::size_t rounds = 0;
  std::size_t diameter = 0;    // reported alongside; may be below rounds
  bool exact_spectrum = false; // integer hypercube spectrum used
};

/// Distinct adjacency eigenvalues in descending order, merged within
/// 1e-8 times the spectral radius. Hypercubes use the exact values d - 2i.
std::vector<double> distinct_eigenvalues(const CayleyGraph& graph);

SumPlan build_sum_plan(const CayleyGraph& graph);

struct SumResult {
  std::vector<double> values;  // per vertex after all rounds
  double recovered_sum = 0.0;  // values[0] / scale
  double max_deviation = 0.0;  // max |values[v] - values[0]|
};

SumResult run_sum_plan(const CayleyGraph& graph, const SumPlan& plan, const std::vector<double>& x);

std::string sum_report_json(const SumPlan& plan, const SumResult& result, double true_sum);

}  // namespace cayley
