#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cayley/schedule.hpp"

namespace cayley {

enum class SimErrc { InvalidSchedule, PrematureFire, DoubleCount };

class SimError : public std::runtime_error {
 public:
  SimError(SimErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  SimErrc code() const noexcept { return code_; }

 private:
  SimErrc code_;
};

/// What the schedule claims to do. Broadcast: every vertex sends to every
/// vertex whose distance is listed. Accumulation: every vertex collects from
/// those vertices. Exchange: a path task per ordered pair at those
/// distances. An empty distance list means every distance >= 1.
struct DeliveryGoal {
  enum class Kind { Broadcast, Accumulation, Exchange, GlobalSum } kind = Kind::Broadcast;
  std::vector<int> distances;
};

std::string goal_kind_name(DeliveryGoal::Kind k);
DeliveryGoal::Kind parse_goal_kind(const std::string& name);

struct SimOptions {
  bool require_valid = true;
  bool per_pair = false;  // fill the completion matrix (P <= 1024)
};

struct SimReport {
  bool ok = false;
  Time tau = 0;
  std::size_t required_pairs = 0;
  std::size_t delivered_pairs = 0;
  std::vector<std::pair<Vertex, Vertex>> undelivered;  // (source, target), capped
  std::size_t undelivered_total = 0;
  /// completion[source][target]: earliest time the target holds the
  /// source's word, -1 if never, 0 on the diagonal.
  std::optional<std::vector<std::vector<long>>> completion;
};

/// Replays every task and checks the declared goal. Edges fire only if
/// their data was present strictly before their time.
SimReport simulate(const CommSchedule& schedule, const DeliveryGoal& goal, const SimOptions& options = {});

struct AccumulationResult {
  SimReport report;
  /// Per task, in task order: (root, sum of received source values). The
  /// root's own value is not included.
  std::vector<std::pair<Vertex, double>> sums;
};

/// Numeric replay of Accumulation tasks: partial sums leave a vertex only
/// after all of its summands have arrived.
AccumulationResult simulate_accumulation(const CommSchedule& schedule, const std::vector<double>& values,
                                         const std::vector<int>& distances = {}, const SimOptions& options = {});

std::string sim_report_json(const SimReport& report);

}  // namespace cayley
