#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cayley/schedule.hpp"

namespace cayley {

enum class BoundTask {
  UniversalBroadcast,
  UniversalBroadcastAllButFarthest,
  BroadcastToDistance,
  UniversalExchange,
  UniversalExchangeDistS,
  ExchangeFar,
  GlobalSum,
};

struct BoundReport {
  BoundTask task = BoundTask::UniversalBroadcast;
  WireModel wire_model = WireModel::TwoWay;
  std::uint64_t value = 0;
  int parameter = 0;  // l or s where the task has one, else 0
  std::string formula_id;
};

std::uint64_t binomial(int n, int k);
/// Nonzero vertices of Q_d within distance l: sum_{i=1..l} C(d,i).
std::uint64_t cube_ball_count(int d, int l);
std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b);

std::uint64_t broadcast_lower_bound(std::uint64_t p, std::uint64_t q);
std::uint64_t oneway_broadcast_lower_bound(std::uint64_t p, std::uint64_t d);
std::uint64_t twoway_broadcast_lower_bound(std::uint64_t p, std::uint64_t d);
std::uint64_t all_but_farthest_lower_bound(std::uint64_t p, std::uint64_t d);

/// ceil(2 N_l / d) one-way, ceil(N_l / d) two-way.
std::uint64_t cube_broadcast_time(int d, int l, WireModel wire);
/// 2 C(d-1,s-1) one-way, C(d-1,s-1) two-way, for 1 <= s <= d-1.
std::uint64_t cube_exchange_time(int d, int s, WireModel wire);
/// Distances d-1 and d together: 2d one-way, d two-way.
std::uint64_t cube_exchange_far_time(int d, WireModel wire);
/// 2^d one-way, 2^(d-1) two-way.
std::uint64_t cube_universal_exchange_time(int d, WireModel wire);

std::vector<BoundReport> hypercube_optimal_times(int d);

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);
/// True iff d does not divide 2^d - 1, i.e. 2^d mod d != 1.
bool two_pow_not_one_mod(std::uint64_t d);

std::string bound_task_name(BoundTask task);
std::string bounds_to_text(const std::vector<BoundReport>& rows);
std::string bounds_to_json(const std::vector<BoundReport>& rows);

}  // namespace cayley
