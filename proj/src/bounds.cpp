#include "cayley/bounds.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace cayley {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t cube_ball_count(int d, int l) {
  std::uint64_t n = 0;
  for (int i = 1; i <= l; ++i) n += binomial(d, i);
  return n;
}

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) {
  if (b == 0) throw std::invalid_argument("division by zero");
  return (a + b - 1) / b;
}

std::uint64_t broadcast_lower_bound(std::uint64_t p, std::uint64_t q) {
  return ceil_div(p * (p - 1), q);
}

std::uint64_t oneway_broadcast_lower_bound(std::uint64_t p, std::uint64_t d) {
  return ceil_div(2 * (p - 1), d);
}

std::uint64_t twoway_broadcast_lower_bound(std::uint64_t p, std::uint64_t d) {
  return ceil_div(p - 1, d);
}

std::uint64_t all_but_farthest_lower_bound(std::uint64_t p, std::uint64_t d) {
  return ceil_div(2 * (p - 2), d);
}

std::uint64_t cube_broadcast_time(int d, int l, WireModel wire) {
  const auto n = cube_ball_count(d, l);
  return ceil_div(wire == WireModel::OneWay ? 2 * n : n, static_cast<std::uint64_t>(d));
}

std::uint64_t cube_exchange_time(int d, int s, WireModel wire) {
  const auto c = binomial(d - 1, s - 1);
  return wire == WireModel::OneWay ? 2 * c : c;
}

std::uint64_t cube_exchange_far_time(int d, WireModel wire) {
  return wire == WireModel::OneWay ? 2 * static_cast<std::uint64_t>(d) : static_cast<std::uint64_t>(d);
}

std::uint64_t cube_universal_exchange_time(int d, WireModel wire) {
  return wire == WireModel::OneWay ? std::uint64_t{1} << d : std::uint64_t{1} << (d - 1);
}

std::vector<BoundReport> hypercube_optimal_times(int d) {
  if (d < 1 || d > 62) throw std::invalid_argument("dimension out of range");
  std::vector<BoundReport> rows;
  const std::uint64_t p = std::uint64_t{1} << d;
  const auto ud = static_cast<std::uint64_t>(d);
  rows.push_back({BoundTask::UniversalBroadcast, WireModel::OneWay, oneway_broadcast_lower_bound(p, ud), 0,
                  "ceil(2(P-1)/d)"});
  rows.push_back({BoundTask::UniversalBroadcast, WireModel::TwoWay, twoway_broadcast_lower_bound(p, ud), 0,
                  "ceil((P-1)/d)"});
  if (d >= 2)
    rows.push_back({BoundTask::UniversalBroadcastAllButFarthest, WireModel::OneWay,
                    all_but_farthest_lower_bound(p, ud), 0, "ceil(2(P-2)/d)"});
  for (int l = 1; l <= d; ++l) {
    rows.push_back({BoundTask::BroadcastToDistance, WireModel::OneWay,
                    cube_broadcast_time(d, l, WireModel::OneWay), l, "ceil(2 N_l/d)"});
    rows.push_back({BoundTask::BroadcastToDistance, WireModel::TwoWay,
                    cube_broadcast_time(d, l, WireModel::TwoWay), l, "ceil(N_l/d)"});
  }
  for (int s = 1; s <= d - 2; ++s) {
    rows.push_back({BoundTask::UniversalExchangeDistS, WireModel::OneWay,
                    cube_exchange_time(d, s, WireModel::OneWay), s, "2 C(d-1,s-1)"});
    rows.push_back({BoundTask::UniversalExchangeDistS, WireModel::TwoWay,
                    cube_exchange_time(d, s, WireModel::TwoWay), s, "C(d-1,s-1)"});
  }
  if (d >= 2) {
    rows.push_back({BoundTask::ExchangeFar, WireModel::OneWay, cube_exchange_far_time(d, WireModel::OneWay), 0,
                    "2d"});
    rows.push_back({BoundTask::ExchangeFar, WireModel::TwoWay, cube_exchange_far_time(d, WireModel::TwoWay), 0,
                    "d"});
  }
  rows.push_back({BoundTask::UniversalExchange, WireModel::OneWay,
                  cube_universal_exchange_time(d, WireModel::OneWay), 0, "2^d"});
  rows.push_back({BoundTask::UniversalExchange, WireModel::TwoWay,
                  cube_universal_exchange_time(d, WireModel::TwoWay), 0, "2^(d-1)"});
  rows.push_back({BoundTask::GlobalSum, WireModel::TwoWay, ud, 0, "diameter"});
  return rows;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  if (mod == 1) return 0;
  unsigned __int128 result = 1;
  unsigned __int128 b = base % mod;
  while (exp > 0) {
    if (exp & 1) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

bool two_pow_not_one_mod(std::uint64_t d) { return pow_mod(2, d, d) != 1 % d; }

std::string bound_task_name(BoundTask task) {
  switch (task) {
    case BoundTask::UniversalBroadcast: return "universal_broadcast";
    case BoundTask::UniversalBroadcastAllButFarthest: return "broadcast_all_but_farthest";
    case BoundTask::BroadcastToDistance: return "broadcast_to_distance";
    case BoundTask::UniversalExchange: return "universal_exchange";
    case BoundTask::UniversalExchangeDistS: return "exchange_to_distance";
    case BoundTask::ExchangeFar: return "exchange_far";
    case BoundTask::GlobalSum: return "global_sum";
  }
  return "unknown";
}

std::string bounds_to_text(const std::vector<BoundReport>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(28) << "task" << std::setw(9) << "wire" << std::setw(7) << "param"
     << std::setw(10) << "tau" << "formula\n";
  for (const auto& r : rows) {
    os << std::setw(28) << bound_task_name(r.task) << std::setw(9) << wire_model_name(r.wire_model)
       << std::setw(7) << (r.parameter ? std::to_string(r.parameter) : "-") << std::setw(10) << r.value
       << r.formula_id << "\n";
  }
  return os.str();
}

std::string bounds_to_json(const std::vector<BoundReport>& rows) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row{{"task", bound_task_name(r.task)},
                       {"wire_model", wire_model_name(r.wire_model)},
                       {"value", r.value},
                       {"formula", r.formula_id}};
    if (r.parameter) row["param"] = r.parameter;
    j.push_back(row);
  }
  return j.dump(2) + "\n";
}

}  // namespace cayley
