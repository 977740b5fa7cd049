#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cayley/group.hpp"
#include "cayley/schedule.hpp"

namespace cayley {

/// Indexing of generators and vertices. `parents[i - 1]` is the position c
/// in generator_order with g_i * delta_c^-1 earlier in the order.
struct RegularOrder {
  std::vector<std::uint32_t> generator_order;
  std::vector<Vertex> vertex_order;
  std::vector<std::uint32_t> parents;
};

class RegularOrderInvalid : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Only graphs with a trivial subgroup are supported; anything else is
/// reported as a violation rather than guessed at.
ValidationReport check_regular_order(const CayleyGraph& graph, const RegularOrder& order);

RegularOrder hypercube_regular_order(int d);

/// Template tree from the order, translated by left multiplication to every
/// root. Two-way, time ceil((P-1)/d).
CommSchedule broadcast_from_regular_order(const CayleyGraph& graph, const RegularOrder& order);

enum class SearchStatus { Found, BudgetExhausted, ProvenInfeasible };

struct SearchResult {
  SearchStatus status = SearchStatus::BudgetExhausted;
  std::optional<CommSchedule> schedule;
  Time target_time = 0;
  std::uint64_t nodes = 0;
};

constexpr std::uint64_t kDefaultSearchBudget = 20'000'000;

/// Backtracking search for a two-way universal broadcast meeting the
/// counting bound exactly. Edges are decided step by step in (src, gen)
/// order; the last step is a matching. P <= 64.
SearchResult search_broadcast_schedule(const CayleyGraph& graph, std::uint64_t budget = kDefaultSearchBudget);

std::string search_status_name(SearchStatus s);
std::string regular_order_to_json(const RegularOrder& order);
RegularOrder regular_order_from_json(const std::string& text);

}  // namespace cayley
