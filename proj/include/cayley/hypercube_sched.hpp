#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cayley/schedule.hpp"
#include "cayley/subsets.hpp"

namespace cayley {

/// Root tree T_0 for broadcast to distance l, built from a strengthened
/// ordering. `edges[i]` is the edge into the (i+1)-th subset.
struct BroadcastTemplate {
  int d = 0;
  int l = 0;
  SubsetOrdering ordering;
  std::vector<TimedEdge> edges;  // times are block indices a + 1
  bool tail_swap = false;        // odd roots re-route the last block
  std::vector<TimedEdge> swapped_edges;  // replacement edges for the last block
};

BroadcastTemplate broadcast_template(int d, int l);

/// One-way universal broadcast to distance l. `parity_flip[e]` swaps which
/// parity class uses the odd step for direction e (default: none).
CommSchedule build_oneway_broadcast(int d, int l, const std::vector<bool>& parity_flip = {});
CommSchedule build_oneway_accumulation(int d, int l);

/// A path of the exchange template from 0 to `target`: directions in the
/// order traversed, each with its slot.
struct ExchangePath {
  Mask target = 0;
  std::vector<std::pair<int, Time>> steps;  // (direction bit, slot)
};

struct ExchangeBundle {
  Mask special = 0;
  int block = 0;  // b
  int n = 0;
  std::vector<Mask> regulars;  // class 1 first
  std::vector<int> first_order;  // path order of class 1
  Time first_slot = 0;
  Time slot_count = 0;
  bool table_layout = true;  // false: slots came from edge colouring
};

struct ExchangeTemplate {
  int d = 0;
  std::vector<int> distances;
  Time slots = 0;
  std::vector<ExchangePath> paths;
  std::vector<ExchangeBundle> bundles;
  std::size_t coloring_fallbacks = 0;  // bundles that left the table layout
  std::string method;
};

/// Template for exchange at distance s (1 <= s <= d-1): the seam layout for
/// special classes and their bundled regular classes, one slot per level for
/// the rest. Slots use each direction exactly once.
ExchangeTemplate exchange_template(int d, int s);
/// Distances d-1 and d together in d slots, by bipartite edge colouring.
ExchangeTemplate exchange_far_template(int d);

/// Slot checks: each direction at most once per slot, slots strictly
/// increasing along each path, each path spelling its target. Returns an
/// empty string when the template is sound.
std::string check_exchange_template(const ExchangeTemplate& t);

CommSchedule build_oneway_exchange(int d, int s);
CommSchedule build_oneway_exchange_far(int d);
CommSchedule build_universal_exchange(int d, WireModel wire);

enum class TwoWayTask { BroadcastToDistance, ExchangeToDistance, ExchangeFar, UniversalExchange };

CommSchedule build_twoway_variants(int d, TwoWayTask task, int param = 0);

/// Proper edge colouring of a bipartite multigraph with max-degree colours.
/// Edges are (left, right) pairs; returns a colour in 0..colours-1 per edge.
std::vector<int> bipartite_edge_coloring(std::size_t left, std::size_t right,
                                         const std::vector<std::pair<std::size_t, std::size_t>>& edges);

/// Translate template edges (u, v) by every x in Q_d with popcount parity
/// `parity` (0 or 1), or by every x when parity is -1. Returns directed edges.
std::vector<std::pair<Vertex, Vertex>> translate_template(const std::vector<std::pair<Vertex, Vertex>>& edges, int d,
                                                          int parity);

/// Audit dump of a template (ordering, bundles, slot tables) as JSON.
std::string broadcast_template_json(const BroadcastTemplate& t);
std::string exchange_template_json(const ExchangeTemplate& t);

}  // namespace cayley
