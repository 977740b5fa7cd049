#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cayley {

/// A subset of the directions e_1..e_d as a bitmask; e_j is bit j-1.
using Mask = std::uint64_t;

enum class SubsetErrc { InfeasibleStrengthening, NoRegularAntecedent, AssignmentInfeasible, OutOfRange };

class SubsetError : public std::runtime_error {
 public:
  SubsetError(SubsetErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  SubsetErrc code() const noexcept { return code_; }

 private:
  SubsetErrc code_;
};

struct OrderingConstraints {
  bool congruence = false;
  bool monotone_cardinality = false;
  bool antecedent = false;  // no S_j minus its required direction in the same block
  bool tail = false;        // tail rules when 1 <= N mod d <= d/2 (vacuous otherwise)
};

struct SubsetOrdering {
  int d = 0;
  std::vector<Mask> subsets;  // position i (1-based) is subsets[i-1]
  OrderingConstraints constraints_met;
  /// Times the search had to revise an already completed cardinality.
  std::size_t fallback_events = 0;
  std::size_t nodes = 0;
};

Mask full_mask(int d);
/// P^k: e_i -> e_{i+k}, indices mod d.
Mask rotate(Mask m, int k, int d);
/// Smallest b > 0 with P^b m = m.
int block_size(Mask m, int d);
/// Minimal rotation, used as the class key.
Mask canonical_rotation(Mask m, int d);
/// Direction index (bit) required at 1-based position i.
inline int required_bit(std::size_t position, int d) {
  return static_cast<int>((position - 1) % static_cast<std::size_t>(d));
}

struct BlockClass {
  Mask representative = 0;  // canonical rotation
  int block_size = 0;
  int n = 0;  // d / block_size
  bool is_special = false;
  std::vector<Mask> members;  // P^k representative, k = 0..b-1
};

/// Shift classes of the s-subsets, sorted by canonical representative.
std::vector<BlockClass> classify_subsets(int d, int s);

/// All s-subsets, whole classes kept consecutive, position i holding
/// e_(i mod d) where positions start at `start_index` (1-based).
SubsetOrdering order_s_subsets(int d, int s, std::size_t start_index = 1);

/// All nonempty subsets with at most l elements in non-decreasing size with
/// the congruence rule; `strengthen` requests the antecedent and/or tail
/// rules. Throws InfeasibleStrengthening when the search fails.
SubsetOrdering order_all_subsets(int d, int l, OrderingConstraints strengthen = {},
                                 std::size_t node_budget = 5'000'000);

/// Independent scan of an ordering of the subsets with at most l elements.
OrderingConstraints check_subset_ordering(int d, const std::vector<Mask>& subsets);

/// S minus the lowest direction that leaves a regular set.
Mask regular_antecedent(Mask s, int d);

struct ThetaEntry {
  std::size_t special_class = 0;               // index into classify_subsets(d, s)
  std::vector<std::size_t> regular_classes;    // n - 1 indices
};

/// Greedy pairing of each special class with n-1 unused regular classes of
/// the same size, special classes taken in decreasing n.
std::vector<ThetaEntry> theta_assignment(int d, int s);

int popcount(Mask m);

}  // namespace cayley
