#include "cayley/subsets.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>

namespace cayley {

int popcount(Mask m) { return std::popcount(m); }

Mask full_mask(int d) { return d >= 64 ? ~Mask{0} : (Mask{1} << d) - 1; }

Mask rotate(Mask m, int k, int d) {
  k %= d;
  if (k < 0) k += d;
  if (k == 0) return m;
  return ((m << k) | (m >> (d - k))) & full_mask(d);
}

int block_size(Mask m, int d) {
  for (int b = 1; b < d; ++b)
    if (d % b == 0 && rotate(m, b, d) == m) return b;
  return d;
}

Mask canonical_rotation(Mask m, int d) {
  Mask best = m;
  for (int k = 1; k < d; ++k) best = std::min(best, rotate(m, k, d));
  return best;
}

namespace {

void check_range(int d, int s) {
  if (d < 1 || d > 63) throw SubsetError(SubsetErrc::OutOfRange, "dimension must be in 1..63");
  if (s < 1 || s > d) throw SubsetError(SubsetErrc::OutOfRange, "cardinality must be in 1..d");
}

// Subsets of size s in increasing numeric order (Gosper's hack).
std::vector<Mask> subsets_of_size(int d, int s) {
  std::vector<Mask> out;
  Mask m = (Mask{1} << s) - 1;
  const Mask limit = Mask{1} << d;
  while (m < limit) {
    out.push_back(m);
    const Mask c = m & (~m + 1);
    const Mask r = m + c;
    if (r == 0) break;
    m = (((r ^ m) >> 2) / c) | r;
  }
  return out;
}

// First rotation of `members` (by index) that contains `bit`.
int start_member(const BlockClass& c, int bit) {
  for (int k = 0; k < c.block_size; ++k)
    if (c.members[k] >> bit & 1) return k;
  return -1;
}

struct TailInfo {
  std::size_t n = 0;
  std::size_t r = 0;
  bool active = false;
};

TailInfo tail_info(int d, std::size_t n) {
  TailInfo t;
  t.n = n;
  t.r = n % static_cast<std::size_t>(d);
  t.active = t.r >= 1 && 2 * t.r <= static_cast<std::size_t>(d);
  return t;
}

// Second direction of tail set R_j (position q): e_{j+r}.
int tail_bit(std::size_t q, const TailInfo& t) { return static_cast<int>(q - (t.n - t.r) - 1 + t.r); }

// Back-to-front search. Positions whose block straddles two cardinalities,
// and the tail positions, are assigned one subset at a time under the
// constraints; the remaining positions of each cardinality only need the
// congruence rule and are filled by bipartite matching.
class OrderingSearch {
 public:
  OrderingSearch(int d, int l, OrderingConstraints flags, std::size_t budget)
      : d_(d), flags_(flags), budget_(budget) {
    std::size_t lo = 1;
    for (int s = 1; s <= l; ++s) {
      Level lv;
      for (const auto& c : classify_subsets(d, s))
        for (Mask m : c.members) lv.sets.push_back(m);
      std::sort(lv.sets.begin(), lv.sets.end());
      lv.used.assign(lv.sets.size(), 0);
      lv.lo = lo;
      lv.hi = lo + lv.sets.size() - 1;
      lo = lv.hi + 1;
      levels_.push_back(std::move(lv));
    }
    n_ = lo - 1;
    tail_ = tail_info(d, n_);
    if (!flags_.tail) tail_.active = false;
    pos_.assign(n_ + 1, 0);
    for (auto& lv : levels_) {
      for (std::size_t q = lv.hi; q >= lv.lo; --q) {
        (constrained(q, lv) ? lv.zone : lv.middle).push_back(q);
        if (q == lv.lo) break;
      }
    }
  }

  SubsetOrdering run() {
    if (!fill_level(levels_.size())) {
      throw SubsetError(SubsetErrc::InfeasibleStrengthening,
                        "no strengthened ordering for d=" + std::to_string(d_) + " with " +
                            std::to_string(n_) + " subsets" +
                            (nodes_ >= budget_ ? " (search budget exhausted)" : ""));
    }
    SubsetOrdering out;
    out.d = d_;
    out.subsets.assign(pos_.begin() + 1, pos_.end());
    out.fallback_events = fallbacks_;
    out.nodes = nodes_;
    out.constraints_met = check_subset_ordering(d_, out.subsets);
    return out;
  }

 private:
  struct Level {
    std::vector<Mask> sets;
    std::vector<char> used;
    std::size_t lo = 0;
    std::size_t hi = 0;
    std::vector<std::size_t> zone;    // descending
    std::vector<std::size_t> middle;  // descending
  };

  bool constrained(std::size_t q, const Level& lv) const {
    if (tail_.active && q > n_ - tail_.r) return true;
    if (!flags_.antecedent) return false;
    const auto du = static_cast<std::size_t>(d_);
    const std::size_t first = (q - 1) / du * du + 1;
    const std::size_t last = std::min(n_, first + du - 1);
    return first < lv.lo || last > lv.hi;
  }

  Mask antecedent(std::size_t q) const { return pos_[q] & ~(Mask{1} << required_bit(q, d_)); }

  // Checks position q against already placed positions above it.
  bool admissible(std::size_t q) const {
    const Mask m = pos_[q];
    if (flags_.antecedent) {
      const auto du = static_cast<std::size_t>(d_);
      const std::size_t block_end = std::min(n_, ((q - 1) / du + 1) * du);
      const Mask own = antecedent(q);
      for (std::size_t o = q + 1; o <= block_end; ++o)
        if (antecedent(o) == m || own == pos_[o]) return false;
    }
    if (tail_.active && q > n_ - tail_.r) {
      const int tb = tail_bit(q, tail_);
      if (!(m >> tb & 1)) return false;
      const Mask own = m & ~(Mask{1} << tb);
      for (std::size_t o = q + 1; o <= n_; ++o) {
        const Mask other = pos_[o] & ~(Mask{1} << tail_bit(o, tail_));
        if (other == m || own == pos_[o]) return false;
      }
    }
    return true;
  }

  // Levels with index >= li are complete; fill level li-1 and below.
  bool fill_level(std::size_t li) {
    if (li == 0) return true;
    if (fill_zone(li - 1, 0)) return true;
    if (li < levels_.size()) ++fallbacks_;
    return false;
  }

  bool fill_zone(std::size_t li, std::size_t k) {
    auto& lv = levels_[li];
    if (k == lv.zone.size()) {
      if (!match_middle(lv)) return false;
      if (fill_level(li)) return true;
      for (auto q : lv.middle) release(lv, q);
      return false;
    }
    if (++nodes_ > budget_) return false;
    const std::size_t q = lv.zone[k];
    const int bit = required_bit(q, d_);
    for (std::size_t i = 0; i < lv.sets.size(); ++i) {
      if (lv.used[i] || !(lv.sets[i] >> bit & 1)) continue;
      pos_[q] = lv.sets[i];
      if (admissible(q)) {
        lv.used[i] = 1;
        if (fill_zone(li, k + 1)) return true;
        lv.used[i] = 0;
      }
      pos_[q] = 0;
      if (nodes_ > budget_) return false;
    }
    return false;
  }

  void release(Level& lv, std::size_t q) {
    const auto it = std::lower_bound(lv.sets.begin(), lv.sets.end(), pos_[q]);
    lv.used[static_cast<std::size_t>(it - lv.sets.begin())] = 0;
    pos_[q] = 0;
  }

  // Kuhn's augmenting paths: middle positions to unused sets holding the
  // position's required direction.
  bool match_middle(Level& lv) {
    const auto& mid = lv.middle;
    std::vector<std::size_t> free_sets;
    for (std::size_t i = 0; i < lv.sets.size(); ++i)
      if (!lv.used[i]) free_sets.push_back(i);
    if (free_sets.size() != mid.size()) return false;
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<std::size_t> set_owner(free_sets.size(), kNone);
    std::vector<char> seen;
    std::function<bool(std::size_t)> augment = [&](std::size_t p) {
      const int bit = required_bit(mid[p], d_);
      for (std::size_t j = 0; j < free_sets.size(); ++j) {
        if (seen[j] || !(lv.sets[free_sets[j]] >> bit & 1)) continue;
        seen[j] = 1;
        if (set_owner[j] == kNone || augment(set_owner[j])) {
          set_owner[j] = p;
          return true;
        }
      }
      return false;
    };
    std::vector<char> matched(mid.size(), 0);
    std::size_t cursor = 0;  // greedy pass; classes make this nearly perfect
    for (std::size_t p = 0; p < mid.size(); ++p) {
      const int bit = required_bit(mid[p], d_);
      for (std::size_t step = 0; step < free_sets.size(); ++step) {
        const std::size_t j = (cursor + step) % free_sets.size();
        if (set_owner[j] == kNone && (lv.sets[free_sets[j]] >> bit & 1)) {
          set_owner[j] = p;
          matched[p] = 1;
          cursor = j + 1;
          break;
        }
      }
    }
    for (std::size_t p = 0; p < mid.size(); ++p) {
      if (matched[p]) continue;
      seen.assign(free_sets.size(), 0);
      if (!augment(p)) return false;
    }
    for (std::size_t j = 0; j < free_sets.size(); ++j) {
      pos_[mid[set_owner[j]]] = lv.sets[free_sets[j]];
      lv.used[free_sets[j]] = 1;
    }
    return true;
  }

  int d_;
  OrderingConstraints flags_;
  std::size_t budget_;
  std::vector<Level> levels_;
  std::vector<Mask> pos_;
  std::size_t n_ = 0;
  TailInfo tail_;
  std::size_t nodes_ = 0;
  std::size_t fallbacks_ = 0;
};

}  // namespace

std::vector<BlockClass> classify_subsets(int d, int s) {
  check_range(d, s);
  if (d > 30) throw SubsetError(SubsetErrc::OutOfRange, "subset enumeration limited to d <= 30");
  std::map<Mask, BlockClass> classes;
  for (Mask m : subsets_of_size(d, s)) {
    const Mask key = canonical_rotation(m, d);
    if (classes.count(key)) continue;
    BlockClass c;
    c.representative = key;
    c.block_size = block_size(key, d);
    c.n = d / c.block_size;
    c.is_special = c.block_size < d;
    for (int k = 0; k < c.block_size; ++k) c.members.push_back(rotate(key, k, d));
    classes.emplace(key, std::move(c));
  }
  std::vector<BlockClass> out;
  out.reserve(classes.size());
  for (auto& [key, c] : classes) out.push_back(std::move(c));
  return out;
}

SubsetOrdering order_s_subsets(int d, int s, std::size_t start_index) {
  check_range(d, s);
  if (start_index < 1) throw SubsetError(SubsetErrc::OutOfRange, "start index is 1-based");
  SubsetOrdering out;
  out.d = d;
  std::size_t q = start_index;
  for (const auto& c : classify_subsets(d, s)) {
    const int k = start_member(c, required_bit(q, d));
    for (int i = 0; i < c.block_size; ++i, ++q) out.subsets.push_back(rotate(c.members[k], i, d));
  }
  out.constraints_met.congruence = true;
  out.constraints_met.monotone_cardinality = true;
  return out;
}

SubsetOrdering order_all_subsets(int d, int l, OrderingConstraints strengthen, std::size_t node_budget) {
  check_range(d, l);
  if (!strengthen.antecedent && !strengthen.tail) {
    SubsetOrdering out;
    out.d = d;
    for (int s = 1; s <= l; ++s) {
      auto part = order_s_subsets(d, s, out.subsets.size() + 1);
      out.subsets.insert(out.subsets.end(), part.subsets.begin(), part.subsets.end());
    }
    out.constraints_met = check_subset_ordering(d, out.subsets);
    return out;
  }
  return OrderingSearch(d, l, strengthen, node_budget).run();
}

OrderingConstraints check_subset_ordering(int d, const std::vector<Mask>& subsets) {
  OrderingConstraints c{true, true, true, true};
  const std::size_t n = subsets.size();
  const auto du = static_cast<std::size_t>(d);
  for (std::size_t q = 1; q <= n; ++q) {
    const Mask m = subsets[q - 1];
    if (!(m >> required_bit(q, d) & 1)) c.congruence = false;
    if (q > 1 && popcount(subsets[q - 2]) > popcount(m)) c.monotone_cardinality = false;
  }
  for (std::size_t start = 1; start <= n; start += du) {
    const std::size_t end = std::min(n, start + du - 1);
    for (std::size_t j = start; j <= end; ++j) {
      const Mask ante = subsets[j - 1] & ~(Mask{1} << required_bit(j, d));
      for (std::size_t i = start; i <= end; ++i)
        if (subsets[i - 1] == ante) c.antecedent = false;
    }
  }
  const auto t = tail_info(d, n);
  if (t.active) {
    for (std::size_t q = n - t.r + 1; q <= n; ++q) {
      const int tb = tail_bit(q, t);
      const Mask m = subsets[q - 1];
      if (!(m >> tb & 1)) {
        c.tail = false;
        continue;
      }
      const Mask ante = m & ~(Mask{1} << tb);
      for (std::size_t o = n - t.r + 1; o <= n; ++o)
        if (subsets[o - 1] == ante) c.tail = false;
    }
  }
  return c;
}

Mask regular_antecedent(Mask s, int d) {
  if (popcount(s) < 2)
    throw SubsetError(SubsetErrc::NoRegularAntecedent, "antecedent needs at least two elements");
  for (int i = 0; i < d; ++i) {
    if (!(s >> i & 1)) continue;
    const Mask a = s & ~(Mask{1} << i);
    if (block_size(a, d) == d) return a;
  }
  throw SubsetError(SubsetErrc::NoRegularAntecedent, "set " + std::to_string(s) + " has no regular antecedent");
}

std::vector<ThetaEntry> theta_assignment(int d, int s) {
  if (s >= d) throw SubsetError(SubsetErrc::OutOfRange, "theta needs s < d");
  const auto classes = classify_subsets(d, s);
  std::vector<std::size_t> special;
  std::vector<std::size_t> regular;
  for (std::size_t i = 0; i < classes.size(); ++i) (classes[i].is_special ? special : regular).push_back(i);
  std::stable_sort(special.begin(), special.end(),
                   [&](std::size_t a, std::size_t b) { return classes[a].n > classes[b].n; });
  std::vector<ThetaEntry> out;
  std::size_t next = 0;
  for (auto c : special) {
    ThetaEntry e;
    e.special_class = c;
    for (int k = 0; k + 1 < classes[c].n; ++k) {
      if (next >= regular.size())
        throw SubsetError(SubsetErrc::AssignmentInfeasible,
                          "not enough regular classes for d=" + std::to_string(d) + " s=" + std::to_string(s));
      e.regular_classes.push_back(regular[next++]);
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace cayley
