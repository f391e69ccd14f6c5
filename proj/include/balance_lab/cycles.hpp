#pragma once

#include "balance_lab/balance.hpp"
#include "balance_lab/graph.hpp"

#include <optional>
#include <vector>

namespace balance_lab {

/// Largest node count the exponential cycle routines accept without `force`.
inline constexpr int kCycleGuardNodes = 12;

struct CycleEnumerationOptions {
  /// Longest cycle reported; unbounded when empty.
  std::optional<int> max_length;
  /// Bypass the node-count guard.
  bool force = false;
};

/// Every simple cycle of length >= 3, once up to rotation and reflection.
/// Each cycle starts at its smallest node and satisfies nodes[1] < nodes.back().
/// Throws GuardExceeded for n > kCycleGuardNodes unless forced.
std::vector<Cycle> enumerate_simple_cycles(const UndirectedSkeleton& g,
                                           const CycleEnumerationOptions& options = {});

/// Throws GuardExceeded when g is above the cycle guard and force is false.
void check_cycle_guard(const UndirectedSkeleton& g, bool force);

/// True iff c has >= 3 distinct in-range nodes and every consecutive pair is an edge of g.
bool is_cycle_of(const UndirectedSkeleton& g, const Cycle& c);

/// Rotation/reflection canonical form used by enumerate_simple_cycles.
Cycle canonical_cycle(const Cycle& c);

}  // namespace balance_lab
