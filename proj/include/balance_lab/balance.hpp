#pragma once

#include "balance_lab/graph.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace balance_lab {

/// Ordered sequence of distinct nodes; consecutive nodes (and last -> first)
/// are linked in the ambient graph.
struct Cycle {
  std::vector<Node> nodes;

  std::size_t length() const { return nodes.size(); }
  Node operator[](std::size_t k) const { return nodes[k]; }
  /// Node following position k, wrapping around.
  Node next(std::size_t k) const { return nodes[(k + 1) % nodes.size()]; }

  bool operator==(const Cycle&) const = default;
};

enum class PartitionKind { TwoFaction, NoNegativeLinks };

/// Witness for two-faction balance. For NoNegativeLinks, v1 = V and v2 is empty.
struct FactionPartition {
  PartitionKind kind = PartitionKind::TwoFaction;
  NodeSet v1;
  NodeSet v2;
};

std::string_view to_string(PartitionKind kind);

enum class ViolationKind { AsymmetricPair, NegativeTriad };

/// A failed balance property: an unordered pair (P1) or a directed triad (P2).
struct BalanceViolation {
  ViolationKind kind = ViolationKind::AsymmetricPair;
  std::vector<Node> nodes;

  bool operator==(const BalanceViolation&) const = default;
};

std::string_view to_string(ViolationKind kind);

struct TriadBalance {
  bool balanced = true;
  std::vector<BalanceViolation> violations;
};

/// Directed 3-cycles (i, j, k) with X_ij, X_jk, X_ki all nonzero, reported
/// with the smallest node first; the two orientations of a triangle count separately.
std::vector<Cycle> enumerate_triads(const AppraisalMatrix& x);

/// P1 (X_ij X_ji > 0 on every link) and P2 (positive product on every triad).
/// Collects every violation: each asymmetric unordered pair once, every negative triad.
TriadBalance check_triad_wise(const AppraisalMatrix& x);

/// Short-circuiting form of check_triad_wise(x).balanced.
bool is_triad_wise_balanced(const AppraisalMatrix& x);

/// Two-faction partition via union-find with parity over the pair constraints.
/// Returns NoNegativeLinks when X has no negative entry (including all-zero X).
std::optional<FactionPartition> detect_two_faction(const AppraisalMatrix& x);

/// Direct scan of every entry against the two-faction definition.
bool partition_certifies(const AppraisalMatrix& x, const FactionPartition& partition);

/// Product of X along the directed traversal of c (wrap-around included).
/// Throws InvalidArgument if a traversed entry is zero.
int cycle_sign(const AppraisalMatrix& x, const Cycle& c);

/// Requires bilateral, sign-symmetric X. Guarded like enumerate_simple_cycles.
bool all_cycles_positive(const AppraisalMatrix& x, bool force = false);

/// Ego-network two-faction check for every node.
bool all_ego_networks_two_faction(const AppraisalMatrix& x);

}  // namespace balance_lab
