#include "balance_lab/balance.hpp"

#include "balance_lab/cycles.hpp"
#include "balance_lab/errors.hpp"

#include <numeric>
#include <string>

namespace balance_lab {

std::string_view to_string(PartitionKind kind) {
  return kind == PartitionKind::TwoFaction ? "two-faction" : "no-negative-links";
}

std::string_view to_string(ViolationKind kind) {
  return kind == ViolationKind::AsymmetricPair ? "asymmetric-pair" : "negative-triad";
}

std::vector<Cycle> enumerate_triads(const AppraisalMatrix& x) {
  std::vector<Cycle> out;
  const int n = x.size();
  for (Node i = 0; i < n; ++i) {
    for (Node j = i + 1; j < n; ++j) {
      for (Node k = i + 1; k < n; ++k) {
        if (k == j) continue;
        if (x(i, j) != 0 && x(j, k) != 0 && x(k, i) != 0) out.push_back(Cycle{{i, j, k}});
      }
    }
  }
  return out;
}

TriadBalance check_triad_wise(const AppraisalMatrix& x) {
  TriadBalance result;
  const int n = x.size();
  for (Node i = 0; i < n; ++i) {
    for (Node j = i + 1; j < n; ++j) {
      const bool linked = x(i, j) != 0 || x(j, i) != 0;
      if (linked && x(i, j) * x(j, i) <= 0) {
        result.violations.push_back({ViolationKind::AsymmetricPair, {i, j}});
      }
    }
  }
  for (const Cycle& t : enumerate_triads(x)) {
    if (x(t[0], t[1]) * x(t[1], t[2]) * x(t[2], t[0]) < 0) {
      result.violations.push_back({ViolationKind::NegativeTriad, t.nodes});
    }
  }
  result.balanced = result.violations.empty();
  return result;
}

bool is_triad_wise_balanced(const AppraisalMatrix& x) {
  const int n = x.size();
  for (Node i = 0; i < n; ++i) {
    for (Node j = 0; j < n; ++j) {
      if (x(i, j) == 0) continue;
      if (x(i, j) != x(j, i)) return false;
      for (Node k = 0; k < n; ++k) {
        if (k != i && k != j && x(j, k) != 0 && x(k, i) != 0 &&
            x(i, j) * x(j, k) * x(k, i) < 0) {
          return false;
        }
      }
    }
  }
  return true;
}

namespace {

// Union-find where each node stores the parity of its side relative to its parent.
class ParityUnionFind {
 public:
  explicit ParityUnionFind(int n)
      : parent_(static_cast<std::size_t>(n)), parity_(static_cast<std::size_t>(n), 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  // Returns (root, parity of v relative to root).
  std::pair<Node, int> find(Node v) {
    auto idx = static_cast<std::size_t>(v);
    if (parent_[idx] == v) return {v, 0};
    auto [root, p] = find(parent_[idx]);
    parity_[idx] ^= p;
    parent_[idx] = root;
    return {root, parity_[idx]};
  }

  // Requires parity(a) xor parity(b) == diff; false on contradiction.
  bool unite(Node a, Node b, int diff) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return (pa ^ pb) == diff;
    parent_[static_cast<std::size_t>(rb)] = ra;
    parity_[static_cast<std::size_t>(rb)] = pa ^ pb ^ diff;
    return true;
  }

 private:
  std::vector<Node> parent_;
  std::vector<int> parity_;
};

}  // namespace

std::optional<FactionPartition> detect_two_faction(const AppraisalMatrix& x) {
  const int n = x.size();
  if (negative_count(x) == 0) {
    return FactionPartition{PartitionKind::NoNegativeLinks, NodeSet::full(n), NodeSet{}};
  }

  ParityUnionFind uf(n);
  for (Node i = 0; i < n; ++i) {
    for (Node j = i + 1; j < n; ++j) {
      const bool same = x(i, j) > 0 || x(j, i) > 0;
      const bool different = x(i, j) < 0 || x(j, i) < 0;
      if (same && different) return std::nullopt;
      if (same && !uf.unite(i, j, 0)) return std::nullopt;
      if (different && !uf.unite(i, j, 1)) return std::nullopt;
    }
  }

  // Components are colored independently; each root lands in v1.
  std::vector<Node> v1, v2;
  for (Node v = 0; v < n; ++v) {
    (uf.find(v).second == 0 ? v1 : v2).push_back(v);
  }
  FactionPartition partition{PartitionKind::TwoFaction, NodeSet(std::move(v1)),
                             NodeSet(std::move(v2))};
  if (!partition_certifies(x, partition)) {
    throw std::logic_error("detect_two_faction produced a partition that fails verification");
  }
  return partition;
}

bool partition_certifies(const AppraisalMatrix& x, const FactionPartition& partition) {
  const int n = x.size();
  if (partition.kind == PartitionKind::NoNegativeLinks) {
    return partition.v2.empty() && negative_count(x) == 0;
  }
  if (static_cast<int>(partition.v1.size() + partition.v2.size()) != n) return false;
  std::vector<int> side(static_cast<std::size_t>(n), -1);
  for (Node v : partition.v1) {
    if (v < 0 || v >= n) return false;
    side[static_cast<std::size_t>(v)] = 0;
  }
  for (Node v : partition.v2) {
    if (v < 0 || v >= n || side[static_cast<std::size_t>(v)] != -1) return false;
    side[static_cast<std::size_t>(v)] = 1;
  }
  for (Node i = 0; i < n; ++i) {
    for (Node j = 0; j < n; ++j) {
      const bool same_side = side[static_cast<std::size_t>(i)] == side[static_cast<std::size_t>(j)];
      if (same_side && x(i, j) < 0) return false;
      if (!same_side && x(i, j) > 0) return false;
    }
  }
  return true;
}

int cycle_sign(const AppraisalMatrix& x, const Cycle& c) {
  if (c.length() < 2) throw InvalidArgument("cycle needs at least two nodes");
  int sign = 1;
  for (std::size_t k = 0; k < c.length(); ++k) {
    const Node a = c[k];
    const Node b = c.next(k);
    if (a < 0 || a >= x.size() || b < 0 || b >= x.size()) {
      throw InvalidArgument("cycle node outside the matrix");
    }
    if (x(a, b) == 0) {
      throw InvalidArgument("cycle traverses a zero entry (" + std::to_string(a + 1) + ", " +
                            std::to_string(b + 1) + ")");
    }
    sign *= x(a, b);
  }
  return sign;
}

bool all_cycles_positive(const AppraisalMatrix& x, bool force) {
  if (!is_sign_symmetric(x)) {
    throw InvalidArgument("all_cycles_positive requires a bilateral, sign-symmetric matrix");
  }
  const auto g = skeleton(x);
  for (const Cycle& c : enumerate_simple_cycles(g, {.max_length = std::nullopt, .force = force})) {
    if (cycle_sign(x, c) < 0) return false;
  }
  return true;
}

bool all_ego_networks_two_faction(const AppraisalMatrix& x) {
  for (Node i = 0; i < x.size(); ++i) {
    if (!detect_two_faction(ego_network(x, i).second.graph)) return false;
  }
  return true;
}

}  // namespace balance_lab
