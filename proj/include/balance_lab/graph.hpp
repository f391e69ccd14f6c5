#pragma once

#include <Eigen/Core>

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace balance_lab {

/// Node index. The library API is 0-based; text formats and reports are 1-based.
using Node = int;
using Entry = std::int8_t;
using EntryMatrix = Eigen::Matrix<Entry, Eigen::Dynamic, Eigen::Dynamic>;
using AdjacencyMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Unordered node pair, always stored with u < v.
struct Edge {
  Node u = 0;
  Node v = 0;

  Edge() = default;
  Edge(Node a, Node b) : u(a < b ? a : b), v(a < b ? b : a) {}

  auto operator<=>(const Edge&) const = default;
};

/// Sorted, duplicate-free subset of {0..n-1}.
class NodeSet {
 public:
  NodeSet() = default;
  NodeSet(std::initializer_list<Node> nodes);
  explicit NodeSet(std::vector<Node> nodes);

  /// All nodes 0..n-1.
  static NodeSet full(int n);

  const std::vector<Node>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(Node v) const;
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  /// Throws InvalidArgument if any member is outside [0, n).
  void check_within(int n) const;

  auto operator<=>(const NodeSet&) const = default;

 private:
  std::vector<Node> members_;
};

/// Ternary signed appraisal matrix: entries in {-1, 0, +1}, zero diagonal.
class AppraisalMatrix {
 public:
  AppraisalMatrix() = default;
  explicit AppraisalMatrix(int n);
  /// Validates the ternary and zero-diagonal invariants.
  explicit AppraisalMatrix(EntryMatrix entries);

  int size() const { return static_cast<int>(x_.rows()); }
  int operator()(Node i, Node j) const { return x_(i, j); }
  void set(Node i, Node j, int value);

  const EntryMatrix& entries() const { return x_; }

  bool operator==(const AppraisalMatrix& other) const {
    return x_.rows() == other.x_.rows() && x_ == other.x_;
  }

 private:
  EntryMatrix x_;
};

/// Unsigned undirected graph on nodes 0..n-1, symmetric boolean adjacency.
class UndirectedSkeleton {
 public:
  UndirectedSkeleton() = default;
  explicit UndirectedSkeleton(int n);
  UndirectedSkeleton(int n, std::span<const Edge> edges);
  UndirectedSkeleton(int n, std::initializer_list<Edge> edges)
      : UndirectedSkeleton(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  int size() const { return static_cast<int>(adj_.rows()); }
  bool adjacent(Node i, Node j) const { return adj_(i, j); }
  void add_edge(Node i, Node j);
  void remove_edge(Node i, Node j);

  std::vector<Edge> edges() const;
  std::size_t edge_count() const;
  std::vector<Node> neighbors(Node i) const;
  bool connected() const;

  const AdjacencyMatrix& adjacency() const { return adj_; }

  bool operator==(const UndirectedSkeleton& other) const {
    return adj_.rows() == other.adj_.rows() && adj_ == other.adj_;
  }

 private:
  AdjacencyMatrix adj_;
};

/// Induced subgraph with its contiguous re-indexing: `original[k]` is the
/// ambient id of local node k.
template <typename Graph>
struct Induced {
  Graph graph;
  std::vector<Node> original;
};

/// One signed directed entry in external (1-based) numbering.
struct SignedLink {
  int from = 0;
  int to = 0;
  int sign = 0;

  auto operator<=>(const SignedLink&) const = default;
};

/// Builds a matrix from 1-based (i, j, sign) triples. Rejects out-of-range ids,
/// self-loops, signs other than +-1, and repeated ordered pairs.
AppraisalMatrix from_edge_list(int n, std::span<const SignedLink> links);
inline AppraisalMatrix from_edge_list(int n, std::initializer_list<SignedLink> links) {
  return from_edge_list(n, std::span<const SignedLink>(links.begin(), links.size()));
}

/// Nonzero entries as 1-based triples sorted by (i, j).
std::vector<SignedLink> to_edge_list(const AppraisalMatrix& x);

/// |G|(X): {i,j} is an edge iff X_ij != 0 or X_ji != 0.
UndirectedSkeleton skeleton(const AppraisalMatrix& x);

/// X_ij != 0 <=> X_ji != 0 for all pairs.
bool is_bilateral(const AppraisalMatrix& x);

/// X_ij == X_ji for all pairs (implies bilateral).
bool is_sign_symmetric(const AppraisalMatrix& x);

/// Number of nonzero entries.
Eigen::Index nonzero_count(const AppraisalMatrix& x);
/// Number of negative entries.
Eigen::Index negative_count(const AppraisalMatrix& x);

Induced<AppraisalMatrix> induced_subgraph(const AppraisalMatrix& x, const NodeSet& nodes);
Induced<UndirectedSkeleton> induced_subgraph(const UndirectedSkeleton& g, const NodeSet& nodes);

/// Node i's ego-network: N_i = {j : X_ij != 0} u {i} and the induced matrix on it.
std::pair<NodeSet, Induced<AppraisalMatrix>> ego_network(const AppraisalMatrix& x, Node i);

}  // namespace balance_lab
