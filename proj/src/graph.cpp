#include "balance_lab/graph.hpp"

#include "balance_lab/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace balance_lab {

namespace {

void check_node(Node i, int n, const char* what) {
  if (i < 0 || i >= n) {
    throw InvalidArgument(std::string(what) + ": node " + std::to_string(i) +
                          " outside [0, " + std::to_string(n) + ")");
  }
}

}  // namespace

NodeSet::NodeSet(std::initializer_list<Node> nodes) : NodeSet(std::vector<Node>(nodes)) {}

NodeSet::NodeSet(std::vector<Node> nodes) : members_(std::move(nodes)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

NodeSet NodeSet::full(int n) {
  std::vector<Node> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  return NodeSet(std::move(all));
}

bool NodeSet::contains(Node v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

void NodeSet::check_within(int n) const {
  for (Node v : members_) check_node(v, n, "node set");
}

AppraisalMatrix::AppraisalMatrix(int n) {
  if (n < 0) throw InvalidArgument("node count must be non-negative");
  x_ = EntryMatrix::Zero(n, n);
}

AppraisalMatrix::AppraisalMatrix(EntryMatrix entries) : x_(std::move(entries)) {
  if (x_.rows() != x_.cols()) throw InvalidArgument("appraisal matrix must be square");
  for (Eigen::Index i = 0; i < x_.rows(); ++i) {
    if (x_(i, i) != 0) throw InvalidArgument("appraisal matrix must have a zero diagonal");
    for (Eigen::Index j = 0; j < x_.cols(); ++j) {
      if (x_(i, j) < -1 || x_(i, j) > 1) {
        throw InvalidArgument("appraisal entries must be -1, 0 or +1");
      }
    }
  }
}

void AppraisalMatrix::set(Node i, Node j, int value) {
  check_node(i, size(), "set");
  check_node(j, size(), "set");
  if (value < -1 || value > 1) throw InvalidArgument("appraisal entries must be -1, 0 or +1");
  if (i == j && value != 0) throw InvalidArgument("self-loop at node " + std::to_string(i));
  x_(i, j) = static_cast<Entry>(value);
}

UndirectedSkeleton::UndirectedSkeleton(int n) {
  if (n < 0) throw InvalidArgument("node count must be non-negative");
  adj_ = AdjacencyMatrix::Constant(n, n, false);
}

UndirectedSkeleton::UndirectedSkeleton(int n, std::span<const Edge> edges)
    : UndirectedSkeleton(n) {
  for (const Edge& e : edges) add_edge(e.u, e.v);
}

void UndirectedSkeleton::add_edge(Node i, Node j) {
  check_node(i, size(), "add_edge");
  check_node(j, size(), "add_edge");
  if (i == j) throw InvalidArgument("self-loop at node " + std::to_string(i));
  adj_(i, j) = adj_(j, i) = true;
}

void UndirectedSkeleton::remove_edge(Node i, Node j) {
  check_node(i, size(), "remove_edge");
  check_node(j, size(), "remove_edge");
  adj_(i, j) = adj_(j, i) = false;
}

std::vector<Edge> UndirectedSkeleton::edges() const {
  std::vector<Edge> out;
  for (Node i = 0; i < size(); ++i) {
    for (Node j = i + 1; j < size(); ++j) {
      if (adj_(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

std::size_t UndirectedSkeleton::edge_count() const {
  return static_cast<std::size_t>(adj_.count() / 2);
}

std::vector<Node> UndirectedSkeleton::neighbors(Node i) const {
  check_node(i, size(), "neighbors");
  std::vector<Node> out;
  for (Node j = 0; j < size(); ++j) {
    if (adj_(i, j)) out.push_back(j);
  }
  return out;
}

bool UndirectedSkeleton::connected() const {
  const int n = size();
  if (n <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<Node> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    Node v = stack.back();
    stack.pop_back();
    for (Node w = 0; w < n; ++w) {
      if (adj_(v, w) && !seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

AppraisalMatrix from_edge_list(int n, std::span<const SignedLink> links) {
  if (n <= 0) throw InvalidArgument("node count must be positive");
  AppraisalMatrix x(n);
  std::set<std::pair<int, int>> seen;
  for (const SignedLink& l : links) {
    if (l.from < 1 || l.from > n || l.to < 1 || l.to > n) {
      throw InvalidArgument("link (" + std::to_string(l.from) + ", " + std::to_string(l.to) +
                            ") outside 1.." + std::to_string(n));
    }
    if (l.from == l.to) throw InvalidArgument("self-loop at node " + std::to_string(l.from));
    if (l.sign != 1 && l.sign != -1) {
      throw InvalidArgument("sign must be -1 or 1, got " + std::to_string(l.sign));
    }
    if (!seen.emplace(l.from, l.to).second) {
      throw InvalidArgument("duplicate link (" + std::to_string(l.from) + ", " +
                            std::to_string(l.to) + ")");
    }
    x.set(l.from - 1, l.to - 1, l.sign);
  }
  return x;
}

std::vector<SignedLink> to_edge_list(const AppraisalMatrix& x) {
  std::vector<SignedLink> out;
  for (Node i = 0; i < x.size(); ++i) {
    for (Node j = 0; j < x.size(); ++j) {
      if (x(i, j) != 0) out.push_back({i + 1, j + 1, x(i, j)});
    }
  }
  return out;
}

UndirectedSkeleton skeleton(const AppraisalMatrix& x) {
  UndirectedSkeleton g(x.size());
  const auto nz = (x.entries().array() != 0).eval();
  for (Node i = 0; i < x.size(); ++i) {
    for (Node j = i + 1; j < x.size(); ++j) {
      if (nz(i, j) || nz(j, i)) g.add_edge(i, j);
    }
  }
  return g;
}

bool is_bilateral(const AppraisalMatrix& x) {
  const auto nz = (x.entries().array() != 0).eval();
  return (nz == nz.transpose()).all();
}

bool is_sign_symmetric(const AppraisalMatrix& x) {
  return (x.entries().array() == x.entries().transpose().array()).all();
}

Eigen::Index nonzero_count(const AppraisalMatrix& x) {
  return (x.entries().array() != 0).count();
}

Eigen::Index negative_count(const AppraisalMatrix& x) {
  return (x.entries().array() < 0).count();
}

Induced<AppraisalMatrix> induced_subgraph(const AppraisalMatrix& x, const NodeSet& nodes) {
  nodes.check_within(x.size());
  const auto& idx = nodes.members();
  const auto k = static_cast<Eigen::Index>(idx.size());
  EntryMatrix sub(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      sub(a, b) = x.entries()(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
    }
  }
  return {AppraisalMatrix(std::move(sub)), idx};
}

Induced<UndirectedSkeleton> induced_subgraph(const UndirectedSkeleton& g, const NodeSet& nodes) {
  nodes.check_within(g.size());
  const auto& idx = nodes.members();
  const int k = static_cast<int>(idx.size());
  UndirectedSkeleton sub(k);
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      if (g.adjacent(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)])) {
        sub.add_edge(a, b);
      }
    }
  }
  return {std::move(sub), idx};
}

std::pair<NodeSet, Induced<AppraisalMatrix>> ego_network(const AppraisalMatrix& x, Node i) {
  check_node(i, x.size(), "ego_network");
  std::vector<Node> members{i};
  for (Node j = 0; j < x.size(); ++j) {
    if (x(i, j) != 0) members.push_back(j);
  }
  NodeSet set(std::move(members));
  auto sub = induced_subgraph(x, set);
  return {std::move(set), std::move(sub)};
}

}  // namespace balance_lab
