#include "balance_lab/cycles.hpp"

#include "balance_lab/errors.hpp"

#include <algorithm>
#include <string>

namespace balance_lab {

void check_cycle_guard(const UndirectedSkeleton& g, bool force) {
  if (!force && g.size() > kCycleGuardNodes) {
    throw GuardExceeded("cycle enumeration refused: " + std::to_string(g.size()) +
                        " nodes exceeds the guard of " + std::to_string(kCycleGuardNodes) +
                        " (use --force to override)");
  }
}

bool is_cycle_of(const UndirectedSkeleton& g, const Cycle& c) {
  if (c.length() < 3) return false;
  std::vector<Node> sorted = c.nodes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  if (sorted.front() < 0 || sorted.back() >= g.size()) return false;
  for (std::size_t k = 0; k < c.length(); ++k) {
    if (!g.adjacent(c[k], c.next(k))) return false;
  }
  return true;
}

Cycle canonical_cycle(const Cycle& c) {
  if (c.nodes.empty()) return c;
  auto min_it = std::min_element(c.nodes.begin(), c.nodes.end());
  std::vector<Node> out(c.nodes.size());
  std::rotate_copy(c.nodes.begin(), min_it, c.nodes.end(), out.begin());
  if (out.size() > 2 && out[1] > out.back()) std::reverse(out.begin() + 1, out.end());
  return Cycle{std::move(out)};
}

namespace {

// Cycles are rooted at their smallest node `start`; the DFS only visits nodes
// greater than start and accepts a closing edge back to start when the path
// has >= 3 nodes and path[1] < path.back(), which removes the reflection.
class CycleSearch {
 public:
  CycleSearch(const UndirectedSkeleton& g, int max_len, std::vector<Cycle>& out)
      : g_(g), max_len_(max_len), out_(out), on_path_(static_cast<std::size_t>(g.size()), 0) {}

  void run() {
    for (Node s = 0; s < g_.size(); ++s) {
      start_ = s;
      path_.assign(1, s);
      on_path_[static_cast<std::size_t>(s)] = 1;
      extend(s);
      on_path_[static_cast<std::size_t>(s)] = 0;
    }
  }

 private:
  void extend(Node v) {
    const int len = static_cast<int>(path_.size());
    for (Node w = start_ + 1; w < g_.size(); ++w) {
      if (!g_.adjacent(v, w) || on_path_[static_cast<std::size_t>(w)]) continue;
      if (len + 1 > max_len_) continue;
      path_.push_back(w);
      on_path_[static_cast<std::size_t>(w)] = 1;
      if (len + 1 >= 3 && g_.adjacent(w, start_) && path_[1] < w) {
        out_.push_back(Cycle{path_});
      }
      extend(w);
      on_path_[static_cast<std::size_t>(w)] = 0;
      path_.pop_back();
    }
  }

  const UndirectedSkeleton& g_;
  int max_len_;
  std::vector<Cycle>& out_;
  std::vector<char> on_path_;
  std::vector<Node> path_;
  Node start_ = 0;
};

}  // namespace

std::vector<Cycle> enumerate_simple_cycles(const UndirectedSkeleton& g,
                                           const CycleEnumerationOptions& options) {
  check_cycle_guard(g, options.force);
  std::vector<Cycle> out;
  const int max_len = options.max_length.value_or(g.size());
  if (max_len < 3) return out;
  CycleSearch(g, max_len, out).run();
  return out;
}

}  // namespace balance_lab
