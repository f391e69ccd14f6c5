#include "balance_lab/chordal.hpp"

#include "balance_lab/cycles.hpp"
#include "balance_lab/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace balance_lab {

namespace {

std::string format_nodes(const std::vector<Node>& nodes) {
  std::ostringstream out;
  out << '(';
  for (std::size_t k = 0; k < nodes.size(); ++k) out << (k ? "," : "") << nodes[k] + 1;
  out << ')';
  return out.str();
}

std::size_t position_of(const Cycle& c, Node v) {
  auto it = std::find(c.nodes.begin(), c.nodes.end(), v);
  return it == c.nodes.end() ? c.length() : static_cast<std::size_t>(it - c.nodes.begin());
}

bool consecutive_positions(std::size_t p, std::size_t q, std::size_t m) {
  return q == p + 1 || (p == 0 && q + 1 == m);
}

// Shortest a-b path avoiding `blocked`; empty if none.
std::vector<Node> shortest_path(const UndirectedSkeleton& g, Node a, Node b,
                                const std::vector<char>& blocked) {
  const auto n = static_cast<std::size_t>(g.size());
  std::vector<Node> prev(n, -1);
  std::vector<char> seen(n, 0);
  std::deque<Node> queue{a};
  seen[static_cast<std::size_t>(a)] = 1;
  while (!queue.empty()) {
    Node v = queue.front();
    queue.pop_front();
    if (v == b) break;
    for (Node w = 0; w < g.size(); ++w) {
      auto wi = static_cast<std::size_t>(w);
      if (g.adjacent(v, w) && !seen[wi] && !blocked[wi]) {
        seen[wi] = 1;
        prev[wi] = v;
        queue.push_back(w);
      }
    }
  }
  if (!seen[static_cast<std::size_t>(b)]) return {};
  std::vector<Node> path;
  for (Node v = b; v != -1; v = prev[static_cast<std::size_t>(v)]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

// Witness search on the cycle's local graph (node k = cycle position k).
class WitnessSearch {
 public:
  WitnessSearch(std::size_t m, std::vector<Edge> chords) : m_(m), chords_(std::move(chords)) {}

  std::optional<std::vector<std::size_t>> run() {
    std::vector<char> included(chords_.size(), 0);
    std::vector<char> excluded(chords_.size(), 0);
    if (search(included, excluded)) {
      std::vector<std::size_t> chosen;
      for (std::size_t k = 0; k < chords_.size(); ++k) {
        if (found_[k]) chosen.push_back(k);
      }
      return chosen;
    }
    return std::nullopt;
  }

 private:
  UndirectedSkeleton build(const std::vector<char>& included) const {
    UndirectedSkeleton h(static_cast<int>(m_));
    for (std::size_t k = 0; k < m_; ++k) {
      h.add_edge(static_cast<Node>(k), static_cast<Node>((k + 1) % m_));
    }
    for (std::size_t k = 0; k < chords_.size(); ++k) {
      if (included[k]) h.add_edge(chords_[k].u, chords_[k].v);
    }
    return h;
  }

  bool search(std::vector<char>& included, std::vector<char>& excluded) {
    const auto h = build(included);
    const auto hole = find_hole(h);
    if (!hole) {
      found_ = included;
      return true;
    }
    // Any chordal supergraph must contain a chord of this hole.
    std::vector<std::size_t> candidates;
    for (std::size_t k = 0; k < chords_.size(); ++k) {
      if (included[k] || excluded[k]) continue;
      const auto p = position_of(*hole, chords_[k].u);
      const auto q = position_of(*hole, chords_[k].v);
      if (p == hole->length() || q == hole->length()) continue;
      if (!consecutive_positions(std::min(p, q), std::max(p, q), hole->length())) {
        candidates.push_back(k);
      }
    }
    std::vector<std::size_t> newly_excluded;
    bool ok = false;
    for (std::size_t k : candidates) {
      included[k] = 1;
      ok = search(included, excluded);
      included[k] = 0;
      if (ok) break;
      excluded[k] = 1;
      newly_excluded.push_back(k);
    }
    for (std::size_t k : newly_excluded) excluded[k] = 0;
    return ok;
  }

  std::size_t m_;
  std::vector<Edge> chords_;
  std::vector<char> found_;
};

void collect_fan(const Cycle& c, const UndirectedSkeleton& wg, std::vector<Triad>& out) {
  const std::size_t m = c.length();
  if (m == 3) {
    Triad t{c[0], c[1], c[2]};
    std::sort(t.begin(), t.end());
    out.push_back(t);
    return;
  }
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t q = p + 2; q < m; ++q) {
      if (consecutive_positions(p, q, m) || !wg.adjacent(c[p], c[q])) continue;
      auto [left, right] = split_by_chord(c, Edge(c[p], c[q]));
      collect_fan(left, wg, out);
      collect_fan(right, wg, out);
      return;
    }
  }
  throw InvalidArgument("witness is not chordal: cycle " + format_nodes(c.nodes) +
                        " has no chord");
}

std::uint64_t node_mask(const Cycle& c) {
  std::uint64_t mask = 0;
  for (Node v : c.nodes) mask |= std::uint64_t{1} << v;
  return mask;
}

NodeSet mask_to_set(std::uint64_t mask) {
  std::vector<Node> nodes;
  for (Node v = 0; v < 64; ++v) {
    if (mask & (std::uint64_t{1} << v)) nodes.push_back(v);
  }
  return NodeSet(std::move(nodes));
}

void check_mask_capacity(const UndirectedSkeleton& g) {
  if (g.size() > 64) throw GuardExceeded("cyclic-subgraph analysis supports at most 64 nodes");
}

}  // namespace

std::vector<Edge> SubchordalWitness::all_edges() const {
  std::vector<Edge> out = extra_edges;
  for (std::size_t k = 0; k < cycle.length(); ++k) out.emplace_back(cycle[k], cycle.next(k));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

UndirectedSkeleton SubchordalWitness::as_graph(int n) const {
  const auto edges = all_edges();
  return UndirectedSkeleton(n, edges);
}

std::vector<Edge> find_chords(const UndirectedSkeleton& g, const Cycle& c) {
  if (!is_cycle_of(g, c)) throw InvalidArgument("not a cycle of the graph: " + format_nodes(c.nodes));
  std::vector<Edge> out;
  const std::size_t m = c.length();
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t q = p + 2; q < m; ++q) {
      if (!consecutive_positions(p, q, m) && g.adjacent(c[p], c[q])) out.emplace_back(c[p], c[q]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<Cycle, Cycle> split_by_chord(const Cycle& c, Edge chord) {
  const std::size_t m = c.length();
  std::size_t p = position_of(c, chord.u);
  std::size_t q = position_of(c, chord.v);
  if (p == m || q == m) throw InvalidArgument("chord endpoint not on the cycle");
  if (p > q) std::swap(p, q);
  if (consecutive_positions(p, q, m) || p == q) {
    throw InvalidArgument("chord endpoints are consecutive on the cycle");
  }
  Cycle outer;
  outer.nodes.assign(c.nodes.begin(), c.nodes.begin() + static_cast<std::ptrdiff_t>(p) + 1);
  outer.nodes.insert(outer.nodes.end(), c.nodes.begin() + static_cast<std::ptrdiff_t>(q),
                     c.nodes.end());
  Cycle inner;
  inner.nodes.assign(c.nodes.begin() + static_cast<std::ptrdiff_t>(p),
                     c.nodes.begin() + static_cast<std::ptrdiff_t>(q) + 1);
  return {std::move(outer), std::move(inner)};
}

bool is_chordal(const UndirectedSkeleton& g) {
  const int n = g.size();
  const auto un = static_cast<std::size_t>(n);
  // Maximum cardinality search; alpha[v] = position, eliminated in increasing alpha.
  std::vector<int> weight(un, 0), alpha(un, -1);
  for (int pos = n - 1; pos >= 0; --pos) {
    Node pick = -1;
    for (Node v = 0; v < n; ++v) {
      auto vi = static_cast<std::size_t>(v);
      if (alpha[vi] < 0 && (pick < 0 || weight[vi] > weight[static_cast<std::size_t>(pick)])) {
        pick = v;
      }
    }
    alpha[static_cast<std::size_t>(pick)] = pos;
    for (Node w = 0; w < n; ++w) {
      if (g.adjacent(pick, w) && alpha[static_cast<std::size_t>(w)] < 0) {
        ++weight[static_cast<std::size_t>(w)];
      }
    }
  }
  // Perfect elimination check: the later neighbors of v, minus the earliest
  // of them (m), must all be adjacent to m.
  for (Node v = 0; v < n; ++v) {
    std::vector<Node> later;
    for (Node w = 0; w < n; ++w) {
      if (g.adjacent(v, w) && alpha[static_cast<std::size_t>(w)] > alpha[static_cast<std::size_t>(v)]) {
        later.push_back(w);
      }
    }
    if (later.empty()) continue;
    Node m = *std::min_element(later.begin(), later.end(), [&](Node a, Node b) {
      return alpha[static_cast<std::size_t>(a)] < alpha[static_cast<std::size_t>(b)];
    });
    for (Node w : later) {
      if (w != m && !g.adjacent(m, w)) return false;
    }
  }
  return true;
}

std::optional<Cycle> find_hole(const UndirectedSkeleton& g) {
  const int n = g.size();
  for (Node v = 0; v < n; ++v) {
    const auto nbrs = g.neighbors(v);
    for (std::size_t x = 0; x < nbrs.size(); ++x) {
      for (std::size_t y = x + 1; y < nbrs.size(); ++y) {
        const Node a = nbrs[x];
        const Node b = nbrs[y];
        if (g.adjacent(a, b)) continue;
        std::vector<char> blocked(static_cast<std::size_t>(n), 0);
        blocked[static_cast<std::size_t>(v)] = 1;
        for (Node w : nbrs) {
          if (w != a && w != b) blocked[static_cast<std::size_t>(w)] = 1;
        }
        auto path = shortest_path(g, a, b, blocked);
        if (path.empty()) continue;
        Cycle hole;
        hole.nodes.push_back(v);
        hole.nodes.insert(hole.nodes.end(), path.begin(), path.end());
        return hole;
      }
    }
  }
  return std::nullopt;
}

std::optional<SubchordalWitness> is_subchordal(const UndirectedSkeleton& g, const Cycle& c,
                                               bool force) {
  const auto chords = find_chords(g, c);
  if (c.length() == 3) return SubchordalWitness{c, {}};
  if (!force && static_cast<int>(chords.size()) > kChordGuard) {
    throw GuardExceeded("subchordal search refused: " + std::to_string(chords.size()) +
                        " candidate chords exceeds the guard of " + std::to_string(kChordGuard) +
                        " (use --force to override)");
  }
  std::vector<Edge> local;
  local.reserve(chords.size());
  for (const Edge& e : chords) {
    local.emplace_back(static_cast<Node>(position_of(c, e.u)), static_cast<Node>(position_of(c, e.v)));
  }
  auto chosen = WitnessSearch(c.length(), local).run();
  if (!chosen) return std::nullopt;
  SubchordalWitness w{c, {}};
  for (std::size_t k : *chosen) w.extra_edges.push_back(chords[k]);
  std::sort(w.extra_edges.begin(), w.extra_edges.end());
  return w;
}

bool is_valid_witness(const UndirectedSkeleton& g, const SubchordalWitness& w) {
  int n = g.size();
  for (Node v : w.cycle.nodes) n = std::max(n, v + 1);
  if (w.cycle.length() < 3) return false;
  const auto wg = w.as_graph(n);
  if (!is_cycle_of(wg, w.cycle)) return false;
  for (const Edge& e : w.extra_edges) {
    const auto p = position_of(w.cycle, e.u);
    const auto q = position_of(w.cycle, e.v);
    const auto m = w.cycle.length();
    if (p == m || q == m || consecutive_positions(std::min(p, q), std::max(p, q), m)) return false;
    if (g.size() > 0 && !g.adjacent(e.u, e.v)) return false;
  }
  NodeSet cycle_nodes(w.cycle.nodes);
  return is_chordal(induced_subgraph(wg, cycle_nodes).graph);
}

TriangulationFan fan_triangulation(const SubchordalWitness& w) {
  if (!is_valid_witness(UndirectedSkeleton{}, w)) throw InvalidArgument("invalid subchordal witness");
  int n = 0;
  for (Node v : w.cycle.nodes) n = std::max(n, v + 1);
  TriangulationFan fan;
  collect_fan(w.cycle, w.as_graph(n), fan.triads);
  std::sort(fan.triads.begin(), fan.triads.end());
  return fan;
}

Triad consecutive_triad(const SubchordalWitness& w) {
  if (!is_valid_witness(UndirectedSkeleton{}, w)) throw InvalidArgument("invalid subchordal witness");
  const Cycle& c = w.cycle;
  const std::size_t m = c.length();
  if (m == 3) return {c[0], c[1], c[2]};
  int n = 0;
  for (Node v : c.nodes) n = std::max(n, v + 1);
  const auto wg = w.as_graph(n);

  auto find_chord_within = [&](std::size_t lo, std::size_t hi,
                               std::pair<std::size_t, std::size_t> skip)
      -> std::optional<std::pair<std::size_t, std::size_t>> {
    for (std::size_t p = lo; p <= hi; ++p) {
      for (std::size_t q = p + 2; q <= hi; ++q) {
        if (std::make_pair(p, q) == skip || consecutive_positions(p, q, m)) continue;
        if (wg.adjacent(c[p], c[q])) return std::make_pair(p, q);
      }
    }
    return std::nullopt;
  };

  auto chord = find_chord_within(0, m - 1, {m, m});
  if (!chord) throw InvalidArgument("witness cycle has no chord");
  while (chord->second - chord->first > 2) {
    // The side (i_p .. i_q) is itself subchordal, so it has a strictly shorter chord.
    auto inner = find_chord_within(chord->first, chord->second, *chord);
    if (!inner) throw InvalidArgument("witness side " + format_nodes(c.nodes) + " has no chord");
    chord = inner;
  }
  return {c[chord->first], c[chord->first + 1], c[chord->second]};
}

std::vector<NodeSet> maximal_cyclic_subgraphs(const UndirectedSkeleton& g, bool force) {
  check_cycle_guard(g, force);
  check_mask_capacity(g);
  std::set<std::uint64_t> masks;
  for (const Cycle& c : enumerate_simple_cycles(g, {.max_length = std::nullopt, .force = true})) {
    masks.insert(node_mask(c));
  }
  std::vector<NodeSet> out;
  for (std::uint64_t m : masks) {
    bool maximal = true;
    for (std::uint64_t other : masks) {
      if (other != m && (other & m) == m) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(mask_to_set(m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

EquivalenceReport check_equivalence_conditions(const UndirectedSkeleton& g, bool force) {
  if (!g.connected()) throw InvalidArgument("equivalence conditions require a connected graph");
  check_cycle_guard(g, force);
  check_mask_capacity(g);

  const auto cycles = enumerate_simple_cycles(g, {.max_length = std::nullopt, .force = true});
  std::map<std::vector<Node>, bool> subchordal_cache;
  auto subchordal = [&](const Cycle& c) {
    auto key = canonical_cycle(c).nodes;
    auto it = subchordal_cache.find(key);
    if (it != subchordal_cache.end()) return it->second;
    bool ok = is_subchordal(g, c, force).has_value();
    subchordal_cache.emplace(std::move(key), ok);
    return ok;
  };

  EquivalenceReport report;
  report.holds = true;
  for (const NodeSet& s : maximal_cyclic_subgraphs(g, force)) {
    MaximalSubgraphCertificate cert;
    cert.nodes = s;
    if (s.size() <= 3) {
      cert.certified = true;
      cert.reason = "triangle: no condition applies";
      report.subgraphs.push_back(std::move(cert));
      continue;
    }
    std::uint64_t target = 0;
    for (Node v : s) target |= std::uint64_t{1} << v;

    bool any_subchordal = false;
    std::string failing_chord;
    for (const Cycle& c : cycles) {
      if (node_mask(c) != target) continue;
      ++cert.cycles_examined;
      auto witness = is_subchordal(g, c, force);
      if (!witness) continue;
      any_subchordal = true;
      bool chords_ok = true;
      for (const Edge& chord : find_chords(g, c)) {
        auto [outer, inner] = split_by_chord(c, chord);
        if (!subchordal(outer) && !subchordal(inner)) {
          chords_ok = false;
          if (failing_chord.empty()) {
            failing_chord = "cycle " + format_nodes(c.nodes) + " chord {" +
                            std::to_string(chord.u + 1) + "," + std::to_string(chord.v + 1) +
                            "}: neither " + format_nodes(outer.nodes) + " nor " +
                            format_nodes(inner.nodes) + " is subchordal";
          }
          break;
        }
      }
      if (chords_ok) {
        cert.certified = true;
        cert.witness = std::move(witness);
        break;
      }
    }
    if (!cert.certified) {
      cert.reason = any_subchordal
                        ? "every subchordal Hamiltonian cycle has a chord violating the split "
                          "condition; e.g. " + failing_chord
                        : "no Hamiltonian cycle of the subgraph is subchordal";
      report.holds = false;
    }
    report.subgraphs.push_back(std::move(cert));
  }
  return report;
}

ExhaustiveEquivalence verify_equivalence_exhaustive(const UndirectedSkeleton& g, bool force) {
  const auto edges = g.edges();
  if (!force && static_cast<int>(edges.size()) > kSignAssignmentGuardEdges) {
    throw GuardExceeded("exhaustive verification refused: " + std::to_string(edges.size()) +
                        " edges exceeds the guard of " +
                        std::to_string(kSignAssignmentGuardEdges) + " (use --force to override)");
  }
  if (edges.size() >= 63) throw GuardExceeded("too many edges for exhaustive verification");

  ExhaustiveEquivalence result;
  const std::uint64_t total = std::uint64_t{1} << edges.size();
  AppraisalMatrix x(g.size());
  for (std::uint64_t assignment = 0; assignment < total; ++assignment) {
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const int sign = (assignment >> k) & 1U ? -1 : 1;
      x.set(edges[k].u, edges[k].v, sign);
      x.set(edges[k].v, edges[k].u, sign);
    }
    ++result.assignments;
    const bool triad_wise = is_triad_wise_balanced(x);
    const bool two_faction = detect_two_faction(x).has_value();
    if (triad_wise != two_faction) {
      result.holds = false;
      result.counterexample = x;
      break;
    }
  }
  return result;
}

}  // namespace balance_lab
