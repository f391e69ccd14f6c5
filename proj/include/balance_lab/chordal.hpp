#pragma once

#include "balance_lab/balance.hpp"
#include "balance_lab/graph.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace balance_lab {

/// Largest number of candidate chords is_subchordal accepts without `force`.
inline constexpr int kChordGuard = 20;
/// Largest edge count verify_equivalence_exhaustive accepts without `force`.
inline constexpr int kSignAssignmentGuardEdges = 14;

/// Chordal subgraph on a cycle's node set that contains every cycle edge.
struct SubchordalWitness {
  Cycle cycle;
  /// Chords of the cycle (edges of the ambient graph) kept in the witness.
  std::vector<Edge> extra_edges;

  /// Cycle edges plus extra_edges, sorted.
  std::vector<Edge> all_edges() const;
  /// The witness as a graph on the ambient node ids (size = ambient n).
  UndirectedSkeleton as_graph(int n) const;
};

using Triad = std::array<Node, 3>;

/// Triangulation of the cycle polygon: cycle length - 2 triads, each sorted.
struct TriangulationFan {
  std::vector<Triad> triads;
};

/// Edges of g between non-consecutive nodes of c, sorted.
std::vector<Edge> find_chords(const UndirectedSkeleton& g, const Cycle& c);

/// Splits c = (i_1..i_m) at chord {i_p, i_q}, p < q, into
/// (i_1..i_p, i_q..i_m) and (i_p, i_p+1, .., i_q).
std::pair<Cycle, Cycle> split_by_chord(const Cycle& c, Edge chord);

/// Perfect-elimination-ordering test on a maximum cardinality search order.
bool is_chordal(const UndirectedSkeleton& g);

/// A chordless cycle of length >= 4 (a hole), if g has one.
std::optional<Cycle> find_hole(const UndirectedSkeleton& g);

/// Searches chord subsets by branching on the chords of a hole in the current
/// candidate. Throws GuardExceeded above kChordGuard candidate chords unless forced.
std::optional<SubchordalWitness> is_subchordal(const UndirectedSkeleton& g, const Cycle& c,
                                               bool force = false);

/// True iff w is a valid witness for its cycle within g (or standalone if g is empty).
bool is_valid_witness(const UndirectedSkeleton& g, const SubchordalWitness& w);

/// Recursive chord splitting down to triads.
TriangulationFan fan_triangulation(const SubchordalWitness& w);

/// Three consecutive cycle nodes forming a witness triangle, found by
/// repeatedly shrinking to the shorter side of a witness chord. Returned in cycle order.
Triad consecutive_triad(const SubchordalWitness& w);

/// Node sets traversed exactly by some simple cycle and by no cycle through a strict superset.
std::vector<NodeSet> maximal_cyclic_subgraphs(const UndirectedSkeleton& g, bool force = false);

struct MaximalSubgraphCertificate {
  NodeSet nodes;
  bool certified = false;
  /// Cycle through exactly `nodes` satisfying both conditions (when certified).
  std::optional<SubchordalWitness> witness;
  /// Why no Hamiltonian cycle of the subgraph qualified (when not certified).
  std::string reason;
  /// Hamiltonian cycles examined.
  std::size_t cycles_examined = 0;
};

struct EquivalenceReport {
  bool holds = false;
  std::vector<MaximalSubgraphCertificate> subgraphs;
};

/// Sufficient condition for triad-wise <=> two-faction equivalence on every
/// bilateral X with this skeleton: each maximal cyclic subgraph with > 3 nodes
/// carries a subchordal Hamiltonian cycle C such that, for every chord of C, at
/// least one of the two split cycles is subchordal. Requires g connected.
EquivalenceReport check_equivalence_conditions(const UndirectedSkeleton& g, bool force = false);

struct ExhaustiveEquivalence {
  bool holds = true;
  std::size_t assignments = 0;
  /// Triad-wise balanced but not two-faction balanced, when one exists.
  std::optional<AppraisalMatrix> counterexample;
};

/// Checks triad-wise <=> two-faction over all 2^|E| sign-symmetric bilateral
/// sign assignments on g. Throws GuardExceeded above kSignAssignmentGuardEdges unless forced.
ExhaustiveEquivalence verify_equivalence_exhaustive(const UndirectedSkeleton& g,
                                                    bool force = false);

}  // namespace balance_lab
