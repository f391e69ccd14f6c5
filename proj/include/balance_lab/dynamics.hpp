#pragma once

#include "balance_lab/graph.hpp"
#include "balance_lab/rng.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace balance_lab {

/// Mechanism weights of the symmetry-influence-homophily (SIH) update.
struct SihParams {
  double p1 = 1.0 / 3.0;  // symmetry
  double p2 = 1.0 / 3.0;  // influence
  double p3 = 1.0 / 3.0;  // homophily

  /// Throws InvalidArgument unless all weights are positive and sum to 1 within 1e-12.
  void validate() const;
};

/// Branch weights of the SIOH update, plus the weights of its embedded SIH update.
struct SiohParams {
  double q1 = 1.0 / 3.0;  // opinion gossip
  double q2 = 1.0 / 3.0;  // person-opinion homophily
  double q3 = 1.0 / 3.0;  // embedded SIH update
  SihParams sih;

  void validate() const;
};

/// Opinions y in {-1, +1}^n.
class OpinionVector {
 public:
  using Storage = Eigen::Matrix<Entry, Eigen::Dynamic, 1>;

  OpinionVector() = default;
  explicit OpinionVector(Storage y);
  OpinionVector(std::initializer_list<int> values);

  int size() const { return static_cast<int>(y_.size()); }
  int operator[](Node i) const { return y_(i); }
  void set(Node i, int value);
  const Storage& values() const { return y_; }

  bool operator==(const OpinionVector& other) const {
    return y_.size() == other.y_.size() && y_ == other.y_;
  }

 private:
  Storage y_;
};

struct SiohState {
  AppraisalMatrix x;
  OpinionVector y;

  bool operator==(const SiohState&) const = default;
};

enum class Mechanism { Symmetry, Influence, Homophily, OpinionGossip, PersonOpinionHomophily };

std::string_view to_string(Mechanism m);
std::optional<Mechanism> mechanism_from_string(std::string_view name);

/// One applied update. For OpinionGossip the changed value is y_i; otherwise X_ij.
/// `neighbor` is set exactly for Influence and Homophily.
struct UpdateEvent {
  std::uint64_t step = 0;
  Node i = 0;
  Node j = 0;
  Mechanism mechanism = Mechanism::Symmetry;
  std::optional<Node> neighbor;
  int old_value = 0;
  int new_value = 0;

  bool changes_opinion() const { return mechanism == Mechanism::OpinionGossip; }
  bool operator==(const UpdateEvent&) const = default;
};

struct AbsorptionRecord {
  bool absorbed = false;
  /// Updates applied (T).
  std::uint64_t steps = 0;
  AppraisalMatrix final_x;
  std::optional<OpinionVector> final_y;
  std::vector<UpdateEvent> events;
  /// Constructive sequences only: number of leading zero-pattern symmetrization updates.
  std::uint64_t phase1_steps = 0;

  bool operator==(const AbsorptionRecord&) const = default;
};

inline constexpr std::uint64_t kDefaultMaxSteps = 1'000'000;

// ---- SIH -----------------------------------------------------------------

/// Ordered pairs (i, j), i != j, with X_ij != 0 or X_ji != 0, row-major.
std::vector<std::pair<Node, Node>> sih_candidate_pairs(const AppraisalMatrix& x);

/// k not in {i, j} with X_ik * X_jk != 0.
std::vector<Node> common_neighbors(const AppraisalMatrix& x, Node i, Node j);

/// Applies one specific SIH update of X_ij. Throws InvalidArgument if it is not
/// a possible outcome (pair not a candidate, Influence/Homophily without a
/// common neighbor k, or k given for Symmetry).
UpdateEvent apply_sih_update(AppraisalMatrix& x, Node i, Node j, Mechanism mechanism,
                             std::optional<Node> k = std::nullopt, std::uint64_t step = 0);

/// True iff `event` is a possible SIH update from state `before` with matching values.
bool is_legal_sih_update(const AppraisalMatrix& before, const UpdateEvent& event);

/// One random SIH step: pair uniform over candidates; symmetry when the pair has
/// no common neighbor, else mechanism drawn with weights (p1, p2, p3) and k
/// uniform over common neighbors. Throws InvalidArgument when there is no candidate.
UpdateEvent sih_step(AppraisalMatrix& x, const SihParams& params, CounterRng& rng,
                     std::uint64_t step = 0);

/// Literal equilibrium test: no possible update outcome changes X.
bool is_sih_equilibrium(const AppraisalMatrix& x);

/// Runs SIH until triad-wise balanced or max_steps updates.
AbsorptionRecord run_sih(const AppraisalMatrix& x0, const SihParams& params, std::uint64_t seed,
                         std::uint64_t max_steps = kDefaultMaxSteps, bool log = false);

/// Deterministic update sequence to triad-wise balance: zero-pattern
/// symmetrization, then resolve (-1, +1) pairs by symmetry and negative pairs of
/// unbalanced triads by influence. Always logs.
AbsorptionRecord constructive_sih_sequence(const AppraisalMatrix& x0);

/// Number of negative entries.
int potential_h(const AppraisalMatrix& x);

// ---- SIOH ----------------------------------------------------------------

/// Applies one specific SIOH update. Symmetry/Influence/Homophily are the
/// embedded SIH update (or the forced symmetry when X_ij = 0).
UpdateEvent apply_sioh_update(SiohState& state, Node i, Node j, Mechanism mechanism,
                              std::optional<Node> k = std::nullopt, std::uint64_t step = 0);

bool is_legal_sioh_update(const SiohState& before, const UpdateEvent& event);

UpdateEvent sioh_step(SiohState& state, const SiohParams& params, CounterRng& rng,
                      std::uint64_t step = 0);

/// Literal equilibrium test: no possible update outcome changes (X, y).
bool is_sioh_equilibrium(const SiohState& state);

/// X sign-symmetric and X_ij = y_i y_j on every link.
bool is_opinion_aligned(const SiohState& state);

AbsorptionRecord run_sioh(const SiohState& state0, const SiohParams& params, std::uint64_t seed,
                          std::uint64_t max_steps = kDefaultMaxSteps, bool log = false);

/// Deterministic update sequence to an SIOH equilibrium.
AbsorptionRecord constructive_sioh_sequence(const SiohState& state0);

/// Negative entries plus negative opinions.
int potential_h(const SiohState& state);

}  // namespace balance_lab
