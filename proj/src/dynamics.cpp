#include "balance_lab/dynamics.hpp"

#include "balance_lab/balance.hpp"
#include "balance_lab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace balance_lab {

namespace {

void check_weights(double a, double b, double c, const char* what) {
  if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0) || std::abs(a + b + c - 1.0) > 1e-12) {
    throw InvalidArgument(std::string(what) + " must be positive and sum to 1");
  }
}

void check_pair(const AppraisalMatrix& x, Node i, Node j) {
  const int n = x.size();
  if (i < 0 || i >= n || j < 0 || j >= n || i == j) {
    throw InvalidArgument("invalid node pair (" + std::to_string(i) + ", " + std::to_string(j) + ")");
  }
  if (x(i, j) == 0 && x(j, i) == 0) {
    throw InvalidArgument("pair (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                          ") has no link in either direction");
  }
}

struct DrawnUpdate {
  Mechanism mechanism = Mechanism::Symmetry;
  std::optional<Node> neighbor;
};

// Mechanism and neighbor for an SIH update of the already chosen pair (i, j).
DrawnUpdate draw_sih_update(const AppraisalMatrix& x, Node i, Node j, const SihParams& params,
                            CounterRng& rng) {
  const auto common = common_neighbors(x, i, j);
  if (common.empty()) return {};
  const double u = rng.uniform01();
  if (u < params.p1) return {};
  const Mechanism m = u < params.p1 + params.p2 ? Mechanism::Influence : Mechanism::Homophily;
  return {m, common[rng.below(common.size())]};
}

std::pair<Node, Node> draw_pair(const AppraisalMatrix& x, CounterRng& rng) {
  const auto pairs = sih_candidate_pairs(x);
  if (pairs.empty()) throw InvalidArgument("no candidate pair: the appraisal matrix is all zero");
  return pairs[rng.below(pairs.size())];
}

// First ordered pair with X_ij == 0 and X_ji != 0.
std::optional<std::pair<Node, Node>> find_unilateral_zero(const AppraisalMatrix& x) {
  for (Node i = 0; i < x.size(); ++i) {
    for (Node j = 0; j < x.size(); ++j) {
      if (i != j && x(i, j) == 0 && x(j, i) != 0) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

// First ordered pair with X_ij == -1 and X_ji == +1.
std::optional<std::pair<Node, Node>> find_sign_conflict(const AppraisalMatrix& x) {
  for (Node i = 0; i < x.size(); ++i) {
    for (Node j = 0; j < x.size(); ++j) {
      if (x(i, j) == -1 && x(j, i) == 1) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

void check_max_steps(std::uint64_t max_steps) {
  if (max_steps == 0) throw InvalidArgument("max_steps must be positive");
}

}  // namespace

void SihParams::validate() const { check_weights(p1, p2, p3, "SIH weights p1, p2, p3"); }

void SiohParams::validate() const {
  check_weights(q1, q2, q3, "SIOH weights q1, q2, q3");
  sih.validate();
}

OpinionVector::OpinionVector(Storage y) : y_(std::move(y)) {
  for (Eigen::Index i = 0; i < y_.size(); ++i) {
    if (y_(i) != 1 && y_(i) != -1) throw InvalidArgument("opinions must be -1 or +1");
  }
}

OpinionVector::OpinionVector(std::initializer_list<int> values) {
  y_.resize(static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (int v : values) {
    if (v != 1 && v != -1) throw InvalidArgument("opinions must be -1 or +1");
    y_(k++) = static_cast<Entry>(v);
  }
}

void OpinionVector::set(Node i, int value) {
  if (i < 0 || i >= size()) throw InvalidArgument("opinion index out of range");
  if (value != 1 && value != -1) throw InvalidArgument("opinions must be -1 or +1");
  y_(i) = static_cast<Entry>(value);
}

std::string_view to_string(Mechanism m) {
  switch (m) {
    case Mechanism::Symmetry: return "symmetry";
    case Mechanism::Influence: return "influence";
    case Mechanism::Homophily: return "homophily";
    case Mechanism::OpinionGossip: return "opinion-gossip";
    case Mechanism::PersonOpinionHomophily: return "person-opinion-homophily";
  }
  return "unknown";
}

std::optional<Mechanism> mechanism_from_string(std::string_view name) {
  for (Mechanism m : {Mechanism::Symmetry, Mechanism::Influence, Mechanism::Homophily,
                      Mechanism::OpinionGossip, Mechanism::PersonOpinionHomophily}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

// ---- SIH -----------------------------------------------------------------

std::vector<std::pair<Node, Node>> sih_candidate_pairs(const AppraisalMatrix& x) {
  std::vector<std::pair<Node, Node>> out;
  for (Node i = 0; i < x.size(); ++i) {
    for (Node j = 0; j < x.size(); ++j) {
      if (i != j && (x(i, j) != 0 || x(j, i) != 0)) out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<Node> common_neighbors(const AppraisalMatrix& x, Node i, Node j) {
  std::vector<Node> out;
  for (Node k = 0; k < x.size(); ++k) {
    if (k != i && k != j && x(i, k) * x(j, k) != 0) out.push_back(k);
  }
  return out;
}

UpdateEvent apply_sih_update(AppraisalMatrix& x, Node i, Node j, Mechanism mechanism,
                             std::optional<Node> k, std::uint64_t step) {
  check_pair(x, i, j);
  int value = 0;
  switch (mechanism) {
    case Mechanism::Symmetry:
      if (k) throw InvalidArgument("symmetry takes no common neighbor");
      value = x(j, i);
      break;
    case Mechanism::Influence:
    case Mechanism::Homophily: {
      if (!k) throw InvalidArgument("influence and homophily need a common neighbor");
      const auto common = common_neighbors(x, i, j);
      if (std::find(common.begin(), common.end(), *k) == common.end()) {
        throw InvalidArgument("node " + std::to_string(*k + 1) + " is not a common neighbor");
      }
      value = mechanism == Mechanism::Influence ? x(i, *k) * x(*k, j) : x(i, *k) * x(j, *k);
      break;
    }
    default:
      throw InvalidArgument("not an SIH mechanism: " + std::string(to_string(mechanism)));
  }
  UpdateEvent event{step, i, j, mechanism, k, x(i, j), value};
  x.set(i, j, value);
  return event;
}

bool is_legal_sih_update(const AppraisalMatrix& before, const UpdateEvent& event) {
  try {
    AppraisalMatrix copy = before;
    return apply_sih_update(copy, event.i, event.j, event.mechanism, event.neighbor, event.step) ==
           event;
  } catch (const InvalidArgument&) {
    return false;
  }
}

UpdateEvent sih_step(AppraisalMatrix& x, const SihParams& params, CounterRng& rng,
                     std::uint64_t step) {
  const auto [i, j] = draw_pair(x, rng);
  const auto drawn = draw_sih_update(x, i, j, params, rng);
  return apply_sih_update(x, i, j, drawn.mechanism, drawn.neighbor, step);
}

bool is_sih_equilibrium(const AppraisalMatrix& x) {
  for (const auto& [i, j] : sih_candidate_pairs(x)) {
    const int current = x(i, j);
    if (x(j, i) != current) return false;
    for (Node k : common_neighbors(x, i, j)) {
      if (x(i, k) * x(k, j) != current || x(i, k) * x(j, k) != current) return false;
    }
  }
  return true;
}

AbsorptionRecord run_sih(const AppraisalMatrix& x0, const SihParams& params, std::uint64_t seed,
                         std::uint64_t max_steps, bool log) {
  params.validate();
  check_max_steps(max_steps);
  AbsorptionRecord record;
  AppraisalMatrix x = x0;
  CounterRng rng(seed);
  record.absorbed = is_triad_wise_balanced(x);
  for (std::uint64_t step = 1; !record.absorbed && step <= max_steps; ++step) {
    const UpdateEvent event = sih_step(x, params, rng, step);
    if (log) record.events.push_back(event);
    record.steps = step;
    if (event.old_value != event.new_value) record.absorbed = is_triad_wise_balanced(x);
  }
  record.final_x = std::move(x);
  return record;
}

AbsorptionRecord constructive_sih_sequence(const AppraisalMatrix& x0) {
  AbsorptionRecord record;
  AppraisalMatrix x = x0;
  auto push = [&](Node i, Node j, Mechanism m, std::optional<Node> k) {
    record.events.push_back(apply_sih_update(x, i, j, m, k, record.events.size() + 1));
  };

  while (auto pair = find_unilateral_zero(x)) push(pair->first, pair->second, Mechanism::Symmetry, {});
  record.phase1_steps = record.events.size();

  const std::size_t limit = record.events.size() + static_cast<std::size_t>(x.size()) * x.size() + 1;
  while (record.events.size() <= limit) {
    if (auto pair = find_sign_conflict(x)) {
      push(pair->first, pair->second, Mechanism::Symmetry, {});
      continue;
    }
    if (is_triad_wise_balanced(x)) break;
    // x is sign-symmetric here; an unbalanced triad has a negative pair (i, j)
    // with X_ik X_kj = X_ik X_jk = +1.
    bool applied = false;
    for (Node i = 0; i < x.size() && !applied; ++i) {
      for (Node j = 0; j < x.size() && !applied; ++j) {
        if (x(i, j) != -1) continue;
        for (Node k : common_neighbors(x, i, j)) {
          if (x(i, k) * x(k, j) == 1 && x(i, k) * x(j, k) == 1) {
            push(i, j, Mechanism::Influence, k);
            applied = true;
            break;
          }
        }
      }
    }
    if (!applied) throw std::logic_error("constructive SIH sequence found no resolvable triad");
  }
  if (!is_triad_wise_balanced(x)) throw std::logic_error("constructive SIH sequence did not terminate");
  record.absorbed = true;
  record.steps = record.events.size();
  record.final_x = std::move(x);
  return record;
}

int potential_h(const AppraisalMatrix& x) { return static_cast<int>(negative_count(x)); }

// ---- SIOH ----------------------------------------------------------------

UpdateEvent apply_sioh_update(SiohState& state, Node i, Node j, Mechanism mechanism,
                              std::optional<Node> k, std::uint64_t step) {
  AppraisalMatrix& x = state.x;
  check_pair(x, i, j);
  if (state.y.size() != x.size()) throw InvalidArgument("opinion vector length does not match n");
  if (x(i, j) == 0 && mechanism != Mechanism::Symmetry) {
    throw InvalidArgument("X_ij = 0 admits only the symmetry update");
  }
  switch (mechanism) {
    case Mechanism::OpinionGossip: {
      if (k) throw InvalidArgument("opinion gossip takes no common neighbor");
      const int value = x(i, j) * state.y[j];
      UpdateEvent event{step, i, j, mechanism, std::nullopt, state.y[i], value};
      state.y.set(i, value);
      return event;
    }
    case Mechanism::PersonOpinionHomophily: {
      if (k) throw InvalidArgument("person-opinion homophily takes no common neighbor");
      const int value = state.y[i] * state.y[j];
      UpdateEvent event{step, i, j, mechanism, std::nullopt, x(i, j), value};
      x.set(i, j, value);
      return event;
    }
    default:
      return apply_sih_update(x, i, j, mechanism, k, step);
  }
}

bool is_legal_sioh_update(const SiohState& before, const UpdateEvent& event) {
  try {
    SiohState copy = before;
    return apply_sioh_update(copy, event.i, event.j, event.mechanism, event.neighbor,
                             event.step) == event;
  } catch (const InvalidArgument&) {
    return false;
  }
}

UpdateEvent sioh_step(SiohState& state, const SiohParams& params, CounterRng& rng,
                      std::uint64_t step) {
  const auto [i, j] = draw_pair(state.x, rng);
  if (state.x(i, j) == 0) return apply_sioh_update(state, i, j, Mechanism::Symmetry, {}, step);
  const double u = rng.uniform01();
  if (u < params.q1) return apply_sioh_update(state, i, j, Mechanism::OpinionGossip, {}, step);
  if (u < params.q1 + params.q2) {
    return apply_sioh_update(state, i, j, Mechanism::PersonOpinionHomophily, {}, step);
  }
  const auto drawn = draw_sih_update(state.x, i, j, params.sih, rng);
  return apply_sioh_update(state, i, j, drawn.mechanism, drawn.neighbor, step);
}

bool is_sioh_equilibrium(const SiohState& state) {
  const AppraisalMatrix& x = state.x;
  const OpinionVector& y = state.y;
  for (const auto& [i, j] : sih_candidate_pairs(x)) {
    const int current = x(i, j);
    if (current == 0) return false;
    if (current * y[j] != y[i]) return false;
    if (y[i] * y[j] != current) return false;
    if (x(j, i) != current) return false;
    for (Node k : common_neighbors(x, i, j)) {
      if (x(i, k) * x(k, j) != current || x(i, k) * x(j, k) != current) return false;
    }
  }
  return true;
}

bool is_opinion_aligned(const SiohState& state) {
  const AppraisalMatrix& x = state.x;
  if (!is_sign_symmetric(x)) return false;
  for (Node i = 0; i < x.size(); ++i) {
    for (Node j = 0; j < x.size(); ++j) {
      if (x(i, j) != 0 && x(i, j) != state.y[i] * state.y[j]) return false;
    }
  }
  return true;
}

AbsorptionRecord run_sioh(const SiohState& state0, const SiohParams& params, std::uint64_t seed,
                          std::uint64_t max_steps, bool log) {
  params.validate();
  check_max_steps(max_steps);
  if (state0.y.size() != state0.x.size()) {
    throw InvalidArgument("opinion vector length does not match n");
  }
  AbsorptionRecord record;
  SiohState state = state0;
  CounterRng rng(seed);
  record.absorbed = is_opinion_aligned(state);
  for (std::uint64_t step = 1; !record.absorbed && step <= max_steps; ++step) {
    const UpdateEvent event = sioh_step(state, params, rng, step);
    if (log) record.events.push_back(event);
    record.steps = step;
    if (event.old_value != event.new_value) record.absorbed = is_opinion_aligned(state);
  }
  record.final_x = std::move(state.x);
  record.final_y = std::move(state.y);
  return record;
}

AbsorptionRecord constructive_sioh_sequence(const SiohState& state0) {
  if (state0.y.size() != state0.x.size()) {
    throw InvalidArgument("opinion vector length does not match n");
  }
  AbsorptionRecord record;
  SiohState state = state0;
  const AppraisalMatrix& x = state.x;
  const OpinionVector& y = state.y;
  auto push = [&](Node i, Node j, Mechanism m) {
    record.events.push_back(apply_sioh_update(state, i, j, m, {}, record.events.size() + 1));
  };

  while (auto pair = find_unilateral_zero(x)) push(pair->first, pair->second, Mechanism::Symmetry);
  record.phase1_steps = record.events.size();

  auto find_link = [&](auto&& predicate) -> std::optional<std::pair<Node, Node>> {
    for (Node i = 0; i < x.size(); ++i) {
      for (Node j = 0; j < x.size(); ++j) {
        if (x(i, j) != 0 && predicate(i, j)) return std::make_pair(i, j);
      }
    }
    return std::nullopt;
  };

  const std::size_t limit =
      record.events.size() + static_cast<std::size_t>(x.size()) * (x.size() + 1) + 1;
  while (record.events.size() <= limit) {
    if (auto pair = find_sign_conflict(x)) {
      push(pair->first, pair->second, Mechanism::Symmetry);
    } else if (auto neg = find_link([&](Node i, Node j) { return x(i, j) == -1 && y[i] * y[j] == 1; })) {
      push(neg->first, neg->second, Mechanism::PersonOpinionHomophily);
    } else if (auto pos = find_link([&](Node i, Node j) { return x(i, j) == 1 && y[i] == -1 && y[j] == 1; })) {
      push(pos->first, pos->second, Mechanism::OpinionGossip);
    } else {
      break;
    }
  }
  if (!is_opinion_aligned(state)) throw std::logic_error("constructive SIOH sequence did not terminate");
  record.absorbed = true;
  record.steps = record.events.size();
  record.final_x = std::move(state.x);
  record.final_y = std::move(state.y);
  return record;
}

int potential_h(const SiohState& state) {
  return potential_h(state.x) + static_cast<int>((state.y.values().array() < 0).count());
}

}  // namespace balance_lab
