#include "balance_lab/balance.hpp"
#include "balance_lab/dynamics.hpp"
#include "balance_lab/errors.hpp"
#include "balance_lab/experiments.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>

namespace bl = balance_lab;
using bl::Mechanism;

namespace {

bl::AppraisalMatrix all_negative(int n) {
  bl::AppraisalMatrix x(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) x.set(i, j, -1);
    }
  }
  return x;
}

bool sih_equilibrium_by_successors(const bl::AppraisalMatrix& x) {
  for (const auto& next : oracle::sih_successors(x)) {
    if (!(next == x)) return false;
  }
  return true;
}

bool sioh_equilibrium_by_successors(const bl::SiohState& s) {
  const int n = s.x.size();
  for (const auto& next : oracle::sih_successors(s.x)) {
    // For X_ij = 0 SIOH allows only symmetry, but then X_ji != 0 and symmetry
    // already changes X, so the extra SIH outcomes never decide the answer.
    if (!(next == s.x)) return false;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j || s.x(i, j) == 0) continue;
      if (s.y[i] != s.x(i, j) * s.y[j]) return false;
      if (s.x(i, j) != s.y[i] * s.y[j]) return false;
    }
  }
  return true;
}

bl::OpinionVector opinions_from_index(int n, unsigned idx) {
  bl::OpinionVector::Storage y(n);
  for (int i = 0; i < n; ++i) y(i) = (idx >> i) & 1U ? -1 : 1;
  return bl::OpinionVector(y);
}

// Zero pattern of pairs with both entries zero.
std::vector<std::pair<int, int>> empty_pairs(const bl::AppraisalMatrix& x) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < x.size(); ++i) {
    for (int j = i + 1; j < x.size(); ++j) {
      if (x(i, j) == 0 && x(j, i) == 0) out.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace

TEST(Params, Validation) {
  EXPECT_NO_THROW(bl::SihParams{}.validate());
  EXPECT_NO_THROW((bl::SihParams{0.5, 0.3, 0.2}.validate()));
  EXPECT_THROW((bl::SihParams{0.5, 0.5, 0.0}.validate()), bl::InvalidArgument);
  EXPECT_THROW((bl::SihParams{0.5, 0.3, 0.3}.validate()), bl::InvalidArgument);
  EXPECT_THROW((bl::SiohParams{0.5, 0.6, -0.1}.validate()), bl::InvalidArgument);
  bl::SiohParams bad_inner;
  bad_inner.sih = {1.0, 0.0, 0.0};
  EXPECT_THROW(bad_inner.validate(), bl::InvalidArgument);
}

TEST(Mechanism, NamesRoundTrip) {
  for (Mechanism m : {Mechanism::Symmetry, Mechanism::Influence, Mechanism::Homophily,
                      Mechanism::OpinionGossip, Mechanism::PersonOpinionHomophily}) {
    EXPECT_EQ(bl::mechanism_from_string(bl::to_string(m)), m);
  }
  EXPECT_FALSE(bl::mechanism_from_string("gossip"));
}

TEST(CandidatePairs, Examples) {
  EXPECT_TRUE(bl::sih_candidate_pairs(bl::AppraisalMatrix(3)).empty());
  const auto one = bl::sih_candidate_pairs(bl::from_edge_list(3, {{1, 2, 1}}));
  EXPECT_EQ(one, (std::vector<std::pair<bl::Node, bl::Node>>{{0, 1}, {1, 0}}));
  EXPECT_EQ(bl::sih_candidate_pairs(all_negative(3)).size(), 6U);
}

TEST(ApplySihUpdate, Examples) {
  auto x = all_negative(3);
  const auto hom = bl::apply_sih_update(x, 0, 1, Mechanism::Homophily, 2, 7);
  EXPECT_EQ(x(0, 1), 1);
  EXPECT_EQ(hom, (bl::UpdateEvent{7, 0, 1, Mechanism::Homophily, 2, -1, 1}));

  auto y = bl::from_edge_list(2, {{1, 2, 1}});
  bl::apply_sih_update(y, 1, 0, Mechanism::Symmetry);
  EXPECT_EQ(y(1, 0), 1);

  auto z = all_negative(3);
  bl::apply_sih_update(z, 0, 1, Mechanism::Influence, 2);
  EXPECT_EQ(z(0, 1), 1);  // X_13 * X_32
}

TEST(ApplySihUpdate, RejectsImpossibleUpdates) {
  auto x = all_negative(3);
  EXPECT_THROW(bl::apply_sih_update(x, 0, 1, Mechanism::Symmetry, 2), bl::InvalidArgument);
  EXPECT_THROW(bl::apply_sih_update(x, 0, 1, Mechanism::Influence), bl::InvalidArgument);
  EXPECT_THROW(bl::apply_sih_update(x, 0, 1, Mechanism::Homophily, 1), bl::InvalidArgument);
  EXPECT_THROW(bl::apply_sih_update(x, 0, 0, Mechanism::Symmetry), bl::InvalidArgument);
  EXPECT_THROW(bl::apply_sih_update(x, 0, 1, Mechanism::OpinionGossip), bl::InvalidArgument);
  auto empty = bl::AppraisalMatrix(3);
  EXPECT_THROW(bl::apply_sih_update(empty, 0, 1, Mechanism::Symmetry), bl::InvalidArgument);
  // k must be a common neighbor: X_ik X_jk != 0.
  auto partial = bl::from_edge_list(3, {{1, 2, 1}, {2, 1, 1}, {1, 3, 1}});
  EXPECT_THROW(bl::apply_sih_update(partial, 0, 1, Mechanism::Influence, 2), bl::InvalidArgument);
  EXPECT_EQ(x, all_negative(3));
}

TEST(SihStep, NoCommonNeighborForcesSymmetry) {
  bl::CounterRng rng(1);
  for (int t = 0; t < 50; ++t) {
    auto x = bl::from_edge_list(2, {{1, 2, -1}});
    const auto e = bl::sih_step(x, {}, rng);
    EXPECT_EQ(e.mechanism, Mechanism::Symmetry);
    EXPECT_FALSE(e.neighbor);
  }
  auto empty = bl::AppraisalMatrix(3);
  EXPECT_THROW(bl::sih_step(empty, {}, rng), bl::InvalidArgument);
}

TEST(SihStep, MechanismAndPairFrequencies) {
  // On a complete graph every pair has a common neighbor, so mechanisms follow (p1, p2, p3).
  const bl::SihParams params{0.5, 0.3, 0.2};
  const int draws = 60000;
  bl::CounterRng rng(2024);
  std::map<Mechanism, int> mech;
  std::map<std::pair<int, int>, int> pairs;
  std::map<int, int> neighbors;
  for (int t = 0; t < draws; ++t) {
    auto x = all_negative(4);
    const auto e = bl::sih_step(x, params, rng);
    ++mech[e.mechanism];
    ++pairs[{e.i, e.j}];
    EXPECT_EQ(e.neighbor.has_value(), e.mechanism != Mechanism::Symmetry);
    if (e.i == 0 && e.j == 1 && e.neighbor) ++neighbors[*e.neighbor];
  }
  auto within = [&](int count, double p, int total) {
    const double sd = std::sqrt(total * p * (1 - p));
    return std::abs(count - total * p) < 5 * sd;
  };
  EXPECT_TRUE(within(mech[Mechanism::Symmetry], 0.5, draws));
  EXPECT_TRUE(within(mech[Mechanism::Influence], 0.3, draws));
  EXPECT_TRUE(within(mech[Mechanism::Homophily], 0.2, draws));
  EXPECT_EQ(pairs.size(), 12U);
  for (const auto& [pair, count] : pairs) EXPECT_TRUE(within(count, 1.0 / 12, draws));
  const int nb_total = neighbors[2] + neighbors[3];
  EXPECT_TRUE(within(neighbors[2], 0.5, nb_total));
}

TEST(SihEquilibrium, MatchesSuccessorOracleAndTriadWiseOnAllThreeNodeMatrices) {
  for (std::uint64_t idx = 0; idx < oracle::matrix_count(3); ++idx) {
    const auto x = oracle::matrix_from_index(3, idx);
    ASSERT_EQ(bl::is_sih_equilibrium(x), sih_equilibrium_by_successors(x)) << idx;
    ASSERT_EQ(bl::is_sih_equilibrium(x), bl::is_triad_wise_balanced(x)) << idx;
  }
}

TEST(SihEquilibrium, EquivalentToTriadWiseOnAllFourNodeMatrices) {
  int exceptions = 0;
  for (std::uint64_t idx = 0; idx < oracle::matrix_count(4); ++idx) {
    const auto x = oracle::matrix_from_index(4, idx);
    exceptions += bl::is_sih_equilibrium(x) != bl::is_triad_wise_balanced(x) ? 1 : 0;
  }
  EXPECT_EQ(exceptions, 0);
}

TEST(RunSih, BalancedInputTakesNoSteps) {
  const auto x = bl::from_edge_list(3, {{1, 2, 1}, {2, 1, 1}});
  const auto r = bl::run_sih(x, {}, 9);
  EXPECT_TRUE(r.absorbed);
  EXPECT_EQ(r.steps, 0U);
  EXPECT_EQ(r.final_x, x);
}

TEST(RunSih, AbsorbsAndReplaysLegally) {
  bl::CounterRng gen(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x0 = bl::gen_er_signed({6, 0.5, gen.uniform01()}, gen);
    const auto r = bl::run_sih(x0, {}, 1000 + trial, bl::kDefaultMaxSteps, true);
    ASSERT_TRUE(r.absorbed);
    EXPECT_TRUE(bl::is_triad_wise_balanced(r.final_x));
    EXPECT_TRUE(bl::is_sih_equilibrium(r.final_x));
    ASSERT_EQ(r.events.size(), r.steps);
    auto x = x0;
    for (const auto& e : r.events) {
      ASSERT_TRUE(bl::is_legal_sih_update(x, e));
      x.set(e.i, e.j, e.new_value);
    }
    EXPECT_EQ(x, r.final_x);
  }
}

TEST(RunSih, DeterministicPerSeed) {
  const auto x0 = bl::gen_er_signed({8, 0.6, 0.5}, 17);
  const auto a = bl::run_sih(x0, {}, 5, bl::kDefaultMaxSteps, true);
  const auto b = bl::run_sih(x0, {}, 5, bl::kDefaultMaxSteps, true);
  EXPECT_EQ(a, b);
  const auto c = bl::run_sih(x0, {}, 6, bl::kDefaultMaxSteps, true);
  EXPECT_NE(a.events, c.events);
}

TEST(RunSih, ReportsExhaustedBudget) {
  const auto r = bl::run_sih(all_negative(6), {}, 1, 1);
  EXPECT_FALSE(r.absorbed);
  EXPECT_EQ(r.steps, 1U);
  EXPECT_THROW(bl::run_sih(all_negative(3), {}, 1, 0), bl::InvalidArgument);
  EXPECT_THROW(bl::run_sih(all_negative(3), {0.2, 0.2, 0.2}, 1), bl::InvalidArgument);
}

TEST(ZeroPattern, BilateralStartKeepsLinkSetFixed) {
  bl::CounterRng gen(4);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x0 = bl::gen_er_signed({7, 0.5, 0.5}, gen);
    const auto r = bl::run_sih(x0, {}, trial, bl::kDefaultMaxSteps, true);
    auto x = x0;
    for (const auto& e : r.events) {
      x.set(e.i, e.j, e.new_value);
      ASSERT_TRUE(bl::is_bilateral(x));
      ASSERT_EQ(bl::skeleton(x), bl::skeleton(x0));
    }
  }
}

TEST(ZeroPattern, EmptyPairsNeverGainALink) {
  bl::CounterRng gen(5);
  for (int trial = 0; trial < 300; ++trial) {
    const auto x0 = oracle::random_ternary(5, gen);
    const auto r = bl::run_sih(x0, {}, trial, 100000, true);
    auto x = x0;
    for (const auto& e : r.events) {
      x.set(e.i, e.j, e.new_value);
      const auto now = empty_pairs(x);
      for (const auto& pair : empty_pairs(x0)) ASSERT_NE(std::find(now.begin(), now.end(), pair), now.end());
    }
  }
}

TEST(ZeroPattern, InfluenceCanClearALinkInNonBilateralStates) {
  // X_kj = 0 makes X_ik X_kj = 0, so a both-nonzero pair can lose a direction.
  auto x = bl::from_edge_list(3, {{1, 2, 1}, {2, 1, 1}, {1, 3, 1}, {2, 3, 1}});
  bl::apply_sih_update(x, 0, 1, Mechanism::Influence, 2);
  EXPECT_EQ(x(0, 1), 0);
  EXPECT_EQ(x(1, 0), 1);
}

TEST(ConstructiveSih, AllNegativeTriangle) {
  const auto r = bl::constructive_sih_sequence(all_negative(3));
  EXPECT_TRUE(r.absorbed);
  EXPECT_EQ(r.phase1_steps, 0U);
  ASSERT_EQ(r.events.size(), 2U);
  EXPECT_EQ(r.events[0], (bl::UpdateEvent{1, 0, 1, Mechanism::Influence, 2, -1, 1}));
  EXPECT_EQ(r.events[1], (bl::UpdateEvent{2, 1, 0, Mechanism::Symmetry, std::nullopt, -1, 1}));
  EXPECT_EQ(bl::potential_h(all_negative(3)), 6);
  EXPECT_EQ(bl::potential_h(r.final_x), 4);
  EXPECT_TRUE(bl::is_triad_wise_balanced(r.final_x));
}

TEST(ConstructiveSih, LegalMonotoneAndBalancedOnRandomInputs) {
  bl::CounterRng gen(6);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(gen.below(7));
    const auto x0 = trial % 2 ? oracle::random_ternary(n, gen)
                              : bl::gen_er_signed({n, gen.uniform01(), gen.uniform01()}, gen);
    const auto r = bl::constructive_sih_sequence(x0);
    ASSERT_TRUE(r.absorbed);
    EXPECT_TRUE(bl::is_triad_wise_balanced(r.final_x));
    auto x = x0;
    int h = bl::potential_h(x0);
    for (std::size_t k = 0; k < r.events.size(); ++k) {
      ASSERT_TRUE(bl::is_legal_sih_update(x, r.events[k]));
      x.set(r.events[k].i, r.events[k].j, r.events[k].new_value);
      if (k < r.phase1_steps) {
        EXPECT_EQ(r.events[k].old_value, 0);
      } else {
        EXPECT_EQ(bl::potential_h(x), h - 1);
      }
      h = bl::potential_h(x);
    }
    EXPECT_EQ(x, r.final_x);
    EXPECT_TRUE(bl::is_bilateral(x));
  }
}

TEST(ApplySiohUpdate, Examples) {
  bl::SiohState s{bl::from_edge_list(2, {{1, 2, -1}, {2, 1, -1}}), bl::OpinionVector{1, 1}};
  const auto g = bl::apply_sioh_update(s, 0, 1, Mechanism::OpinionGossip);
  EXPECT_EQ(s.y[0], -1);
  EXPECT_TRUE(g.changes_opinion());
  EXPECT_EQ(g.old_value, 1);
  EXPECT_EQ(g.new_value, -1);

  bl::SiohState t{bl::from_edge_list(2, {{1, 2, -1}, {2, 1, -1}}), bl::OpinionVector{1, 1}};
  bl::apply_sioh_update(t, 0, 1, Mechanism::PersonOpinionHomophily);
  EXPECT_EQ(t.x(0, 1), 1);

  bl::SiohState u{bl::from_edge_list(2, {{2, 1, -1}}), bl::OpinionVector{1, -1}};
  EXPECT_THROW(bl::apply_sioh_update(u, 0, 1, Mechanism::OpinionGossip), bl::InvalidArgument);
  EXPECT_THROW(bl::apply_sioh_update(u, 0, 1, Mechanism::PersonOpinionHomophily), bl::InvalidArgument);
  bl::apply_sioh_update(u, 0, 1, Mechanism::Symmetry);
  EXPECT_EQ(u.x(0, 1), -1);

  bl::SiohState mismatch{bl::from_edge_list(2, {{1, 2, 1}}), bl::OpinionVector{1}};
  EXPECT_THROW(bl::apply_sioh_update(mismatch, 0, 1, Mechanism::Symmetry), bl::InvalidArgument);
  EXPECT_THROW(bl::OpinionVector({1, 0}), bl::InvalidArgument);
}

TEST(SiohStep, ZeroEntryForcesSymmetryAndBranchFrequencies) {
  bl::CounterRng rng(8);
  for (int t = 0; t < 50; ++t) {
    bl::SiohState s{bl::from_edge_list(2, {{2, 1, 1}}), bl::OpinionVector{1, 1}};
    const auto e = bl::sioh_step(s, {}, rng);
    if (e.i == 0) EXPECT_EQ(e.mechanism, Mechanism::Symmetry);
  }
  const bl::SiohParams params{0.2, 0.3, 0.5, {0.6, 0.2, 0.2}};
  std::map<Mechanism, int> counts;
  const int draws = 50000;
  for (int t = 0; t < draws; ++t) {
    bl::SiohState s{all_negative(3), bl::OpinionVector{1, -1, 1}};
    ++counts[bl::sioh_step(s, params, rng).mechanism];
  }
  auto within = [&](int count, double p) {
    return std::abs(count - draws * p) < 5 * std::sqrt(draws * p * (1 - p));
  };
  EXPECT_TRUE(within(counts[Mechanism::OpinionGossip], 0.2));
  EXPECT_TRUE(within(counts[Mechanism::PersonOpinionHomophily], 0.3));
  EXPECT_TRUE(within(counts[Mechanism::Symmetry], 0.5 * 0.6));
  EXPECT_TRUE(within(counts[Mechanism::Influence], 0.5 * 0.2));
  EXPECT_TRUE(within(counts[Mechanism::Homophily], 0.5 * 0.2));
}

TEST(SiohEquilibrium, MatchesSuccessorOracleAndAlignmentOnAllThreeNodeStates) {
  for (std::uint64_t idx = 0; idx < oracle::matrix_count(3); ++idx) {
    const auto x = oracle::matrix_from_index(3, idx);
    for (unsigned yi = 0; yi < 8; ++yi) {
      const bl::SiohState s{x, opinions_from_index(3, yi)};
      ASSERT_EQ(bl::is_sioh_equilibrium(s), sioh_equilibrium_by_successors(s)) << idx << "/" << yi;
      ASSERT_EQ(bl::is_sioh_equilibrium(s), bl::is_opinion_aligned(s)) << idx << "/" << yi;
    }
  }
}

TEST(SiohEquilibrium, AlignedStatesAreTwoFaction) {
  bl::CounterRng gen(9);
  for (int trial = 0; trial < 500; ++trial) {
    const auto x = oracle::random_symmetric(6, 0.6, 0.5, gen);
    bl::OpinionVector::Storage y(6);
    for (int i = 0; i < 6; ++i) y(i) = gen.bernoulli(0.5) ? 1 : -1;
    const bl::SiohState s{x, bl::OpinionVector(y)};
    if (bl::is_opinion_aligned(s)) EXPECT_TRUE(bl::detect_two_faction(x));
  }
}

TEST(RunSioh, AbsorbsReplaysAndIsDeterministic) {
  bl::CounterRng gen(10);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x0 = bl::gen_er_signed({6, 0.5, gen.uniform01()}, gen);
    bl::OpinionVector::Storage y(6);
    for (int i = 0; i < 6; ++i) y(i) = gen.bernoulli(0.5) ? 1 : -1;
    const bl::SiohState s0{x0, bl::OpinionVector(y)};
    const auto r = bl::run_sioh(s0, {}, trial, bl::kDefaultMaxSteps, true);
    ASSERT_TRUE(r.absorbed);
    ASSERT_TRUE(r.final_y);
    const bl::SiohState final_state{r.final_x, *r.final_y};
    EXPECT_TRUE(bl::is_sioh_equilibrium(final_state));
    auto s = s0;
    for (const auto& e : r.events) {
      ASSERT_TRUE(bl::is_legal_sioh_update(s, e));
      bl::apply_sioh_update(s, e.i, e.j, e.mechanism, e.neighbor, e.step);
    }
    EXPECT_EQ(s, final_state);
    EXPECT_EQ(r, bl::run_sioh(s0, {}, trial, bl::kDefaultMaxSteps, true));
  }
}

TEST(ConstructiveSioh, TwoNodeExample) {
  const bl::SiohState s0{bl::from_edge_list(2, {{1, 2, -1}, {2, 1, -1}}), bl::OpinionVector{1, 1}};
  const auto r = bl::constructive_sioh_sequence(s0);
  ASSERT_EQ(r.events.size(), 2U);
  EXPECT_EQ(r.events[0].mechanism, Mechanism::PersonOpinionHomophily);
  EXPECT_EQ(r.events[1].mechanism, Mechanism::Symmetry);
  EXPECT_TRUE(bl::is_opinion_aligned({r.final_x, *r.final_y}));
  EXPECT_EQ(bl::potential_h(s0), 2);
  EXPECT_EQ(bl::potential_h(bl::SiohState{r.final_x, *r.final_y}), 0);
}

TEST(ConstructiveSioh, LegalMonotoneAndAlignedOnRandomInputs) {
  bl::CounterRng gen(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(gen.below(7));
    const auto x0 = trial % 2 ? oracle::random_ternary(n, gen)
                              : bl::gen_er_signed({n, gen.uniform01(), gen.uniform01()}, gen);
    bl::OpinionVector::Storage y(n);
    for (int i = 0; i < n; ++i) y(i) = gen.bernoulli(0.5) ? 1 : -1;
    const bl::SiohState s0{x0, bl::OpinionVector(y)};
    const auto r = bl::constructive_sioh_sequence(s0);
    ASSERT_TRUE(r.absorbed);
    auto s = s0;
    int h = bl::potential_h(s);
    for (std::size_t k = 0; k < r.events.size(); ++k) {
      const auto& e = r.events[k];
      ASSERT_TRUE(bl::is_legal_sioh_update(s, e));
      bl::apply_sioh_update(s, e.i, e.j, e.mechanism, e.neighbor, e.step);
      if (k >= r.phase1_steps) EXPECT_EQ(bl::potential_h(s), h - 1);
      h = bl::potential_h(s);
    }
    EXPECT_TRUE(bl::is_sioh_equilibrium(s));
    EXPECT_EQ(s.x, r.final_x);
  }
}
