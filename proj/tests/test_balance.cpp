#include "balance_lab/balance.hpp"
#include "balance_lab/cycles.hpp"
#include "balance_lab/errors.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

namespace bl = balance_lab;
using bl::NodeSet;

namespace {

bl::AppraisalMatrix symmetric(int n, std::initializer_list<std::tuple<int, int, int>> links) {
  bl::AppraisalMatrix x(n);
  for (auto [i, j, s] : links) {
    x.set(i - 1, j - 1, s);
    x.set(j - 1, i - 1, s);
  }
  return x;
}

}  // namespace

TEST(TriadWise, Examples) {
  EXPECT_TRUE(bl::check_triad_wise(symmetric(3, {{1, 2, 1}, {2, 3, 1}, {1, 3, 1}})).balanced);

  const auto one_negative = symmetric(3, {{1, 2, -1}, {2, 3, 1}, {1, 3, 1}});
  const auto result = bl::check_triad_wise(one_negative);
  EXPECT_FALSE(result.balanced);
  ASSERT_EQ(result.violations.size(), 2U);
  for (const auto& v : result.violations) EXPECT_EQ(v.kind, bl::ViolationKind::NegativeTriad);
  EXPECT_EQ(result.violations[0].nodes, (std::vector<bl::Node>{0, 1, 2}));
  EXPECT_EQ(result.violations[1].nodes, (std::vector<bl::Node>{0, 2, 1}));

  const auto asym = bl::from_edge_list(2, {{1, 2, 1}, {2, 1, -1}});
  const auto r2 = bl::check_triad_wise(asym);
  ASSERT_EQ(r2.violations.size(), 1U);
  EXPECT_EQ(r2.violations[0].kind, bl::ViolationKind::AsymmetricPair);

  EXPECT_FALSE(bl::is_triad_wise_balanced(bl::from_edge_list(2, {{1, 2, 1}})));
  EXPECT_TRUE(bl::is_triad_wise_balanced(bl::AppraisalMatrix(4)));
  EXPECT_TRUE(bl::is_triad_wise_balanced(symmetric(4, {{1, 2, -1}, {2, 3, -1}, {3, 4, -1}, {4, 1, -1}})));
}

TEST(TriadWise, AgreesWithNaiveOracleOnAllThreeNodeMatrices) {
  for (std::uint64_t idx = 0; idx < oracle::matrix_count(3); ++idx) {
    const auto x = oracle::matrix_from_index(3, idx);
    const bool expected = oracle::triad_wise(x);
    EXPECT_EQ(bl::is_triad_wise_balanced(x), expected) << idx;
    EXPECT_EQ(bl::check_triad_wise(x).balanced, expected) << idx;
  }
}

TEST(TriadWise, AgreesWithNaiveOracleOnRandomMatrices) {
  bl::CounterRng rng(21);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto x = trial % 2 ? oracle::random_ternary(6, rng)
                             : oracle::random_symmetric(6, 0.6, 0.3, rng);
    EXPECT_EQ(bl::is_triad_wise_balanced(x), oracle::triad_wise(x));
    EXPECT_EQ(bl::check_triad_wise(x).balanced, oracle::triad_wise(x));
  }
}

TEST(EnumerateTriads, CountsBothOrientations) {
  const auto x = symmetric(4, {{1, 2, 1}, {2, 3, 1}, {1, 3, 1}, {3, 4, 1}});
  EXPECT_EQ(bl::enumerate_triads(x).size(), 2U);
  bl::AppraisalMatrix k4(4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i != j) k4.set(i, j, 1);
    }
  }
  EXPECT_EQ(bl::enumerate_triads(k4).size(), 8U);
}

TEST(TwoFaction, Examples) {
  const auto p = bl::detect_two_faction(bl::AppraisalMatrix(3));
  ASSERT_TRUE(p);
  EXPECT_EQ(p->kind, bl::PartitionKind::NoNegativeLinks);
  EXPECT_EQ(p->v1, NodeSet::full(3));
  EXPECT_TRUE(p->v2.empty());

  const auto x = symmetric(4, {{1, 2, 1}, {3, 4, 1}, {1, 3, -1}, {2, 4, -1}});
  const auto q = bl::detect_two_faction(x);
  ASSERT_TRUE(q);
  EXPECT_EQ(q->kind, bl::PartitionKind::TwoFaction);
  EXPECT_EQ(q->v1, (NodeSet{0, 1}));
  EXPECT_EQ(q->v2, (NodeSet{2, 3}));
  EXPECT_TRUE(bl::partition_certifies(x, *q));

  EXPECT_FALSE(bl::detect_two_faction(symmetric(3, {{1, 2, -1}, {2, 3, -1}, {1, 3, -1}})));
  EXPECT_FALSE(bl::detect_two_faction(bl::from_edge_list(2, {{1, 2, 1}, {2, 1, -1}})));
}

TEST(TwoFaction, NegativeOnlyOneDirection) {
  // X_12 = -1 with X_21 = 0 still forces a split.
  const auto x = bl::from_edge_list(3, {{1, 2, -1}});
  const auto p = bl::detect_two_faction(x);
  ASSERT_TRUE(p);
  EXPECT_TRUE(bl::partition_certifies(x, *p));
  EXPECT_NE(p->v1.contains(0), p->v1.contains(1));
}

TEST(TwoFaction, AgreesWithBipartitionEnumeration) {
  for (std::uint64_t idx = 0; idx < oracle::matrix_count(3); ++idx) {
    const auto x = oracle::matrix_from_index(3, idx);
    const auto p = bl::detect_two_faction(x);
    ASSERT_EQ(p.has_value(), oracle::two_faction(x)) << idx;
    if (p) EXPECT_TRUE(bl::partition_certifies(x, *p));
  }
  bl::CounterRng rng(33);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto x = trial % 3 == 0 ? oracle::random_ternary(5, rng)
                                  : oracle::random_symmetric(7, 0.5, 0.4, rng);
    const auto p = bl::detect_two_faction(x);
    ASSERT_EQ(p.has_value(), oracle::two_faction(x));
    if (p) EXPECT_TRUE(bl::partition_certifies(x, *p));
  }
}

TEST(PartitionCertifies, RejectsWrongPartitions) {
  const auto x = symmetric(3, {{1, 2, -1}, {2, 3, 1}});
  EXPECT_TRUE(bl::partition_certifies(x, {bl::PartitionKind::TwoFaction, NodeSet{0}, NodeSet{1, 2}}));
  EXPECT_FALSE(bl::partition_certifies(x, {bl::PartitionKind::TwoFaction, NodeSet{0, 1}, NodeSet{2}}));
  EXPECT_FALSE(bl::partition_certifies(x, {bl::PartitionKind::TwoFaction, NodeSet{0}, NodeSet{1}}));
  EXPECT_FALSE(bl::partition_certifies(x, {bl::PartitionKind::NoNegativeLinks, NodeSet::full(3), {}}));
}

TEST(CycleSign, Examples) {
  const auto x = symmetric(4, {{1, 2, -1}, {2, 3, -1}, {3, 4, 1}, {4, 1, 1}});
  EXPECT_EQ(bl::cycle_sign(x, bl::Cycle{{0, 1, 2, 3}}), 1);
  const auto y = symmetric(4, {{1, 2, -1}, {2, 3, 1}, {3, 4, 1}, {4, 1, 1}});
  EXPECT_EQ(bl::cycle_sign(y, bl::Cycle{{0, 1, 2, 3}}), -1);
  EXPECT_THROW(bl::cycle_sign(y, bl::Cycle{{0, 2, 1}}), bl::InvalidArgument);
}

TEST(AllCyclesPositive, RequiresSignSymmetricAndGuards) {
  EXPECT_THROW(bl::all_cycles_positive(bl::from_edge_list(2, {{1, 2, 1}})), bl::InvalidArgument);
  bl::AppraisalMatrix big(13);
  EXPECT_THROW(bl::all_cycles_positive(big), bl::GuardExceeded);
  EXPECT_TRUE(bl::all_cycles_positive(big, true));
}

TEST(Properties, TwoFactionImpliesTriadWiseImpliesEgoTwoFaction) {
  bl::CounterRng rng(44);
  for (int trial = 0; trial < 3000; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(6));
    const auto x = oracle::random_symmetric(n, rng.uniform01(), rng.uniform01(), rng);
    if (bl::detect_two_faction(x)) EXPECT_TRUE(bl::is_triad_wise_balanced(x));
    if (bl::is_triad_wise_balanced(x)) EXPECT_TRUE(bl::all_ego_networks_two_faction(x));
  }
}

TEST(Properties, TwoFactionIffAllCyclesPositiveOnConnectedGraphs) {
  bl::CounterRng rng(55);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(5));
    const auto g = oracle::random_connected_graph(n, 0.4, rng);
    const auto x = oracle::random_signs_on(g, rng.uniform01(), rng);
    EXPECT_EQ(bl::detect_two_faction(x).has_value(), bl::all_cycles_positive(x));
  }
}

TEST(EgoNetworks, SquareWithOneNegativeIsEgoBalancedButNotTwoFaction) {
  // Ego-network balance everywhere does not imply two-faction balance.
  const auto x = symmetric(4, {{1, 2, -1}, {2, 3, 1}, {3, 4, 1}, {4, 1, 1}});
  EXPECT_TRUE(bl::all_ego_networks_two_faction(x));
  EXPECT_TRUE(bl::is_triad_wise_balanced(x));
  EXPECT_FALSE(bl::detect_two_faction(x));
}
