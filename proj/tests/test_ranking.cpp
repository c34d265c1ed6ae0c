#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "qrank/errors.hpp"
#include "qrank/experiments.hpp"
#include "qrank/ranking.hpp"

using namespace qrank;

namespace {

using Groups = std::vector<std::vector<Index>>;

std::vector<double> random_scores(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> s(n);
  for (auto& x : s) x = u(rng);
  const double total = std::accumulate(s.begin(), s.end(), 0.0);
  for (auto& x : s) x /= total;
  return s;
}

// 1-indexed toy labels to 0-indexed nodes.
std::vector<Index> nodes(std::initializer_list<int> labels) {
  std::vector<Index> out;
  for (int k : labels) out.push_back(k - 1);
  return out;
}

}  // namespace

TEST(RankFromScores, CompetitionRanking) {
  const auto r = rank_from_scores(std::vector<double>{0.4, 0.3, 0.3});
  EXPECT_EQ(r.positions, (std::vector<Index>{1, 2, 2}));
  EXPECT_EQ(r.tie_groups, (Groups{{0}, {1, 2}}));
  EXPECT_EQ(r.order, (std::vector<Index>{0, 1, 2}));
  EXPECT_EQ(r.distinct_positions(), 2);
  EXPECT_EQ(r.group_of(2), 1);

  const auto s = rank_from_scores(std::vector<double>{0.1, 0.3, 0.3, 0.2, 0.1});
  EXPECT_EQ(s.positions, (std::vector<Index>{4, 1, 1, 3, 4}));
}

TEST(RankFromScores, GroupsAnchorOnTheirLeadingScore) {
  const double base = 0.3;
  const auto r = rank_from_scores(std::vector<double>{base, base - 0.6e-6, base - 1.2e-6, 1 - 3 * base + 1.8e-6});
  EXPECT_EQ(r.tie_groups.front(), (std::vector<Index>{0, 1}));
  EXPECT_EQ(r.positions[2], 3);
}

TEST(RankFromScores, RejectsNegativeScores) {
  EXPECT_THROW(rank_from_scores(std::vector<double>{1.0, -1e-6}), PreconditionError);
  EXPECT_NO_THROW(rank_from_scores(std::vector<double>{1.0, -1e-10}));
  EXPECT_THROW(rank_from_scores(std::vector<double>{1.0, std::nan("")}), PreconditionError);
}

TEST(RankFromScores, InvariantsOnRandomScores) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    auto s = random_scores(5 + trial, rng);
    // Force a few exact ties.
    s[1] = s[0];
    s[3] = s[2];
    const double total = std::accumulate(s.begin(), s.end(), 0.0);
    for (auto& x : s) x /= total;
    const auto r = rank_from_scores(s, 1e-6);
    EXPECT_NEAR(std::accumulate(r.scores.begin(), r.scores.end(), 0.0), 1.0, 1e-6);
    for (std::size_t k = 1; k < r.order.size(); ++k) {
      const auto prev = static_cast<std::size_t>(r.order[k - 1]);
      const auto cur = static_cast<std::size_t>(r.order[k]);
      EXPECT_GE(r.scores[prev], r.scores[cur]);
      EXPECT_LE(r.positions[prev], r.positions[cur]);
    }
    std::vector<Index> all;
    for (const auto& g : r.tie_groups) all.insert(all.end(), g.begin(), g.end());
    std::sort(all.begin(), all.end());
    std::vector<Index> expected(s.size());
    std::iota(expected.begin(), expected.end(), Index{0});
    EXPECT_EQ(all, expected);
    EXPECT_EQ(r.positions[0], r.positions[1]);
  }
}

TEST(RankFromScores, ScaleInvariant) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = random_scores(30, rng);
    const auto r = rank_from_scores(s, 0.0);
    for (double c : {0.25, 3.0, 1e3}) {
      std::vector<double> scaled(s);
      for (auto& x : scaled) x *= c;
      EXPECT_EQ(rank_from_scores(scaled, 0.0).positions, r.positions);
    }
  }
}

// Reference values from an established tau-b implementation.
TEST(KendallTauB, FrozenReferenceValues) {
  using V = std::vector<Index>;
  EXPECT_NEAR(kendall_tau_b(V{1, 2, 3, 4, 5}, V{2, 1, 4, 3, 5}), 0.6, 1e-15);
  EXPECT_NEAR(kendall_tau_b(V{1, 2, 2, 4, 5, 5}, V{1, 3, 2, 2, 6, 5}), 0.7412493166611013, 1e-14);
  EXPECT_NEAR(kendall_tau_b(V{1, 1, 3, 4}, V{4, 3, 1, 1}), -0.8, 1e-14);
  EXPECT_NEAR(kendall_tau_b(V{1, 2, 3, 3, 5, 6, 7}, V{2, 1, 3, 5, 3, 7, 6}), 0.65, 1e-14);
  EXPECT_THROW(kendall_tau_b(V{1, 2}, V{1}), PreconditionError);
}

TEST(KendallConcordance, EndpointsAndConventions) {
  const auto a = rank_from_scores(std::vector<double>{0.4, 0.3, 0.2, 0.1});
  const auto reversed = rank_from_scores(std::vector<double>{0.1, 0.2, 0.3, 0.4});
  const auto flat = rank_from_scores(std::vector<double>{0.25, 0.25, 0.25, 0.25});
  EXPECT_EQ(kendall_concordance(a, a), 1.0);
  EXPECT_EQ(kendall_concordance(a, reversed), 0.0);
  EXPECT_EQ(kendall_concordance(flat, flat), 1.0);
  EXPECT_EQ(kendall_concordance(a, flat), 0.5);
  EXPECT_THROW(kendall_concordance(a, rank_from_scores(std::vector<double>{0.5, 0.5})), PreconditionError);
}

TEST(KendallConcordance, SymmetricAndBounded) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 30; ++trial) {
    auto s = random_scores(15, rng);
    auto t = random_scores(15, rng);
    s[4] = s[5];
    t[7] = t[2];
    const auto a = rank_from_scores(s);
    const auto b = rank_from_scores(t);
    const double k = kendall_concordance(a, b);
    EXPECT_EQ(k, kendall_concordance(b, a));
    EXPECT_GE(k, 0.0);
    EXPECT_LE(k, 1.0);
  }
}

TEST(RankShift, DifferenceOfPositions) {
  const auto qr = rank_from_scores(std::vector<double>{0.5, 0.3, 0.2});
  const auto pr = rank_from_scores(std::vector<double>{0.3, 0.5, 0.2});
  EXPECT_EQ(rank_shift(qr, pr), (std::vector<Index>{1, -1, 0}));
  EXPECT_EQ(rank_shift(qr, qr), (std::vector<Index>{0, 0, 0}));
}

TEST(DegeneracyProfile, PositionsAndGroupSizes) {
  const auto r = rank_from_scores(std::vector<double>{0.1, 0.3, 0.3, 0.2, 0.1});
  const auto profile = degeneracy_profile(r);
  ASSERT_EQ(profile.size(), 3u);
  EXPECT_EQ(profile[0].position, 1);
  EXPECT_EQ(profile[0].count, 2);
  EXPECT_EQ(profile[1].position, 3);
  EXPECT_EQ(profile[1].count, 1);
  EXPECT_EQ(profile[2].position, 4);
  EXPECT_EQ(profile[2].count, 2);
}

TEST(NeighborProfile, MeansOverTheChosenNeighbourhood) {
  // 0 -> 1, 0 -> 2, 2 -> 0, 3 -> 0; node 1 has no out-neighbours.
  const DirectedGraph g(4, {{0, 1}, {0, 2}, {2, 0}, {3, 0}});
  const auto r = rank_from_scores(std::vector<double>{0.4, 0.2, 0.3, 0.1});
  const auto out = neighbor_profile(g, r, Neighborhood::Out);
  ASSERT_TRUE(out[0].present);
  EXPECT_DOUBLE_EQ(out[0].mean_score, 0.25);
  EXPECT_DOUBLE_EQ(out[0].mean_degree, 1.0);
  EXPECT_DOUBLE_EQ(out[0].ratio, 0.25);
  EXPECT_FALSE(out[1].present);
  const auto in = neighbor_profile(g, r, Neighborhood::In);
  EXPECT_DOUBLE_EQ(in[0].mean_score, 0.2);
  EXPECT_DOUBLE_EQ(in[0].mean_degree, 1.0);
  const auto total = neighbor_profile(g, r, Neighborhood::Total);
  EXPECT_NEAR(total[0].mean_score, 0.2, 1e-15);
  EXPECT_THROW(neighbor_profile(g, rank_from_scores(std::vector<double>{1.0}), Neighborhood::Out),
               PreconditionError);
}

TEST(ToyRankings, RandomWalkTiesBothPeripheralCouples) {
  const auto ranks = classical_ranks(toy_graph(), 0.9, kDefaultTieTolerance);
  const auto& rw = ranks.rw;
  EXPECT_EQ(rw.group_of(4), rw.group_of(6));
  EXPECT_EQ(rw.group_of(5), rw.group_of(7));
  EXPECT_EQ(rw.group_of(0), rw.group_of(3));
  // Frozen RW scores: exact stationary vector of the toy random walk.
  const std::vector<double> expected{15 / 88., 18 / 88., 16 / 88., 15 / 88., 8 / 88., 4 / 88., 8 / 88., 4 / 88.};
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(rw.scores[i], expected[i], 1e-10);
}

TEST(ToyRankings, PageRankSplitsFiveAndSevenOnly) {
  const auto pr = classical_ranks(toy_graph(), 0.9, kDefaultTieTolerance).pr;
  EXPECT_NE(pr.group_of(4), pr.group_of(6));
  EXPECT_EQ(pr.group_of(5), pr.group_of(7));
  EXPECT_EQ(pr.tie_groups.front(), nodes({2}));
  EXPECT_EQ(pr.tie_groups[1], nodes({3}));
  EXPECT_EQ(pr.tie_groups[2], nodes({1, 4}));
}

// Nodes 1 and 4 are exchanged by a graph automorphism, so every ranking ties them.
TEST(ToyRankings, QuantumRankLiftsPeripheralTies) {
  for (double alpha : {0.3, 0.5, 0.7, 0.9}) {
    const auto qr = quantum_rank(toy_graph(), alpha, 0.9, IntegrationConfig{}, kDefaultTieTolerance).rank;
    EXPECT_EQ(qr.distinct_positions(), 7) << "alpha " << alpha;
    EXPECT_EQ(qr.group_of(0), qr.group_of(3));
    std::set<Index> peripheral;
    for (int k = 5; k <= 8; ++k) peripheral.insert(qr.group_of(k - 1));
    EXPECT_EQ(peripheral.size(), 4u) << "alpha " << alpha;
  }
}
