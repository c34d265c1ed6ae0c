#ifndef QRANK_RANKING_HPP
#define QRANK_RANKING_HPP

#include <span>
#include <vector>

#include "qrank/graph.hpp"
#include "qrank/types.hpp"

namespace qrank {

inline constexpr double kDefaultTieTolerance = 1e-6;

/// Scores turned into a competition ranking ("1, 2, 2, 4").
struct RankResult {
  std::vector<double> scores;
  /// Node indices by descending score; ties keep ascending node order.
  std::vector<Index> order;
  /// 1-based position of each node; tied nodes share the group's first position.
  std::vector<Index> positions;
  /// Groups of nodes within eps_tie of the group's leading score, in rank order.
  std::vector<std::vector<Index>> tie_groups;

  Index size() const noexcept { return static_cast<Index>(scores.size()); }
  Index distinct_positions() const noexcept { return static_cast<Index>(tie_groups.size()); }
  /// Tie group containing node i.
  Index group_of(Index node) const;
};

RankResult rank_from_scores(std::span<const double> scores, double eps_tie = kDefaultTieTolerance);

template <typename Derived>
RankResult rank_from_scores(const Eigen::MatrixBase<Derived>& scores, double eps_tie = kDefaultTieTolerance) {
  const Vector<double> v = scores.template cast<double>();
  return rank_from_scores(std::span<const double>(v.data(), static_cast<std::size_t>(v.size())), eps_tie);
}

/// Tie-aware Kendall tau-b between the two position vectors, mapped to [0, 1]
/// as (tau_b + 1) / 2: 1 for identical rankings, 0 for exact reversal.
double kendall_concordance(const RankResult& a, const RankResult& b);

/// tau-b itself, in [-1, 1].
double kendall_tau_b(std::span<const Index> x, std::span<const Index> y);

/// position_b(i) - position_a(i); positive when node i ranks higher under a.
std::vector<Index> rank_shift(const RankResult& a, const RankResult& b);

struct DegeneracyEntry {
  Index position = 0;
  Index count = 0;
};

/// Occupied positions and their tie-group sizes, in rank order.
std::vector<DegeneracyEntry> degeneracy_profile(const RankResult& r);

struct NeighborStats {
  bool present = false;  // false for nodes without neighbours
  double mean_score = 0.0;
  double mean_degree = 0.0;
  double ratio = 0.0;
};

/// Mean score and mean degree of each node's neighbours. Degree counts
/// distinct adjacent nodes.
std::vector<NeighborStats> neighbor_profile(const DirectedGraph& g, const RankResult& r,
                                            Neighborhood which = Neighborhood::Out);

}  // namespace qrank

#endif  // QRANK_RANKING_HPP
