#include "qrank/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qrank/errors.hpp"

namespace qrank {

namespace {

void require_same_size(const RankResult& a, const RankResult& b) {
  if (a.size() != b.size())
    throw PreconditionError("rankings cover " + std::to_string(a.size()) + " and " + std::to_string(b.size()) +
                            " nodes");
}

}  // namespace

Index RankResult::group_of(Index node) const {
  for (std::size_t g = 0; g < tie_groups.size(); ++g)
    if (std::find(tie_groups[g].begin(), tie_groups[g].end(), node) != tie_groups[g].end())
      return static_cast<Index>(g);
  throw PreconditionError("node " + std::to_string(node) + " not ranked");
}

RankResult rank_from_scores(std::span<const double> scores, double eps_tie) {
  constexpr double kNegativeSlack = 1e-9;
  RankResult r;
  r.scores.assign(scores.begin(), scores.end());
  const auto n = r.scores.size();
  for (std::size_t i = 0; i < n; ++i)
    if (!(r.scores[i] >= -kNegativeSlack))
      throw PreconditionError("score of node " + std::to_string(i) + " is negative or not a number");

  r.order.resize(n);
  std::iota(r.order.begin(), r.order.end(), Index{0});
  std::stable_sort(r.order.begin(), r.order.end(), [&](Index a, Index b) {
    return r.scores[static_cast<std::size_t>(a)] > r.scores[static_cast<std::size_t>(b)];
  });

  r.positions.assign(n, 0);
  double leader = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Index node = r.order[k];
    const double s = r.scores[static_cast<std::size_t>(node)];
    if (r.tie_groups.empty() || leader - s >= eps_tie) {
      r.tie_groups.emplace_back();
      leader = s;
      r.positions[static_cast<std::size_t>(node)] = static_cast<Index>(k) + 1;
    } else {
      r.positions[static_cast<std::size_t>(node)] = r.positions[static_cast<std::size_t>(r.tie_groups.back().front())];
    }
    r.tie_groups.back().push_back(node);
  }
  for (auto& group : r.tie_groups) std::sort(group.begin(), group.end());
  return r;
}

double kendall_tau_b(std::span<const Index> x, std::span<const Index> y) {
  if (x.size() != y.size()) throw PreconditionError("kendall_tau_b: size mismatch");
  const std::size_t n = x.size();
  // concordant - discordant, and pairs untied in x (resp. y)
  long long balance = 0;
  long long untied_x = 0;
  long long untied_y = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto dx = x[i] - x[j];
      const auto dy = y[i] - y[j];
      if (dx != 0) ++untied_x;
      if (dy != 0) ++untied_y;
      if (dx != 0 && dy != 0) balance += ((dx > 0) == (dy > 0)) ? 1 : -1;
    }
  }
  if (untied_x == 0 || untied_y == 0) {
    // Undefined for a constant ranking; agree only if both are constant.
    return (untied_x == untied_y) ? 1.0 : 0.0;
  }
  return static_cast<double>(balance) / std::sqrt(static_cast<double>(untied_x) * static_cast<double>(untied_y));
}

double kendall_concordance(const RankResult& a, const RankResult& b) {
  require_same_size(a, b);
  if (a.positions == b.positions) return 1.0;
  const double tau = kendall_tau_b(a.positions, b.positions);
  return std::clamp((tau + 1.0) / 2.0, 0.0, 1.0);
}

std::vector<Index> rank_shift(const RankResult& a, const RankResult& b) {
  require_same_size(a, b);
  std::vector<Index> shift(a.positions.size());
  for (std::size_t i = 0; i < shift.size(); ++i) shift[i] = b.positions[i] - a.positions[i];
  return shift;
}

std::vector<DegeneracyEntry> degeneracy_profile(const RankResult& r) {
  std::vector<DegeneracyEntry> profile;
  profile.reserve(r.tie_groups.size());
  for (const auto& group : r.tie_groups)
    profile.push_back({r.positions[static_cast<std::size_t>(group.front())], static_cast<Index>(group.size())});
  return profile;
}

std::vector<NeighborStats> neighbor_profile(const DirectedGraph& g, const RankResult& r, Neighborhood which) {
  if (g.size() != r.size()) throw PreconditionError("graph and ranking sizes differ");
  std::vector<NeighborStats> stats(static_cast<std::size_t>(g.size()));
  for (Index i = 0; i < g.size(); ++i) {
    const auto& nbrs = g.neighbors(i, which);
    if (nbrs.empty()) continue;
    auto& s = stats[static_cast<std::size_t>(i)];
    double score = 0.0;
    double degree = 0.0;
    for (Index j : nbrs) {
      score += r.scores[static_cast<std::size_t>(j)];
      degree += static_cast<double>(g.degree(j));
    }
    const auto count = static_cast<double>(nbrs.size());
    s.present = true;
    s.mean_score = score / count;
    s.mean_degree = degree / count;
    s.ratio = s.mean_score / s.mean_degree;
  }
  return stats;
}

}  // namespace qrank
