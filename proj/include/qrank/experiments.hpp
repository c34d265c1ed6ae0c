#ifndef QRANK_EXPERIMENTS_HPP
#define QRANK_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qrank/graph.hpp"
#include "qrank/ranking.hpp"
#include "qrank/solver.hpp"

namespace qrank {

enum class Command { Sweep, Histogram, Scaling, Toy, Report, Generate };

Command parse_command(const std::string& name);
std::string to_string(Command command);

/// 0.05, 0.10, ..., 1.00
std::vector<double> default_alpha_grid();

struct ExperimentConfig {
  Command command = Command::Sweep;
  std::optional<std::string> graph_path;
  /// Treat edge-list lines as directed links.
  bool directed_input = true;
  std::optional<GraphGenSpec> gen;
  std::vector<double> alpha_grid = default_alpha_grid();
  double q = 0.9;
  Index ensemble = 10;
  std::uint64_t seed = 1;
  IntegrationConfig integration;
  std::string out = "qrank_out";
  /// alpha for single-alpha analyses (toy table, report profiles).
  double alpha = 0.9;
  std::vector<Index> sizes{50, 100, 150, 200};
  Neighborhood neighborhood = Neighborhood::Out;
  double eps_tie = kDefaultTieTolerance;
  /// Worker threads; 0 uses every core.
  unsigned threads = 0;

  void validate() const;
};

/// Graphs named by the config: the loaded file, or `ensemble` generated
/// networks with seeds seed, seed + 1, ...
std::vector<DirectedGraph> experiment_graphs(const ExperimentConfig& cfg);

struct AlphaPoint {
  double alpha = 0.0;
  double tau_qr = 0.0;
  double ratio = 0.0;
  /// Concordance of the QR ranking with PageRank.
  double kendall = 0.0;
  bool converged = false;
};

/// One network over an alpha grid.
struct NetworkSweep {
  Index n = 0;
  double tau_pr = 0.0;
  bool pr_converged = false;
  std::vector<AlphaPoint> points;
  /// Grid argmin of tau_qr / tau_pr over converged points.
  double alpha_opt = 0.0;
  double ratio_opt = 0.0;

  bool all_converged() const;
};

struct SweepRow {
  double alpha = 0.0;
  double tau_qr = 0.0;
  double tau_pr = 0.0;
  double ratio = 0.0;
  double ratio_std = 0.0;
  double kendall = 0.0;
  Index unconverged = 0;
};

/// Ensemble means per alpha and the argmin of the mean ratio curve.
struct SweepTable {
  std::vector<SweepRow> rows;
  double alpha_opt = 0.0;
  double min_ratio = 0.0;
  std::vector<NetworkSweep> networks;

  bool all_converged() const;
  /// True when the minimum lies strictly inside the grid.
  bool interior_minimum() const;
};

struct SweepOptions {
  double q = 0.9;
  IntegrationConfig integration;
  double eps_tie = kDefaultTieTolerance;
  unsigned threads = 0;
};

/// All (network, alpha) integrations of an ensemble, run concurrently.
std::vector<NetworkSweep> sweep_ensemble(std::span<const DirectedGraph> graphs, std::span<const double> grid,
                                         const SweepOptions& options);

SweepTable summarize(std::vector<NetworkSweep> networks, std::span<const double> grid);

SweepTable run_sweep(const ExperimentConfig& cfg);

struct Histogram {
  std::vector<double> edges;
  std::vector<Index> counts;
  std::vector<double> alpha_opts;

  double probability(std::size_t bin) const;
};

/// Bins centred on the grid points, edges at the midpoints.
Histogram alpha_opt_histogram(const std::vector<NetworkSweep>& networks, std::span<const double> grid);

Histogram run_histogram(const ExperimentConfig& cfg);

struct ScalingRow {
  Index n = 0;
  double alpha_opt = 0.0;
  double ratio = 0.0;
  Index unconverged = 0;
};

ScalingRow scaling_row(Index n, const SweepTable& table);

/// One BA ensemble per size in cfg.sizes (attachment count from cfg.gen, default 3).
std::vector<ScalingRow> run_scaling(const ExperimentConfig& cfg);

struct ClassicalRanks {
  RankResult rw;
  RankResult pr;
};

/// Random walk (lazy power iteration on Pi) and PageRank rankings.
ClassicalRanks classical_ranks(const DirectedGraph& g, double q, double eps_tie);

struct QuantumRank {
  RankResult rank;
  StationaryResult<double> stationary;
};

QuantumRank quantum_rank(const DirectedGraph& g, double alpha, double q, const IntegrationConfig& integration,
                         double eps_tie);

struct ToyTable {
  DirectedGraph graph;
  double alpha = 0.0;
  RankResult rw;
  RankResult pr;
  RankResult qr;
  bool converged = false;
  ComplexMatrix<double> rho_star;
};

ToyTable run_toy(const ExperimentConfig& cfg);

struct Report {
  DirectedGraph graph;
  SweepTable sweep;
  double alpha = 0.0;
  RankResult rw;
  RankResult pr;
  RankResult qr;
  bool qr_converged = false;
  ComplexMatrix<double> rho_star;
  /// rank_shift(qr, pr): positive when QR places the node higher.
  std::vector<Index> shifts;
  std::vector<NeighborStats> neighbors;
};

Report run_report(const ExperimentConfig& cfg);
Report build_report(const DirectedGraph& g, SweepTable sweep, const ExperimentConfig& cfg);

}  // namespace qrank

#endif  // QRANK_EXPERIMENTS_HPP
