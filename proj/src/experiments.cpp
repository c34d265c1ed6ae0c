#include "qrank/experiments.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>

#include "qrank/errors.hpp"
#include "qrank/lindblad.hpp"
#include "qrank/parallel.hpp"
#include "qrank/stochastic.hpp"

namespace qrank {

Command parse_command(const std::string& name) {
  std::string lower;
  for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "sweep") return Command::Sweep;
  if (lower == "histogram") return Command::Histogram;
  if (lower == "scaling") return Command::Scaling;
  if (lower == "toy") return Command::Toy;
  if (lower == "report") return Command::Report;
  if (lower == "generate") return Command::Generate;
  throw PreconditionError("unknown command '" + name + "'");
}

std::string to_string(Command command) {
  switch (command) {
    case Command::Sweep:
      return "sweep";
    case Command::Histogram:
      return "histogram";
    case Command::Scaling:
      return "scaling";
    case Command::Toy:
      return "toy";
    case Command::Report:
      return "report";
    case Command::Generate:
      return "generate";
  }
  return "unknown";
}

std::vector<double> default_alpha_grid() {
  std::vector<double> grid;
  for (int k = 1; k <= 20; ++k) grid.push_back(k / 20.0);
  return grid;
}

void ExperimentConfig::validate() const {
  if (alpha_grid.empty()) throw PreconditionError("alpha grid is empty");
  for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
    if (!(alpha_grid[i] > 0.0 && alpha_grid[i] <= 1.0)) throw PreconditionError("alpha grid values must lie in (0, 1]");
    if (i > 0 && !(alpha_grid[i] > alpha_grid[i - 1])) throw PreconditionError("alpha grid must be strictly increasing");
  }
  if (!(q >= 0.0 && q <= 1.0)) throw PreconditionError("q must lie in [0, 1]");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw PreconditionError("alpha must lie in (0, 1]");
  if (ensemble < 1) throw PreconditionError("ensemble must be >= 1");
  if (!(eps_tie >= 0.0)) throw PreconditionError("tie tolerance must be non-negative");
  if (sizes.empty()) throw PreconditionError("size list is empty");
  integration.validate();
  if (gen) gen->validate();
}

std::vector<DirectedGraph> experiment_graphs(const ExperimentConfig& cfg) {
  if (cfg.graph_path) return {load_edge_list_file(*cfg.graph_path, cfg.directed_input).graph};
  if (!cfg.gen) throw PreconditionError("either a graph file or a generator spec is required");
  std::vector<DirectedGraph> graphs;
  graphs.reserve(static_cast<std::size_t>(cfg.ensemble));
  for (Index i = 0; i < cfg.ensemble; ++i) {
    GraphGenSpec spec = *cfg.gen;
    spec.seed = cfg.seed + static_cast<std::uint64_t>(i);
    graphs.push_back(generate(spec));
  }
  return graphs;
}

bool NetworkSweep::all_converged() const {
  return pr_converged && std::all_of(points.begin(), points.end(), [](const AlphaPoint& p) { return p.converged; });
}

bool SweepTable::all_converged() const {
  return std::all_of(networks.begin(), networks.end(), [](const NetworkSweep& s) { return s.all_converged(); });
}

bool SweepTable::interior_minimum() const {
  if (rows.size() < 3) return false;
  const auto it = std::find_if(rows.begin(), rows.end(), [&](const SweepRow& r) { return r.alpha == alpha_opt; });
  return it != rows.begin() && it != rows.end() && std::next(it) != rows.end() && min_ratio < rows.back().ratio;
}

namespace {

struct PreparedNetwork {
  Hamiltonian<double> h;
  StochasticMatrix<double> g;
  RankResult pr;
};

}  // namespace

std::vector<NetworkSweep> sweep_ensemble(std::span<const DirectedGraph> graphs, std::span<const double> grid,
                                         const SweepOptions& options) {
  const auto networks = static_cast<Index>(graphs.size());
  const auto points = static_cast<Index>(grid.size());
  std::vector<PreparedNetwork> prepared;
  prepared.reserve(graphs.size());
  for (const auto& graph : graphs) {
    auto g = google_matrix(transition_matrix<double>(graph), options.q);
    auto pr = rank_from_scores(classical_stationary(g), options.eps_tie);
    prepared.push_back({hamiltonian_from_graph<double>(graph), std::move(g), std::move(pr)});
  }

  std::vector<NetworkSweep> sweeps(graphs.size());
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    sweeps[i].n = graphs[i].size();
    sweeps[i].points.resize(grid.size());
  }

  // Small alpha runs longest, so those tasks go first; the classical runs last.
  const Index quantum_tasks = networks * points;
  parallel_for(quantum_tasks + networks, options.threads, [&](Index task) {
    if (task >= quantum_tasks) {
      const auto net = static_cast<std::size_t>(task - quantum_tasks);
      const auto classical = classical_convergence_time(prepared[net].g, options.integration);
      sweeps[net].tau_pr = classical.tau;
      sweeps[net].pr_converged = classical.converged;
      return;
    }
    const auto k = static_cast<std::size_t>(task / networks);
    const auto net = static_cast<std::size_t>(task % networks);
    const LindbladGenerator<double> gen(prepared[net].h, prepared[net].g, grid[k]);
    const auto result = integrate_to_stationary(gen, options.integration);
    const auto qr = rank_from_scores(result.rho_star.populations(), options.eps_tie);
    auto& point = sweeps[net].points[k];
    point.alpha = grid[k];
    point.tau_qr = result.tau;
    point.converged = result.converged;
    point.kendall = kendall_concordance(qr, prepared[net].pr);
  });

  for (auto& s : sweeps) {
    double best = std::numeric_limits<double>::infinity();
    for (auto& p : s.points) {
      p.ratio = s.tau_pr > 0.0 ? p.tau_qr / s.tau_pr : std::numeric_limits<double>::quiet_NaN();
      if (p.converged && p.ratio < best) {
        best = p.ratio;
        s.alpha_opt = p.alpha;
      }
    }
    s.ratio_opt = best;
  }
  return sweeps;
}

SweepTable summarize(std::vector<NetworkSweep> networks, std::span<const double> grid) {
  SweepTable table;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    SweepRow row;
    row.alpha = grid[k];
    std::vector<double> ratios;
    double tau_qr = 0.0;
    double tau_pr = 0.0;
    double kendall = 0.0;
    for (const auto& s : networks) {
      const auto& p = s.points[k];
      if (!p.converged || !s.pr_converged) {
        ++row.unconverged;
        continue;
      }
      ratios.push_back(p.ratio);
      tau_qr += p.tau_qr;
      tau_pr += s.tau_pr;
      kendall += p.kendall;
    }
    if (!ratios.empty()) {
      const auto m = static_cast<double>(ratios.size());
      row.tau_qr = tau_qr / m;
      row.tau_pr = tau_pr / m;
      row.kendall = kendall / m;
      row.ratio = std::accumulate(ratios.begin(), ratios.end(), 0.0) / m;
      double var = 0.0;
      for (double r : ratios) var += (r - row.ratio) * (r - row.ratio);
      row.ratio_std = ratios.size() > 1 ? std::sqrt(var / (m - 1.0)) : 0.0;
      if (row.ratio < best) {
        best = row.ratio;
        table.alpha_opt = row.alpha;
      }
    } else {
      row.ratio = std::numeric_limits<double>::quiet_NaN();
    }
    table.rows.push_back(row);
  }
  table.min_ratio = best;
  table.networks = std::move(networks);
  return table;
}

namespace {

SweepOptions sweep_options(const ExperimentConfig& cfg) {
  return {cfg.q, cfg.integration, cfg.eps_tie, cfg.threads};
}

}  // namespace

SweepTable run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto graphs = experiment_graphs(cfg);
  return summarize(sweep_ensemble(graphs, cfg.alpha_grid, sweep_options(cfg)), cfg.alpha_grid);
}

double Histogram::probability(std::size_t bin) const {
  const auto total = std::accumulate(counts.begin(), counts.end(), Index{0});
  return total == 0 ? 0.0 : static_cast<double>(counts[bin]) / static_cast<double>(total);
}

Histogram alpha_opt_histogram(const std::vector<NetworkSweep>& networks, std::span<const double> grid) {
  Histogram h;
  const std::size_t bins = grid.size();
  h.edges.resize(bins + 1);
  for (std::size_t k = 1; k < bins; ++k) h.edges[k] = 0.5 * (grid[k - 1] + grid[k]);
  const double first_half = bins > 1 ? 0.5 * (grid[1] - grid[0]) : 0.025;
  const double last_half = bins > 1 ? 0.5 * (grid[bins - 1] - grid[bins - 2]) : 0.025;
  h.edges.front() = grid.front() - first_half;
  h.edges.back() = grid.back() + last_half;
  h.counts.assign(bins, 0);
  for (const auto& s : networks) {
    if (!std::isfinite(s.ratio_opt)) continue;
    h.alpha_opts.push_back(s.alpha_opt);
    const auto it = std::find(grid.begin(), grid.end(), s.alpha_opt);
    ++h.counts[static_cast<std::size_t>(it - grid.begin())];
  }
  return h;
}

Histogram run_histogram(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto graphs = experiment_graphs(cfg);
  return alpha_opt_histogram(sweep_ensemble(graphs, cfg.alpha_grid, sweep_options(cfg)), cfg.alpha_grid);
}

ScalingRow scaling_row(Index n, const SweepTable& table) {
  ScalingRow row{n, table.alpha_opt, table.min_ratio, 0};
  for (const auto& r : table.rows) row.unconverged += r.unconverged;
  return row;
}

std::vector<ScalingRow> run_scaling(const ExperimentConfig& cfg) {
  cfg.validate();
  GraphGenSpec base{GraphModel::BA, 0, 3.0, 0, false};
  if (cfg.gen) base = *cfg.gen;
  std::vector<ScalingRow> rows;
  for (Index n : cfg.sizes) {
    ExperimentConfig sized = cfg;
    sized.graph_path.reset();
    sized.gen = base;
    sized.gen->n = n;
    rows.push_back(scaling_row(n, run_sweep(sized)));
  }
  return rows;
}

ClassicalRanks classical_ranks(const DirectedGraph& g, double q, double eps_tie) {
  const auto pi = transition_matrix<double>(g);
  return {rank_from_scores(classical_stationary(lazy(pi)), eps_tie),
          rank_from_scores(classical_stationary(google_matrix(pi, q)), eps_tie)};
}

QuantumRank quantum_rank(const DirectedGraph& g, double alpha, double q, const IntegrationConfig& integration,
                         double eps_tie) {
  auto stationary = integrate_to_stationary(make_generator<double>(g, alpha, q), integration);
  auto rank = rank_from_scores(stationary.rho_star.populations(), eps_tie);
  return {std::move(rank), std::move(stationary)};
}

ToyTable run_toy(const ExperimentConfig& cfg) {
  cfg.validate();
  ToyTable table;
  table.graph = toy_graph();
  table.alpha = cfg.alpha;
  auto classical = classical_ranks(table.graph, cfg.q, cfg.eps_tie);
  table.rw = std::move(classical.rw);
  table.pr = std::move(classical.pr);
  auto quantum = quantum_rank(table.graph, cfg.alpha, cfg.q, cfg.integration, cfg.eps_tie);
  table.qr = std::move(quantum.rank);
  table.converged = quantum.stationary.converged;
  table.rho_star = quantum.stationary.rho_star.matrix();
  return table;
}

Report build_report(const DirectedGraph& g, SweepTable sweep, const ExperimentConfig& cfg) {
  Report report;
  report.graph = g;
  report.sweep = std::move(sweep);
  report.alpha = cfg.alpha;
  auto classical = classical_ranks(g, cfg.q, cfg.eps_tie);
  report.rw = std::move(classical.rw);
  report.pr = std::move(classical.pr);
  auto quantum = quantum_rank(g, cfg.alpha, cfg.q, cfg.integration, cfg.eps_tie);
  report.qr = std::move(quantum.rank);
  report.qr_converged = quantum.stationary.converged;
  report.rho_star = quantum.stationary.rho_star.matrix();
  report.shifts = rank_shift(report.qr, report.pr);
  report.neighbors = neighbor_profile(g, report.qr, cfg.neighborhood);
  return report;
}

Report run_report(const ExperimentConfig& cfg) {
  cfg.validate();
  if (!cfg.graph_path) throw PreconditionError("report needs a graph file (--graph)");
  const auto g = load_edge_list_file(*cfg.graph_path, cfg.directed_input).graph;
  const std::vector<DirectedGraph> one{g};
  auto sweep = summarize(sweep_ensemble(one, cfg.alpha_grid, sweep_options(cfg)), cfg.alpha_grid);
  return build_report(g, std::move(sweep), cfg);
}

}  // namespace qrank
