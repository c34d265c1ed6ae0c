#include <gtest/gtest.h>

#include <cmath>

#include "qrank/errors.hpp"
#include "qrank/experiments.hpp"
#include "support.hpp"

using namespace qrank;

namespace {

ExperimentConfig small_er(Index n, Index ensemble, std::vector<double> grid) {
  ExperimentConfig cfg;
  cfg.gen = GraphGenSpec{GraphModel::ER, n, 4.0, 0, false};
  cfg.ensemble = ensemble;
  cfg.alpha_grid = std::move(grid);
  cfg.integration.dt = 0.025;
  cfg.threads = 1;
  return cfg;
}

Index node(int label) { return label - 1; }

}  // namespace

TEST(Command, NamesRoundTrip) {
  for (auto c : {Command::Sweep, Command::Histogram, Command::Scaling, Command::Toy, Command::Report, Command::Generate})
    EXPECT_EQ(parse_command(to_string(c)), c);
  EXPECT_EQ(parse_command("SWEEP"), Command::Sweep);
  EXPECT_THROW(parse_command("plot"), PreconditionError);
}

TEST(ExperimentConfig, DefaultGridAndValidation) {
  const auto grid = default_alpha_grid();
  ASSERT_EQ(grid.size(), 20u);
  EXPECT_DOUBLE_EQ(grid.front(), 0.05);
  EXPECT_DOUBLE_EQ(grid.back(), 1.0);

  ExperimentConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.alpha_grid = {0.0, 0.5};
  EXPECT_THROW(cfg.validate(), PreconditionError);
  cfg.alpha_grid = {0.5, 1.2};
  EXPECT_THROW(cfg.validate(), PreconditionError);
  cfg.alpha_grid = {0.6, 0.5};
  EXPECT_THROW(cfg.validate(), PreconditionError);
  cfg.alpha_grid = {};
  EXPECT_THROW(cfg.validate(), PreconditionError);
  cfg = {};
  cfg.ensemble = 0;
  EXPECT_THROW(cfg.validate(), PreconditionError);
  cfg = {};
  cfg.q = 1.5;
  EXPECT_THROW(cfg.validate(), PreconditionError);
}

TEST(ExperimentGraphs, SeedsAreConsecutive) {
  auto cfg = small_er(30, 3, {1.0});
  cfg.seed = 40;
  const auto graphs = experiment_graphs(cfg);
  ASSERT_EQ(graphs.size(), 3u);
  for (std::uint64_t i = 0; i < 3; ++i) {
    GraphGenSpec spec = *cfg.gen;
    spec.seed = 40 + i;
    EXPECT_EQ(graphs[i], generate(spec));
  }
  cfg.gen.reset();
  EXPECT_THROW(experiment_graphs(cfg), PreconditionError);
  cfg.graph_path = test::data_path("toy_graph.txt");
  EXPECT_EQ(experiment_graphs(cfg).front(), toy_graph());
}

TEST(Sweep, ClassicalLimitRatioIsOne) {
  const auto table = run_sweep(small_er(40, 2, {1.0}));
  ASSERT_EQ(table.rows.size(), 1u);
  EXPECT_NEAR(table.rows[0].ratio, 1.0, 0.02);
  EXPECT_DOUBLE_EQ(table.rows[0].kendall, 1.0);
  EXPECT_EQ(table.rows[0].unconverged, 0);
  EXPECT_TRUE(table.all_converged());
  EXPECT_FALSE(table.interior_minimum());
}

TEST(Sweep, DeterministicAcrossRunsAndThreadCounts) {
  auto cfg = small_er(30, 2, {0.4, 0.7, 1.0});
  const auto a = run_sweep(cfg);
  cfg.threads = 3;
  const auto b = run_sweep(cfg);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    EXPECT_EQ(a.rows[k].tau_qr, b.rows[k].tau_qr);
    EXPECT_EQ(a.rows[k].ratio, b.rows[k].ratio);
    EXPECT_EQ(a.rows[k].kendall, b.rows[k].kendall);
  }
  EXPECT_EQ(a.alpha_opt, b.alpha_opt);
}

TEST(Summarize, UnconvergedRunsAreCountedNotAveraged) {
  const std::vector<double> grid{0.5, 1.0};
  NetworkSweep good{10, 2.0, true, {{0.5, 1.0, 0.5, 0.9, true}, {1.0, 2.0, 1.0, 1.0, true}}, 0.5, 0.5};
  NetworkSweep bad{10, 2.0, true, {{0.5, 9.0, 4.5, 0.1, false}, {1.0, 2.2, 1.1, 1.0, true}}, 1.0, 1.1};
  const auto table = summarize({good, bad}, grid);
  EXPECT_EQ(table.rows[0].unconverged, 1);
  EXPECT_DOUBLE_EQ(table.rows[0].ratio, 0.5);
  EXPECT_DOUBLE_EQ(table.rows[0].ratio_std, 0.0);
  EXPECT_DOUBLE_EQ(table.rows[1].ratio, 1.05);
  EXPECT_NEAR(table.rows[1].ratio_std, std::sqrt(0.005), 1e-15);
  EXPECT_DOUBLE_EQ(table.alpha_opt, 0.5);
  EXPECT_FALSE(table.all_converged());
}

TEST(Summarize, InteriorMinimum) {
  const std::vector<double> grid{0.3, 0.6, 1.0};
  NetworkSweep s{10, 1.0, true, {{0.3, 1.2, 1.2, 1, true}, {0.6, 0.8, 0.8, 1, true}, {1.0, 1.0, 1.0, 1, true}}, 0.6, 0.8};
  EXPECT_TRUE(summarize({s}, grid).interior_minimum());
  s.points[0].ratio = 0.5;
  EXPECT_FALSE(summarize({s}, grid).interior_minimum());
}

TEST(Histogram, BinsCentredOnTheGrid) {
  const std::vector<double> grid{0.2, 0.4, 0.6};
  NetworkSweep a{5, 1.0, true, {}, 0.4, 0.9};
  NetworkSweep b{5, 1.0, true, {}, 0.6, 0.8};
  NetworkSweep c{5, 1.0, true, {}, 0.4, 0.7};
  const auto h = alpha_opt_histogram({a, b, c}, grid);
  ASSERT_EQ(h.edges.size(), 4u);
  EXPECT_NEAR(h.edges[0], 0.1, 1e-15);
  EXPECT_NEAR(h.edges[1], 0.3, 1e-15);
  EXPECT_NEAR(h.edges[3], 0.7, 1e-15);
  EXPECT_EQ(h.counts, (std::vector<Index>{0, 2, 1}));
  EXPECT_NEAR(h.probability(1), 2.0 / 3.0, 1e-15);
}

TEST(Histogram, SingleNetworkFillsOneBinDeterministically) {
  const auto cfg = small_er(30, 1, {0.3, 0.6, 1.0});
  const auto h = run_histogram(cfg);
  Index filled = 0;
  for (Index c : h.counts) filled += c > 0 ? 1 : 0;
  EXPECT_EQ(filled, 1);
  EXPECT_EQ(run_histogram(cfg).counts, h.counts);
}

TEST(Scaling, OneRowPerSize) {
  auto cfg = small_er(25, 1, {0.5, 1.0});
  cfg.gen = GraphGenSpec{GraphModel::BA, 25, 2.0, 0, false};
  cfg.sizes = {25};
  const auto rows = run_scaling(cfg);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].n, 25);
  EXPECT_LT(rows[0].ratio, 1.05);
}

TEST(Toy, CoreOrderingAcrossAlpha) {
  ExperimentConfig cfg;
  cfg.command = Command::Toy;
  for (double alpha : {0.3, 0.7, 0.9}) {
    cfg.alpha = alpha;
    const auto toy = run_toy(cfg);
    ASSERT_TRUE(toy.converged);
    for (const RankResult* r : {&toy.rw, &toy.pr, &toy.qr}) {
      EXPECT_EQ(r->positions[node(2)], 1) << "alpha " << alpha;
      EXPECT_EQ(r->positions[node(3)], 2) << "alpha " << alpha;
      EXPECT_EQ(r->positions[node(1)], 3) << "alpha " << alpha;
      EXPECT_EQ(r->positions[node(4)], 3) << "alpha " << alpha;
    }
  }
}

// Near alpha = 0.5 the coherent part lifts the symmetric pair {1, 4} above node 3.
TEST(Toy, MidAlphaKeepsNodeTwoOnTop) {
  ExperimentConfig cfg;
  cfg.alpha = 0.5;
  const auto toy = run_toy(cfg);
  EXPECT_EQ(toy.qr.positions[node(2)], 1);
  EXPECT_EQ(toy.qr.positions[node(1)], toy.qr.positions[node(4)]);
  EXPECT_GT(toy.qr.positions[node(3)], toy.qr.positions[node(1)]);
}

TEST(Toy, PeripheralOrderOverTheMidRange) {
  ExperimentConfig cfg;
  for (double alpha : {0.3, 0.5, 0.7, 0.85}) {
    cfg.alpha = alpha;
    const auto& qr = run_toy(cfg).qr;
    EXPECT_LT(qr.positions[node(5)], qr.positions[node(7)]) << "alpha " << alpha;
    EXPECT_LT(qr.positions[node(7)], qr.positions[node(8)]) << "alpha " << alpha;
    EXPECT_LT(qr.positions[node(8)], qr.positions[node(6)]) << "alpha " << alpha;
  }
}

TEST(Report, ClassicalLimitHasNoShifts) {
  ExperimentConfig cfg;
  cfg.graph_path = test::data_path("toy_graph.txt");
  cfg.alpha_grid = {0.5, 1.0};
  cfg.alpha = 1.0;
  cfg.threads = 1;
  const auto report = run_report(cfg);
  EXPECT_DOUBLE_EQ(report.sweep.rows.back().kendall, 1.0);
  EXPECT_NEAR(report.sweep.rows.back().ratio, 1.0, 0.02);
  for (Index s : report.shifts) EXPECT_EQ(s, 0);
  EXPECT_TRUE(report.qr_converged);
  EXPECT_EQ(report.neighbors.size(), 8u);
}

TEST(Report, QuantumRankIsNoMoreDegenerateThanPageRank) {
  ExperimentConfig cfg;
  cfg.alpha_grid = {1.0};
  cfg.threads = 1;
  const auto report = build_report(toy_graph(), SweepTable{}, cfg);
  EXPECT_GE(report.qr.distinct_positions(), report.pr.distinct_positions());
  EXPECT_GE(report.pr.distinct_positions(), report.rw.distinct_positions());
}

TEST(Report, NeedsAGraphFile) {
  ExperimentConfig cfg;
  cfg.gen = GraphGenSpec{GraphModel::ER, 20, 3.0, 1, false};
  EXPECT_THROW(run_report(cfg), PreconditionError);
}
