// qrank: sweeps, histograms, scaling tables, the toy ranking table and
// network reports, written as CSV plus one summary.json per run.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qrank/errors.hpp"
#include "qrank/experiments.hpp"
#include "qrank/io.hpp"
#include "qrank/stochastic.hpp"

namespace fs = std::filesystem;
using namespace qrank;

namespace {

constexpr int kExitUnconverged = 2;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream s(text);
  std::string part;
  while (std::getline(s, part, sep)) parts.push_back(part);
  return parts;
}

GraphGenSpec parse_gen(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw PreconditionError("--gen expects MODEL,N,PARAM, got '" + text + "'");
  GraphGenSpec spec;
  spec.model = parse_graph_model(parts[0]);
  spec.n = std::stol(parts[1]);
  spec.param = std::stod(parts[2]);
  return spec;
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& text, Parse parse) {
  std::vector<T> out;
  for (const auto& item : split(text, ','))
    if (!item.empty()) out.push_back(parse(item));
  return out;
}

class OutputDir {
 public:
  explicit OutputDir(fs::path root) : root_(std::move(root)) { fs::create_directories(root_); }

  std::ofstream open(const std::string& name) {
    std::ofstream out(root_ / name);
    if (!out) throw Error("cannot write " + (root_ / name).string());
    written_.push_back(name);
    return out;
  }

  void csv(const std::string& name, const CsvTable& table) {
    auto out = open(name);
    write_csv(out, table);
  }

  void json(const nlohmann::json& summary) {
    auto j = summary;
    j["files"] = written_;
    auto out = open("summary.json");
    out << j.dump(2) << '\n';
  }

  const fs::path& root() const { return root_; }

 private:
  fs::path root_;
  std::vector<std::string> written_;
};

void export_matrices(OutputDir& dir, const DirectedGraph& g, double q, const ComplexMatrix<double>& rho) {
  const auto pi = transition_matrix<double>(g);
  {
    auto out = dir.open("transition.csv");
    write_matrix_csv(out, pi.matrix());
  }
  {
    auto out = dir.open("google.csv");
    write_matrix_csv(out, google_matrix(pi, q).matrix());
  }
  auto out = dir.open("rho_star.csv");
  write_density_csv(out, rho);
}

void write_rankings(OutputDir& dir, const DirectedGraph& g, const RankResult& rw, const RankResult& pr,
                    const RankResult& qr) {
  for (const auto& [name, r] : {std::pair<const char*, const RankResult*>{"rw", &rw}, {"pr", &pr}, {"qr", &qr}}) {
    auto out = dir.open(std::string("ranking_") + name + ".csv");
    write_ranking_csv(out, g, *r);
  }
}

void report_unconverged(Index count) {
  if (count > 0) std::cerr << "qrank: " << count << " run(s) did not converge within max_time\n";
}

int run(const ExperimentConfig& cfg, bool matrices) {
  cfg.validate();
  if (cfg.command == Command::Generate) {
    if (!cfg.gen) throw PreconditionError("generate needs --gen MODEL,N,PARAM");
    GraphGenSpec spec = *cfg.gen;
    spec.seed = cfg.seed;
    const fs::path path(cfg.out);
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    save_edge_list_file(path.string(), generate(spec));
    return 0;
  }

  OutputDir dir(cfg.out);
  Index unconverged = 0;
  switch (cfg.command) {
    case Command::Sweep: {
      const auto table = run_sweep(cfg);
      dir.csv("sweep.csv", sweep_csv(table));
      dir.csv("sweep_networks.csv", network_sweep_csv(table));
      dir.json(summary_json(cfg, table));
      for (const auto& r : table.rows) unconverged += r.unconverged;
      break;
    }
    case Command::Histogram: {
      const auto h = run_histogram(cfg);
      dir.csv("histogram.csv", histogram_csv(h));
      dir.json(summary_json(cfg, h));
      unconverged = cfg.ensemble - static_cast<Index>(h.alpha_opts.size());
      break;
    }
    case Command::Scaling: {
      const auto rows = run_scaling(cfg);
      dir.csv("scaling.csv", scaling_csv(rows));
      dir.json(summary_json(cfg, rows));
      for (const auto& r : rows) unconverged += r.unconverged;
      break;
    }
    case Command::Toy: {
      const auto toy = run_toy(cfg);
      dir.csv("toy.csv", toy_csv(toy));
      write_rankings(dir, toy.graph, toy.rw, toy.pr, toy.qr);
      if (matrices) export_matrices(dir, toy.graph, cfg.q, toy.rho_star);
      dir.json(summary_json(cfg, toy));
      unconverged = toy.converged ? 0 : 1;
      break;
    }
    case Command::Report: {
      const auto report = run_report(cfg);
      dir.csv("sweep.csv", sweep_csv(report.sweep));
      dir.csv("degeneracy.csv", degeneracy_csv(report.rw, report.pr, report.qr));
      dir.csv("shifts.csv", shifts_csv(report));
      dir.csv("neighbors.csv", neighbors_csv(report));
      write_rankings(dir, report.graph, report.rw, report.pr, report.qr);
      if (matrices) export_matrices(dir, report.graph, cfg.q, report.rho_star);
      dir.json(summary_json(cfg, report));
      for (const auto& r : report.sweep.rows) unconverged += r.unconverged;
      if (!report.qr_converged) ++unconverged;
      break;
    }
    case Command::Generate:
      break;
  }
  report_unconverged(unconverged);
  return unconverged > 0 ? kExitUnconverged : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum navigation rankings and convergence-time experiments"};
  app.set_version_flag("--version", "qrank 1.0");

  std::string command, graph, gen, alpha_grid, sizes, config_path, neighborhood;
  double q = 0, dt = 0, epsilon = 0, alpha = 0, max_time = 0, eps_tie = 0;
  Index ensemble = 0, stride = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out;
  bool undirected = false, directed_gen = false, matrices = false;

  auto* o_command = app.add_option("--command", command, "sweep | histogram | scaling | toy | report | generate");
  auto* o_config = app.add_option("--config", config_path, "JSON config; flags given on the command line win")
                       ->check(CLI::ExistingFile);
  auto* o_graph = app.add_option("--graph", graph, "Edge-list file")->check(CLI::ExistingFile);
  auto* o_gen = app.add_option("--gen", gen, "Generated graphs: MODEL,N,PARAM with MODEL in {ER, BA}")
                    ->excludes(o_graph);
  auto* o_seed = app.add_option("--seed", seed, "Seed of the first generated network");
  auto* o_grid = app.add_option("--alpha-grid", alpha_grid, "Comma-separated alpha values in (0, 1]");
  auto* o_q = app.add_option("--q", q, "PageRank damping");
  auto* o_ensemble = app.add_option("--ensemble", ensemble, "Generated networks per sweep");
  auto* o_dt = app.add_option("--dt", dt, "RK4 step");
  auto* o_eps = app.add_option("--epsilon", epsilon, "Convergence radius");
  auto* o_max_time = app.add_option("--max-time", max_time, "Abort horizon per integration");
  auto* o_stride = app.add_option("--check-stride", stride, "Steps between convergence checks");
  auto* o_out = app.add_option("--out", out, "Output directory (generate: output edge-list file)");
  auto* o_alpha = app.add_option("--alpha", alpha, "alpha for the toy table and report rankings");
  auto* o_sizes = app.add_option("--sizes", sizes, "Comma-separated network sizes for scaling");
  auto* o_nbhd = app.add_option("--neighborhood", neighborhood, "Neighbour set for report profiles: out | in | total");
  auto* o_tie = app.add_option("--eps-tie", eps_tie, "Score difference below which nodes tie");
  auto* o_threads = app.add_option("--threads", threads, "Worker threads, 0 = all cores");
  auto* o_undirected = app.add_flag("--undirected", undirected, "Read each edge-list line as an undirected link");
  auto* o_directed_gen = app.add_flag("--directed", directed_gen, "Orient generated edges instead of linking both ways");
  app.add_flag("--export-matrices", matrices, "toy/report: also write transition, Google and rho* matrices");

  CLI11_PARSE(app, argc, argv);

  try {
    ExperimentConfig cfg;
    if (*o_config) {
      std::ifstream in(config_path);
      apply_config_json(nlohmann::json::parse(in), cfg);
    }
    if (*o_command) cfg.command = parse_command(command);
    if (*o_graph) {
      cfg.graph_path = graph;
      cfg.gen.reset();
    }
    if (*o_gen) {
      const bool keep_direction = cfg.gen && cfg.gen->directed;
      cfg.gen = parse_gen(gen);
      cfg.gen->directed = keep_direction;
      cfg.graph_path.reset();
    }
    if (*o_directed_gen) {
      if (!cfg.gen) throw PreconditionError("--directed applies to generated graphs (--gen)");
      cfg.gen->directed = true;
    }
    if (*o_undirected) cfg.directed_input = false;
    if (*o_seed) cfg.seed = seed;
    if (*o_grid) cfg.alpha_grid = parse_list<double>(alpha_grid, [](const std::string& s) { return std::stod(s); });
    if (*o_q) cfg.q = q;
    if (*o_ensemble) cfg.ensemble = ensemble;
    if (*o_dt) cfg.integration.dt = dt;
    if (*o_eps) cfg.integration.epsilon = epsilon;
    if (*o_max_time) cfg.integration.max_time = max_time;
    if (*o_stride) cfg.integration.check_stride = stride;
    if (*o_out) cfg.out = out;
    if (*o_alpha) cfg.alpha = alpha;
    if (*o_sizes) cfg.sizes = parse_list<Index>(sizes, [](const std::string& s) { return Index{std::stol(s)}; });
    if (*o_nbhd) {
      nlohmann::json patch = {{"neighborhood", neighborhood}};
      apply_config_json(patch, cfg);
    }
    if (*o_tie) cfg.eps_tie = eps_tie;
    if (*o_threads) cfg.threads = threads;

    const auto start = std::chrono::steady_clock::now();
    const int code = run(cfg, matrices);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    std::cerr << "qrank " << to_string(cfg.command) << ": wrote " << cfg.out << " in " << elapsed.count() << " s\n";
    return code;
  } catch (const ParseError& e) {
    std::cerr << "qrank: parse error, " << e.what() << '\n';
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "qrank: bad config: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "qrank: " << e.what() << '\n';
  }
  return 1;
}
