#include "qrank/io.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "qrank/errors.hpp"

namespace qrank {

using nlohmann::json;

namespace {

bool needs_quotes(const std::string& field) {
  return field.find_first_of(",\"\n\r") != std::string::npos;
}

std::string quote(const std::string& field) {
  if (!needs_quotes(field)) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> split_record(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  if (quoted) throw ParseError(line_no, "unterminated quoted CSV field");
  fields.push_back(std::move(field));
  return fields;
}

std::string neighborhood_name(Neighborhood n) {
  switch (n) {
    case Neighborhood::Out:
      return "out";
    case Neighborhood::In:
      return "in";
    case Neighborhood::Total:
      break;
  }
  return "total";
}

Neighborhood parse_neighborhood(const std::string& name) {
  if (name == "out") return Neighborhood::Out;
  if (name == "in") return Neighborhood::In;
  if (name == "total") return Neighborhood::Total;
  throw PreconditionError("unknown neighbourhood '" + name + "' (expected out, in or total)");
}

// JSON has no NaN/inf; those become null.
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json ranking_json(const DirectedGraph& g, const RankResult& r) {
  json groups = json::array();
  for (const auto& group : r.tie_groups) {
    json labels = json::array();
    for (Index node : group) labels.push_back(g.label(node));
    groups.push_back(labels);
  }
  json order = json::array();
  for (Index node : r.order) order.push_back(g.label(node));
  return {{"order", order}, {"tie_groups", groups}, {"distinct_positions", r.distinct_positions()}};
}

json degeneracy_json(const RankResult& r) {
  json profile = json::array();
  for (const auto& e : degeneracy_profile(r)) profile.push_back({{"position", e.position}, {"count", e.count}});
  return profile;
}

json base_summary(const ExperimentConfig& cfg) {
  return {{"schema_version", kSummarySchemaVersion}, {"command", to_string(cfg.command)}, {"config", config_to_json(cfg)}};
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw PreconditionError("CSV has no column '" + name + "'");
}

double CsvTable::number(std::size_t row, const std::string& name) const {
  return std::stod(rows.at(row).at(column(name)));
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto fields = split_record(line, line_no);
    if (table.header.empty()) {
      table.header = std::move(fields);
      continue;
    }
    if (fields.size() != table.header.size())
      throw ParseError(line_no, "expected " + std::to_string(table.header.size()) + " CSV fields, found " +
                                    std::to_string(fields.size()));
    table.rows.push_back(std::move(fields));
  }
  return table;
}

void write_csv(std::ostream& out, const CsvTable& table) {
  auto record = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << quote(fields[i]);
    out << '\n';
  };
  record(table.header);
  for (const auto& row : table.rows) record(row);
}

std::string format_number(double value) {
  std::ostringstream s;
  s << std::setprecision(kCsvPrecision) << value;
  return s.str();
}

void write_matrix_csv(std::ostream& out, const Matrix<double>& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << format_number(m(i, j));
    out << '\n';
  }
}

void write_density_csv(std::ostream& out, const ComplexMatrix<double>& rho) {
  out << "i,j,re,im\n";
  for (Index i = 0; i < rho.rows(); ++i)
    for (Index j = 0; j < rho.cols(); ++j)
      out << i << ',' << j << ',' << format_number(rho(i, j).real()) << ',' << format_number(rho(i, j).imag()) << '\n';
}

void write_ranking_csv(std::ostream& out, const DirectedGraph& g, const RankResult& r) {
  CsvTable t{{"label", "score", "position", "tie_group"}, {}};
  for (Index node : r.order) {
    const auto i = static_cast<std::size_t>(node);
    t.rows.push_back({g.label(node), format_number(r.scores[i]), std::to_string(r.positions[i]),
                      std::to_string(r.group_of(node))});
  }
  write_csv(out, t);
}

CsvTable sweep_csv(const SweepTable& table) {
  CsvTable t{{"alpha", "tau_qr", "tau_pr", "ratio", "ratio_std", "kendall", "unconverged"}, {}};
  for (const auto& r : table.rows)
    t.rows.push_back({format_number(r.alpha), format_number(r.tau_qr), format_number(r.tau_pr), format_number(r.ratio),
                      format_number(r.ratio_std), format_number(r.kendall), std::to_string(r.unconverged)});
  return t;
}

CsvTable network_sweep_csv(const SweepTable& table) {
  CsvTable t{{"network", "alpha", "tau_qr", "tau_pr", "ratio", "kendall", "converged"}, {}};
  for (std::size_t net = 0; net < table.networks.size(); ++net) {
    const auto& s = table.networks[net];
    for (const auto& p : s.points)
      t.rows.push_back({std::to_string(net), format_number(p.alpha), format_number(p.tau_qr), format_number(s.tau_pr),
                        format_number(p.ratio), format_number(p.kendall),
                        (p.converged && s.pr_converged) ? "1" : "0"});
  }
  return t;
}

CsvTable histogram_csv(const Histogram& h) {
  CsvTable t{{"bin_lo", "bin_hi", "count", "probability"}, {}};
  for (std::size_t b = 0; b < h.counts.size(); ++b)
    t.rows.push_back({format_number(h.edges[b]), format_number(h.edges[b + 1]), std::to_string(h.counts[b]),
                      format_number(h.probability(b))});
  return t;
}

CsvTable scaling_csv(const std::vector<ScalingRow>& rows) {
  CsvTable t{{"n", "alpha_opt", "ratio", "unconverged"}, {}};
  for (const auto& r : rows)
    t.rows.push_back(
        {std::to_string(r.n), format_number(r.alpha_opt), format_number(r.ratio), std::to_string(r.unconverged)});
  return t;
}

CsvTable toy_csv(const ToyTable& toy) {
  CsvTable t{{"label", "rw_score", "rw_position", "pr_score", "pr_position", "qr_score", "qr_position"}, {}};
  for (Index i = 0; i < toy.graph.size(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    t.rows.push_back({toy.graph.label(i), format_number(toy.rw.scores[k]), std::to_string(toy.rw.positions[k]),
                      format_number(toy.pr.scores[k]), std::to_string(toy.pr.positions[k]),
                      format_number(toy.qr.scores[k]), std::to_string(toy.qr.positions[k])});
  }
  return t;
}

CsvTable degeneracy_csv(const RankResult& rw, const RankResult& pr, const RankResult& qr) {
  CsvTable t{{"method", "position", "count"}, {}};
  for (const auto& [name, r] : {std::pair<const char*, const RankResult*>{"RW", &rw}, {"PR", &pr}, {"QR", &qr}})
    for (const auto& e : degeneracy_profile(*r))
      t.rows.push_back({name, std::to_string(e.position), std::to_string(e.count)});
  return t;
}

CsvTable shifts_csv(const Report& report) {
  CsvTable t{{"label", "qr_position", "pr_position", "shift"}, {}};
  for (Index node : report.qr.order) {
    const auto i = static_cast<std::size_t>(node);
    t.rows.push_back({report.graph.label(node), std::to_string(report.qr.positions[i]),
                      std::to_string(report.pr.positions[i]), std::to_string(report.shifts[i])});
  }
  return t;
}

CsvTable neighbors_csv(const Report& report) {
  CsvTable t{{"label", "qr_score", "qr_nn", "k_nn", "ratio", "shift", "shift_sign"}, {}};
  for (Index i = 0; i < report.graph.size(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    const auto& s = report.neighbors[k];
    if (!s.present) continue;
    const Index shift = report.shifts[k];
    t.rows.push_back({report.graph.label(i), format_number(report.qr.scores[k]), format_number(s.mean_score),
                      format_number(s.mean_degree), format_number(s.ratio), std::to_string(shift),
                      shift > 0 ? "+" : (shift < 0 ? "-" : "0")});
  }
  return t;
}

json config_to_json(const ExperimentConfig& cfg) {
  json j = {{"command", to_string(cfg.command)},
            {"directed", cfg.directed_input},
            {"alpha_grid", cfg.alpha_grid},
            {"q", cfg.q},
            {"ensemble", cfg.ensemble},
            {"seed", cfg.seed},
            {"dt", cfg.integration.dt},
            {"epsilon", cfg.integration.epsilon},
            {"max_time", cfg.integration.max_time},
            {"check_stride", cfg.integration.check_stride},
            {"settle_factor", cfg.integration.settle_factor},
            {"out", cfg.out},
            {"alpha", cfg.alpha},
            {"sizes", cfg.sizes},
            {"neighborhood", neighborhood_name(cfg.neighborhood)},
            {"eps_tie", cfg.eps_tie},
            {"threads", cfg.threads}};
  if (cfg.graph_path) j["graph"] = *cfg.graph_path;
  if (cfg.gen)
    j["gen"] = {{"model", to_string(cfg.gen->model)},
                {"n", cfg.gen->n},
                {"param", cfg.gen->param},
                {"directed", cfg.gen->directed}};
  return j;
}

void apply_config_json(const json& j, ExperimentConfig& cfg) {
  if (!j.is_object()) throw PreconditionError("config must be a JSON object");
  if (j.contains("command")) cfg.command = parse_command(j.at("command").get<std::string>());
  if (j.contains("graph")) cfg.graph_path = j.at("graph").get<std::string>();
  if (j.contains("directed")) cfg.directed_input = j.at("directed").get<bool>();
  if (j.contains("gen")) {
    const auto& g = j.at("gen");
    GraphGenSpec spec = cfg.gen.value_or(GraphGenSpec{});
    if (g.contains("model")) spec.model = parse_graph_model(g.at("model").get<std::string>());
    if (g.contains("n")) spec.n = g.at("n").get<Index>();
    if (g.contains("param")) spec.param = g.at("param").get<double>();
    if (g.contains("directed")) spec.directed = g.at("directed").get<bool>();
    cfg.gen = spec;
  }
  if (j.contains("alpha_grid")) cfg.alpha_grid = j.at("alpha_grid").get<std::vector<double>>();
  if (j.contains("q")) cfg.q = j.at("q").get<double>();
  if (j.contains("ensemble")) cfg.ensemble = j.at("ensemble").get<Index>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("dt")) cfg.integration.dt = j.at("dt").get<double>();
  if (j.contains("epsilon")) cfg.integration.epsilon = j.at("epsilon").get<double>();
  if (j.contains("max_time")) cfg.integration.max_time = j.at("max_time").get<double>();
  if (j.contains("check_stride")) cfg.integration.check_stride = j.at("check_stride").get<Index>();
  if (j.contains("settle_factor")) cfg.integration.settle_factor = j.at("settle_factor").get<double>();
  if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
  if (j.contains("alpha")) cfg.alpha = j.at("alpha").get<double>();
  if (j.contains("sizes")) cfg.sizes = j.at("sizes").get<std::vector<Index>>();
  if (j.contains("neighborhood")) cfg.neighborhood = parse_neighborhood(j.at("neighborhood").get<std::string>());
  if (j.contains("eps_tie")) cfg.eps_tie = j.at("eps_tie").get<double>();
  if (j.contains("threads")) cfg.threads = j.at("threads").get<unsigned>();
}

json summary_json(const ExperimentConfig& cfg, const SweepTable& table) {
  json j = base_summary(cfg);
  json per_network = json::array();
  for (const auto& s : table.networks)
    per_network.push_back({{"n", s.n},
                           {"tau_pr", s.tau_pr},
                           {"alpha_opt", s.alpha_opt},
                           {"ratio_opt", number_or_null(s.ratio_opt)},
                           {"converged", s.all_converged()}});
  j["alpha_opt"] = table.alpha_opt;
  j["min_ratio"] = number_or_null(table.min_ratio);
  j["interior_minimum"] = table.interior_minimum();
  j["all_converged"] = table.all_converged();
  j["networks"] = per_network;
  return j;
}

json summary_json(const ExperimentConfig& cfg, const Histogram& h) {
  json j = base_summary(cfg);
  j["alpha_opts"] = h.alpha_opts;
  j["edges"] = h.edges;
  j["counts"] = h.counts;
  return j;
}

json summary_json(const ExperimentConfig& cfg, const std::vector<ScalingRow>& rows) {
  json j = base_summary(cfg);
  json out = json::array();
  for (const auto& r : rows)
    out.push_back({{"n", r.n}, {"alpha_opt", r.alpha_opt}, {"ratio", number_or_null(r.ratio)}, {"unconverged", r.unconverged}});
  j["rows"] = out;
  return j;
}

json summary_json(const ExperimentConfig& cfg, const ToyTable& toy) {
  json j = base_summary(cfg);
  j["alpha"] = toy.alpha;
  j["converged"] = toy.converged;
  j["rw"] = ranking_json(toy.graph, toy.rw);
  j["pr"] = ranking_json(toy.graph, toy.pr);
  j["qr"] = ranking_json(toy.graph, toy.qr);
  return j;
}

json summary_json(const ExperimentConfig& cfg, const Report& report) {
  json j = summary_json(cfg, report.sweep);
  j["command"] = to_string(Command::Report);
  j["n"] = report.graph.size();
  j["edges"] = report.graph.edge_count();
  j["alpha"] = report.alpha;
  j["qr_converged"] = report.qr_converged;
  j["degeneracy"] = {{"RW", degeneracy_json(report.rw)}, {"PR", degeneracy_json(report.pr)}, {"QR", degeneracy_json(report.qr)}};
  j["distinct_positions"] = {{"RW", report.rw.distinct_positions()},
                             {"PR", report.pr.distinct_positions()},
                             {"QR", report.qr.distinct_positions()}};
  j["kendall_qr_pr"] = kendall_concordance(report.qr, report.pr);
  return j;
}

}  // namespace qrank
