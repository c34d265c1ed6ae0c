#ifndef QRANK_IO_HPP
#define QRANK_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qrank/experiments.hpp"
#include "qrank/graph.hpp"
#include "qrank/ranking.hpp"
#include "qrank/types.hpp"

namespace qrank {

inline constexpr int kCsvPrecision = 12;
inline constexpr int kSummarySchemaVersion = 1;

/// Comma-separated table; numbers written with 12 significant digits.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
};

CsvTable read_csv(std::istream& in);
void write_csv(std::ostream& out, const CsvTable& table);
std::string format_number(double value);

/// Row per destination node.
void write_matrix_csv(std::ostream& out, const Matrix<double>& m);
/// Long format: i, j, re, im.
void write_density_csv(std::ostream& out, const ComplexMatrix<double>& rho);
/// label, score, position, tie_group
void write_ranking_csv(std::ostream& out, const DirectedGraph& g, const RankResult& r);

CsvTable sweep_csv(const SweepTable& table);
/// One row per network and alpha.
CsvTable network_sweep_csv(const SweepTable& table);
CsvTable histogram_csv(const Histogram& h);
CsvTable scaling_csv(const std::vector<ScalingRow>& rows);
CsvTable toy_csv(const ToyTable& toy);
CsvTable degeneracy_csv(const RankResult& rw, const RankResult& pr, const RankResult& qr);
CsvTable shifts_csv(const Report& report);
CsvTable neighbors_csv(const Report& report);

nlohmann::json config_to_json(const ExperimentConfig& cfg);
/// Fields absent from `j` keep the values already in `cfg`.
void apply_config_json(const nlohmann::json& j, ExperimentConfig& cfg);

nlohmann::json summary_json(const ExperimentConfig& cfg, const SweepTable& table);
nlohmann::json summary_json(const ExperimentConfig& cfg, const Histogram& h);
nlohmann::json summary_json(const ExperimentConfig& cfg, const std::vector<ScalingRow>& rows);
nlohmann::json summary_json(const ExperimentConfig& cfg, const ToyTable& toy);
nlohmann::json summary_json(const ExperimentConfig& cfg, const Report& report);

}  // namespace qrank

#endif  // QRANK_IO_HPP
