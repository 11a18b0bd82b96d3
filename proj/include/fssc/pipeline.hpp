#pragma once

#include "fssc/data.hpp"
#include "fssc/graph.hpp"
#include "fssc/metrics.hpp"
#include "fssc/solvers.hpp"
#include "fssc/spectral.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fssc {

/// Version tag written at the top of every CSV report.
inline constexpr int kReportSchema = 1;

struct RunConfig {
  Algorithm algorithm = Algorithm::fssc;
  double tau = 10.0;
  Index k = 5;
  /// Number of clusters; 0 means "number of classes in the labels".
  Index clusters = 0;
  int repeats = 20;
  std::uint64_t seed = 0;

  /// Matrix file; when empty the synthetic generator is used instead.
  std::string input;
  std::string labels;
  std::optional<MatrixFormat> format;
  SyntheticSpec synthetic;

  bool normalize = false;
  Index pca_dim = 0;
  bool zero_diagonal = true;
  bool l2_normalize = true;
  double rank_eps = 1e-12;
  int kmeans_restarts = 20;
  int kmeans_max_iters = 300;

  std::string out;

  void validate() const;
};

struct SweepConfig {
  RunConfig base;
  std::vector<double> tau_grid;
  std::vector<Index> k_grid;

  void validate() const;
};

/// Reads (or generates) the dataset and applies normalization and PCA.
/// Failures are reported as StageError("load", ...).
Dataset load_dataset(const RunConfig& config);

CoefficientMatrix solve_coefficients(const DataMatrix& y, const RunConfig& config);

struct PipelineResult {
  ClusterAssignment assignment;
  StageTimings timings;
  /// Nodes left without any edge in the affinity graph.
  std::vector<Index> isolated_nodes;
};

/// solve -> sparsify -> affinity -> spectral clustering, timing each stage.
/// Errors are rethrown as StageError naming the failing stage.
PipelineResult cluster_data(const DataMatrix& y, const RunConfig& config, Index clusters,
                            std::uint64_t kmeans_seed);

/// One end-to-end run scored against the dataset's labels.
ScoreReport run_once(const Dataset& data, const RunConfig& config, std::uint64_t kmeans_seed);

/// Loads the configured dataset and runs once with the first repeat seed.
ScoreReport run_once(const RunConfig& config);

/// Seed used by repeat `index` of a configuration.
std::uint64_t repeat_seed(const RunConfig& config, int index);

struct RepeatedResult {
  std::vector<ScoreReport> runs;
  std::vector<std::uint64_t> seeds;
  ScoreSummary summary;
  Index clusters = 0;
};

RepeatedResult run_repeated(const Dataset& data, const RunConfig& config);

struct SweepRow {
  Algorithm algorithm = Algorithm::fssc;
  double tau = 0.0;
  Index k = 0;
  Index clusters = 0;
  int repeats = 0;
  ScoreSummary summary;
};

/// Cartesian grid in (tau, k) order; one row per cell.
std::vector<SweepRow> run_sweep(const Dataset& data, const SweepConfig& config);

/// Per-repeat report: schema line, header, one row per repeat.
void write_runs_csv(std::ostream& out, const RunConfig& config, const RepeatedResult& result);

/// Sweep report: schema line, header, one row per grid cell.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Human-readable summary table.
void write_summary(std::ostream& out, const ScoreSummary& summary);

}  // namespace fssc
