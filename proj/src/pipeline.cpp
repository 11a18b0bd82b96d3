#include "fssc/pipeline.hpp"

#include "fssc/error.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <iomanip>
#include <ostream>
#include <string>

namespace fssc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename F>
auto in_stage(const char* stage, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

std::string fmt(double value) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

Index resolve_clusters(const RunConfig& config, const Dataset& data) {
  return config.clusters > 0 ? config.clusters : data.truth.num_classes;
}

}  // namespace

void RunConfig::validate() const {
  SolverParams{tau, rank_eps}.validate();
  if (k < 1) throw ParameterError("k must be positive");
  if (clusters < 0) throw ParameterError("clusters must be nonnegative (0 = from labels)");
  if (repeats < 1) throw ParameterError("repeats must be at least 1");
  if (pca_dim < 0) throw ParameterError("pca dimension must be nonnegative (0 = off)");
  if (kmeans_restarts < 1) throw ParameterError("kmeans restarts must be positive");
  if (kmeans_max_iters < 1) throw ParameterError("kmeans iterations must be positive");
  if (!input.empty() && labels.empty()) {
    throw ParameterError("a label file is required with --input");
  }
  if (input.empty()) synthetic.validate();
}

void SweepConfig::validate() const {
  base.validate();
  if (tau_grid.empty()) throw ParameterError("tau grid is empty");
  if (k_grid.empty()) throw ParameterError("k grid is empty");
  for (double t : tau_grid) SolverParams{t, base.rank_eps}.validate();
  for (Index k : k_grid) {
    if (k < 1) throw ParameterError("k grid values must be positive");
  }
}

Dataset load_dataset(const RunConfig& config) {
  return in_stage("load", [&] {
    config.validate();
    Dataset data = [&] {
      if (config.input.empty()) return generate_synthetic(config.synthetic);
      const MatrixFormat format = config.format.value_or(guess_matrix_format(config.input));
      DataMatrix matrix = load_matrix(config.input, format);
      GroundTruth truth = load_labels(config.labels);
      if (static_cast<Index>(truth.labels.size()) != matrix.samples()) {
        throw InputError("label count " + std::to_string(truth.labels.size()) +
                         " does not match sample count " + std::to_string(matrix.samples()));
      }
      return Dataset{std::move(matrix), std::move(truth), config.input};
    }();
    if (config.normalize) data.matrix = normalize_columns(data.matrix);
    if (config.pca_dim > 0) data.matrix = pca_project(data.matrix, config.pca_dim);
    return data;
  });
}

CoefficientMatrix solve_coefficients(const DataMatrix& y, const RunConfig& config) {
  const SolverParams params{config.tau, config.rank_eps};
  switch (config.algorithm) {
    case Algorithm::fssc:
      return fssc_coefficients(y, params);
    case Algorithm::lrsc:
      return lrsc_coefficients(y, params);
    case Algorithm::l2graph:
      return l2graph_coefficients(y, params, config.l2_normalize);
  }
  throw ParameterError("unknown algorithm");
}

PipelineResult cluster_data(const DataMatrix& y, const RunConfig& config, Index clusters,
                            std::uint64_t kmeans_seed) {
  PipelineResult result;

  auto start = Clock::now();
  const CoefficientMatrix c = in_stage("solve", [&] { return solve_coefficients(y, config); });
  result.timings.solve_seconds = seconds_since(start);

  start = Clock::now();
  const AffinityGraph graph = in_stage("graph", [&] {
    const SparsifyParams sparsify{config.k, config.zero_diagonal};
    return build_affinity(sparsify_topk(c, sparsify));
  });
  result.timings.graph_seconds = seconds_since(start);
  result.isolated_nodes = graph.isolated_nodes;

  start = Clock::now();
  result.assignment = in_stage("spectral", [&] {
    SpectralParams params;
    params.num_clusters = clusters;
    params.kmeans_restarts = config.kmeans_restarts;
    params.kmeans_max_iters = config.kmeans_max_iters;
    params.seed = kmeans_seed;
    return spectral_cluster(graph, params);
  });
  result.timings.spectral_seconds = seconds_since(start);
  return result;
}

ScoreReport run_once(const Dataset& data, const RunConfig& config, std::uint64_t kmeans_seed) {
  const PipelineResult result =
      cluster_data(data.matrix, config, resolve_clusters(config, data), kmeans_seed);
  ScoreReport report = in_stage("score", [&] { return score(result.assignment.labels, data.truth); });
  report.stages = result.timings;
  report.runtime_seconds = result.timings.solve_seconds + result.timings.graph_seconds +
                           result.timings.spectral_seconds;
  return report;
}

ScoreReport run_once(const RunConfig& config) {
  const Dataset data = load_dataset(config);
  return run_once(data, config, repeat_seed(config, 0));
}

std::uint64_t repeat_seed(const RunConfig& config, int index) {
  return derive_seed(config.seed, static_cast<std::uint64_t>(index));
}

RepeatedResult run_repeated(const Dataset& data, const RunConfig& config) {
  config.validate();
  RepeatedResult result;
  result.clusters = resolve_clusters(config, data);
  result.runs.reserve(static_cast<std::size_t>(config.repeats));
  for (int r = 0; r < config.repeats; ++r) {
    const std::uint64_t seed = repeat_seed(config, r);
    result.seeds.push_back(seed);
    result.runs.push_back(run_once(data, config, seed));
  }
  result.summary = aggregate(result.runs);
  return result;
}

std::vector<SweepRow> run_sweep(const Dataset& data, const SweepConfig& config) {
  config.validate();
  std::vector<SweepRow> rows;
  rows.reserve(config.tau_grid.size() * config.k_grid.size());
  for (double tau : config.tau_grid) {
    for (Index k : config.k_grid) {
      RunConfig cell = config.base;
      cell.tau = tau;
      cell.k = k;
      const RepeatedResult result = run_repeated(data, cell);
      rows.push_back(SweepRow{cell.algorithm, tau, k, result.clusters, cell.repeats,
                              result.summary});
    }
  }
  return rows;
}

void write_runs_csv(std::ostream& out, const RunConfig& config, const RepeatedResult& result) {
  out << "# schema=" << kReportSchema << '\n';
  out << "algorithm,tau,k,u,repeat,seed,accuracy,nmi,error,time_s,solve_s,graph_s,spectral_s\n";
  for (std::size_t r = 0; r < result.runs.size(); ++r) {
    const ScoreReport& run = result.runs[r];
    out << to_string(config.algorithm) << ',' << fmt(config.tau) << ',' << config.k << ','
        << result.clusters << ',' << r << ',' << result.seeds[r] << ',' << fmt(run.accuracy)
        << ',' << fmt(run.nmi) << ',' << fmt(run.error) << ',' << fmt(run.runtime_seconds) << ','
        << fmt(run.stages.solve_seconds) << ',' << fmt(run.stages.graph_seconds) << ','
        << fmt(run.stages.spectral_seconds) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "# schema=" << kReportSchema << '\n';
  out << "algorithm,tau,k,u,repeats,acc_mean,nmi_mean,err_mean,time_mean_s,"
         "acc_median,err_median,solve_mean_s,graph_mean_s,spectral_mean_s\n";
  for (const SweepRow& row : rows) {
    const ScoreSummary& s = row.summary;
    out << to_string(row.algorithm) << ',' << fmt(row.tau) << ',' << row.k << ','
        << row.clusters << ',' << row.repeats << ',' << fmt(s.accuracy.mean) << ','
        << fmt(s.nmi.mean) << ',' << fmt(s.error.mean) << ',' << fmt(s.runtime.mean) << ','
        << fmt(s.accuracy.median) << ',' << fmt(s.error.median) << ',' << fmt(s.solve.mean)
        << ',' << fmt(s.graph.mean) << ',' << fmt(s.spectral.mean) << '\n';
  }
}

void write_summary(std::ostream& out, const ScoreSummary& summary) {
  const auto line = [&](const char* name, const MetricSummary& m) {
    out << std::left << std::setw(12) << name << std::right << std::fixed << std::setprecision(6)
        << std::setw(12) << m.mean << std::setw(12) << m.median << std::setw(12) << m.min
        << std::setw(12) << m.max << '\n';
  };
  const auto flags = out.flags();
  out << "runs: " << summary.count << '\n';
  out << std::left << std::setw(12) << "metric" << std::right << std::setw(12) << "mean"
      << std::setw(12) << "median" << std::setw(12) << "min" << std::setw(12) << "max" << '\n';
  line("accuracy", summary.accuracy);
  line("nmi", summary.nmi);
  line("error", summary.error);
  line("time_s", summary.runtime);
  line("solve_s", summary.solve);
  line("graph_s", summary.graph);
  line("spectral_s", summary.spectral);
  out.flags(flags);
}

}  // namespace fssc
