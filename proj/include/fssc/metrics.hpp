#pragma once

#include "fssc/types.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace fssc {

/// Reference labels, densely numbered in [0, num_classes).
struct GroundTruth {
  std::vector<int> labels;
  int num_classes = 0;

  /// Renumbers arbitrary nonnegative labels to [0, u) in ascending order of
  /// the original values.
  static GroundTruth from_labels(std::span<const int> raw);
};

/// Minimum-cost assignment of rows to columns for a rows <= cols cost
/// matrix. Returns, for each row, the column it is matched to.
std::vector<Index> hungarian(const Matrix& cost);

/// Fraction of samples that agree under the best one-to-one matching between
/// predicted and true labels. Labels must be nonnegative.
double clustering_accuracy(std::span<const int> predicted, std::span<const int> truth);

/// I(a; b) / sqrt(H(a) H(b)). Two single-cluster partitions score 1; a
/// single-cluster partition against a non-trivial one scores 0.
double nmi(std::span<const int> predicted, std::span<const int> truth);

struct StageTimings {
  double solve_seconds = 0.0;
  double graph_seconds = 0.0;
  double spectral_seconds = 0.0;
};

struct ScoreReport {
  double accuracy = 0.0;
  double nmi = 0.0;
  double error = 1.0;  // always 1 - accuracy
  double runtime_seconds = 0.0;
  StageTimings stages;
};

ScoreReport score(std::span<const int> predicted, const GroundTruth& truth);

struct MetricSummary {
  double mean = 0.0;
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
};

MetricSummary summarize(std::span<const double> values);

struct ScoreSummary {
  std::size_t count = 0;
  MetricSummary accuracy;
  MetricSummary nmi;
  MetricSummary error;
  MetricSummary runtime;
  MetricSummary solve;
  MetricSummary graph;
  MetricSummary spectral;
};

/// Mean, median, min and max of every metric. Throws InputError on an
/// empty sequence.
ScoreSummary aggregate(std::span<const ScoreReport> reports);

}  // namespace fssc
