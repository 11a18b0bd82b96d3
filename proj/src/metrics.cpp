#include "fssc/metrics.hpp"

#include "fssc/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace fssc {

namespace {

std::vector<int> densify(std::span<const int> raw, int& count) {
  std::map<int, int> index;
  for (int label : raw) {
    if (label < 0) {
      throw InputError("labels must be nonnegative, got " + std::to_string(label));
    }
    index.emplace(label, 0);
  }
  int next = 0;
  for (auto& [label, id] : index) id = next++;
  count = next;
  std::vector<int> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) out[i] = index.at(raw[i]);
  return out;
}

struct Contingency {
  Matrix counts;
  double total = 0.0;
};

Contingency contingency(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) {
    throw InputError("label sequences differ in length: " + std::to_string(a.size()) +
                     " vs " + std::to_string(b.size()));
  }
  if (a.empty()) throw InputError("label sequences are empty");
  int ka = 0;
  int kb = 0;
  const std::vector<int> da = densify(a, ka);
  const std::vector<int> db = densify(b, kb);
  Contingency table;
  table.counts = Matrix::Zero(ka, kb);
  for (std::size_t i = 0; i < da.size(); ++i) table.counts(da[i], db[i]) += 1.0;
  table.total = static_cast<double>(a.size());
  return table;
}

double entropy(const Vector& counts, double total) {
  double h = 0.0;
  for (Index i = 0; i < counts.size(); ++i) {
    if (counts(i) > 0.0) {
      const double p = counts(i) / total;
      h -= p * std::log(p);
    }
  }
  return h;
}

}  // namespace

GroundTruth GroundTruth::from_labels(std::span<const int> raw) {
  GroundTruth truth;
  truth.labels = densify(raw, truth.num_classes);
  return truth;
}

std::vector<Index> hungarian(const Matrix& cost) {
  const Index rows = cost.rows();
  const Index cols = cost.cols();
  if (rows > cols) throw InputError("hungarian: more rows than columns");
  if (rows == 0) return {};

  // Potentials-based O(rows^2 * cols) variant; index 0 is a sentinel.
  const double inf = std::numeric_limits<double>::infinity();
  Vector row_pot = Vector::Zero(rows + 1);
  Vector col_pot = Vector::Zero(cols + 1);
  std::vector<Index> match(static_cast<std::size_t>(cols + 1), 0);  // column -> row
  std::vector<Index> way(static_cast<std::size_t>(cols + 1), 0);

  for (Index r = 1; r <= rows; ++r) {
    match[0] = r;
    Index col = 0;
    Vector min_slack = Vector::Constant(cols + 1, inf);
    std::vector<bool> used(static_cast<std::size_t>(cols + 1), false);
    do {
      used[static_cast<std::size_t>(col)] = true;
      const Index row = match[static_cast<std::size_t>(col)];
      double delta = inf;
      Index next = 0;
      for (Index j = 1; j <= cols; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const double slack = cost(row - 1, j - 1) - row_pot(row) - col_pot(j);
        if (slack < min_slack(j)) {
          min_slack(j) = slack;
          way[static_cast<std::size_t>(j)] = col;
        }
        if (min_slack(j) < delta) {
          delta = min_slack(j);
          next = j;
        }
      }
      for (Index j = 0; j <= cols; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          row_pot(match[static_cast<std::size_t>(j)]) += delta;
          col_pot(j) -= delta;
        } else {
          min_slack(j) -= delta;
        }
      }
      col = next;
    } while (match[static_cast<std::size_t>(col)] != 0);
    do {
      const Index prev = way[static_cast<std::size_t>(col)];
      match[static_cast<std::size_t>(col)] = match[static_cast<std::size_t>(prev)];
      col = prev;
    } while (col != 0);
  }

  std::vector<Index> assignment(static_cast<std::size_t>(rows), -1);
  for (Index j = 1; j <= cols; ++j) {
    const Index row = match[static_cast<std::size_t>(j)];
    if (row != 0) assignment[static_cast<std::size_t>(row - 1)] = j - 1;
  }
  return assignment;
}

double clustering_accuracy(std::span<const int> predicted, std::span<const int> truth) {
  const Contingency table = contingency(predicted, truth);
  const Index size = std::max(table.counts.rows(), table.counts.cols());
  Matrix cost = Matrix::Zero(size, size);
  cost.topLeftCorner(table.counts.rows(), table.counts.cols()) = -table.counts;

  const std::vector<Index> match = hungarian(cost);
  double agree = 0.0;
  for (Index r = 0; r < table.counts.rows(); ++r) {
    const Index c = match[static_cast<std::size_t>(r)];
    if (c < table.counts.cols()) agree += table.counts(r, c);
  }
  return agree / table.total;
}

double nmi(std::span<const int> predicted, std::span<const int> truth) {
  const Contingency table = contingency(predicted, truth);
  const Vector row_sums = table.counts.rowwise().sum();
  const Vector col_sums = table.counts.colwise().sum().transpose();
  const double h_pred = entropy(row_sums, table.total);
  const double h_truth = entropy(col_sums, table.total);
  if (h_pred == 0.0 && h_truth == 0.0) return 1.0;
  if (h_pred == 0.0 || h_truth == 0.0) return 0.0;

  double mutual = 0.0;
  for (Index i = 0; i < table.counts.rows(); ++i) {
    for (Index j = 0; j < table.counts.cols(); ++j) {
      const double nij = table.counts(i, j);
      if (nij > 0.0) {
        mutual += nij / table.total *
                  std::log(nij * table.total / (row_sums(i) * col_sums(j)));
      }
    }
  }
  return std::clamp(mutual / std::sqrt(h_pred * h_truth), 0.0, 1.0);
}

ScoreReport score(std::span<const int> predicted, const GroundTruth& truth) {
  ScoreReport report;
  report.accuracy = clustering_accuracy(predicted, truth.labels);
  report.nmi = nmi(predicted, truth.labels);
  report.error = 1.0 - report.accuracy;
  return report;
}

MetricSummary summarize(std::span<const double> values) {
  if (values.empty()) throw InputError("cannot summarize an empty sequence");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  MetricSummary s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  const std::size_t mid = sorted.size() / 2;
  s.median = sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  s.min = sorted.front();
  s.max = sorted.back();
  return s;
}

ScoreSummary aggregate(std::span<const ScoreReport> reports) {
  if (reports.empty()) throw InputError("cannot aggregate an empty list of reports");
  const auto column = [&](auto field) {
    std::vector<double> values;
    values.reserve(reports.size());
    for (const ScoreReport& r : reports) values.push_back(field(r));
    return summarize(values);
  };
  ScoreSummary out;
  out.count = reports.size();
  out.accuracy = column([](const ScoreReport& r) { return r.accuracy; });
  out.nmi = column([](const ScoreReport& r) { return r.nmi; });
  out.error = column([](const ScoreReport& r) { return r.error; });
  out.runtime = column([](const ScoreReport& r) { return r.runtime_seconds; });
  out.solve = column([](const ScoreReport& r) { return r.stages.solve_seconds; });
  out.graph = column([](const ScoreReport& r) { return r.stages.graph_seconds; });
  out.spectral = column([](const ScoreReport& r) { return r.stages.spectral_seconds; });
  return out;
}

}  // namespace fssc
