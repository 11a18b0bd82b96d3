#include "fssc/spectral.hpp"

#include "fssc/error.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace fssc {

void SpectralParams::validate(Index n) const {
  if (num_clusters < 1 || num_clusters > n) {
    throw ParameterError("number of clusters must lie in [1, " + std::to_string(n) +
                         "], got " + std::to_string(num_clusters));
  }
  if (kmeans_restarts < 1) throw ParameterError("kmeans_restarts must be positive");
  if (kmeans_max_iters < 1) throw ParameterError("kmeans_max_iters must be positive");
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Matrix normalized_laplacian(const AffinityGraph& w) {
  const Index n = w.size();
  const Vector degree = w.values.rowwise().sum();
  Vector inv_sqrt = Vector::Zero(n);
  for (Index i = 0; i < n; ++i) {
    if (degree(i) > 0.0) inv_sqrt(i) = 1.0 / std::sqrt(degree(i));
  }
  Matrix laplacian = -(inv_sqrt.asDiagonal() * w.values * inv_sqrt.asDiagonal());
  laplacian.diagonal().array() += 1.0;
  // Round-off in the product can break exact symmetry.
  laplacian = (0.5 * (laplacian + laplacian.transpose())).eval();
  return laplacian;
}

Matrix spectral_embed(const AffinityGraph& w, Index u) {
  const Index n = w.size();
  if (u < 1 || u > n) {
    throw ParameterError("embedding dimension must lie in [1, " + std::to_string(n) + "]");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(normalized_laplacian(w));
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric eigensolver failed on the " + std::to_string(n) + "x" +
                         std::to_string(n) + " normalized Laplacian (info=" +
                         std::to_string(static_cast<int>(solver.info())) + ")");
  }
  Matrix embedding = solver.eigenvectors().leftCols(u);
  for (Index i = 0; i < n; ++i) {
    const double norm = embedding.row(i).norm();
    if (norm > 0.0) embedding.row(i) /= norm;
  }
  return embedding;
}

namespace {

struct KmeansRun {
  std::vector<int> labels;
  double inertia = std::numeric_limits<double>::infinity();
};

Index sample_weighted(const Vector& weights, std::mt19937_64& rng) {
  const double total = weights.sum();
  if (!(total > 0.0)) {
    std::uniform_int_distribution<Index> pick(0, weights.size() - 1);
    return pick(rng);
  }
  std::uniform_real_distribution<double> uniform(0.0, total);
  const double target = uniform(rng);
  double acc = 0.0;
  for (Index i = 0; i < weights.size(); ++i) {
    acc += weights(i);
    if (target < acc && weights(i) > 0.0) return i;
  }
  for (Index i = weights.size() - 1; i >= 0; --i) {
    if (weights(i) > 0.0) return i;
  }
  return 0;
}

Matrix seed_centers(const Matrix& points, Index k, std::mt19937_64& rng) {
  const Index n = points.rows();
  Matrix centers(k, points.cols());
  std::uniform_int_distribution<Index> first(0, n - 1);
  centers.row(0) = points.row(first(rng));
  Vector nearest = (points.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (Index c = 1; c < k; ++c) {
    centers.row(c) = points.row(sample_weighted(nearest, rng));
    const Vector dist = (points.rowwise() - centers.row(c)).rowwise().squaredNorm();
    nearest = nearest.cwiseMin(dist);
  }
  return centers;
}

// Nearest center for each point; ties go to the lower center index.
double assign(const Matrix& points, const Matrix& centers, std::vector<int>& labels,
              Vector& distance) {
  double inertia = 0.0;
  for (Index i = 0; i < points.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    int best_c = 0;
    for (Index c = 0; c < centers.rows(); ++c) {
      const double d = (points.row(i) - centers.row(c)).squaredNorm();
      if (d < best) {
        best = d;
        best_c = static_cast<int>(c);
      }
    }
    labels[static_cast<std::size_t>(i)] = best_c;
    distance(i) = best;
    inertia += best;
  }
  return inertia;
}

KmeansRun lloyd(const Matrix& points, Index k, int max_iters, std::mt19937_64& rng) {
  const Index n = points.rows();
  const Index dim = points.cols();
  Matrix centers = seed_centers(points, k, rng);
  std::vector<int> labels(static_cast<std::size_t>(n), -1);
  std::vector<int> previous;
  Vector distance(n);
  Vector counts(k);

  for (int iter = 0; iter < max_iters; ++iter) {
    previous = labels;
    assign(points, centers, labels, distance);

    centers.setZero(k, dim);
    counts.setZero();
    for (Index i = 0; i < n; ++i) {
      const int c = labels[static_cast<std::size_t>(i)];
      centers.row(c) += points.row(i);
      counts(c) += 1.0;
    }
    for (Index c = 0; c < k; ++c) {
      if (counts(c) > 0.0) centers.row(c) /= counts(c);
    }
    for (Index c = 0; c < k; ++c) {
      if (counts(c) > 0.0) continue;
      // Empty cluster: move the point farthest from its own center here.
      for (Index i = 0; i < n; ++i) {
        const int own = labels[static_cast<std::size_t>(i)];
        distance(i) = counts(own) > 1.0 ? (points.row(i) - centers.row(own)).squaredNorm() : 0.0;
      }
      Index farthest = 0;
      distance.maxCoeff(&farthest);
      if (!(distance(farthest) > 0.0)) continue;
      const int own = labels[static_cast<std::size_t>(farthest)];
      labels[static_cast<std::size_t>(farthest)] = static_cast<int>(c);
      counts(own) -= 1.0;
      counts(c) = 1.0;
      centers.row(c) = points.row(farthest);
    }
    if (labels == previous) break;
  }

  KmeansRun run;
  run.inertia = assign(points, centers, labels, distance);
  run.labels = std::move(labels);
  return run;
}

std::vector<int> relabel_by_first_appearance(const std::vector<int>& labels, Index k) {
  std::vector<int> mapping(static_cast<std::size_t>(k), -1);
  int next = 0;
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    int& m = mapping[static_cast<std::size_t>(labels[i])];
    if (m < 0) m = next++;
    out[i] = m;
  }
  return out;
}

}  // namespace

ClusterAssignment kmeans(const Matrix& points, const SpectralParams& params) {
  const Index n = points.rows();
  if (n < 1) throw InputError("k-means needs at least one point");
  params.validate(n);
  if (!points.allFinite()) throw InputError("k-means points must be finite");

  KmeansRun best;
  for (int r = 0; r < params.kmeans_restarts; ++r) {
    std::mt19937_64 rng(derive_seed(params.seed, static_cast<std::uint64_t>(r)));
    KmeansRun run = lloyd(points, params.num_clusters, params.kmeans_max_iters, rng);
    if (run.inertia < best.inertia) best = std::move(run);
  }

  ClusterAssignment out;
  out.labels = relabel_by_first_appearance(best.labels, params.num_clusters);
  out.num_clusters = params.num_clusters;
  return out;
}

ClusterAssignment spectral_cluster(const AffinityGraph& w, const SpectralParams& params) {
  params.validate(w.size());
  return kmeans(spectral_embed(w, params.num_clusters), params);
}

}  // namespace fssc
