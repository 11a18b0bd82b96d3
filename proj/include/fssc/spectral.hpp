#pragma once

#include "fssc/graph.hpp"
#include "fssc/types.hpp"

#include <cstdint>
#include <vector>

namespace fssc {

struct SpectralParams {
  Index num_clusters = 2;
  int kmeans_restarts = 20;
  int kmeans_max_iters = 300;
  std::uint64_t seed = 0;

  void validate(Index n) const;
};

struct ClusterAssignment {
  std::vector<int> labels;
  Index num_clusters = 0;
};

/// Mixes a base seed with a stream index (splitmix64 finalizer), so restart
/// and repeat streams do not depend on execution order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// L = I - D^{-1/2} W D^{-1/2}. Isolated nodes get a unit diagonal and no
/// off-diagonal entries.
Matrix normalized_laplacian(const AffinityGraph& w);

/// Eigenvectors of the normalized Laplacian for the `u` smallest eigenvalues,
/// one row per node, rows scaled to unit length (zero rows stay zero).
Matrix spectral_embed(const AffinityGraph& w, Index u);

/// Lloyd's k-means over the rows of `points` with k-means++ seeding; the
/// restart with the lowest inertia wins. Labels are renumbered in order of
/// first appearance.
ClusterAssignment kmeans(const Matrix& points, const SpectralParams& params);

/// spectral_embed followed by kmeans.
ClusterAssignment spectral_cluster(const AffinityGraph& w, const SpectralParams& params);

}  // namespace fssc
