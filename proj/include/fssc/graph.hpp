#pragma once

#include "fssc/types.hpp"

#include <vector>

namespace fssc {

struct SparsifyParams {
  /// Coefficients kept per column.
  Index k = 1;
  /// Drop self-coefficients before ranking a column.
  bool zero_diagonal = true;

  /// Requires 1 <= k <= n - 1 with zero_diagonal, 1 <= k <= n otherwise.
  void validate(Index n) const;
};

/// Symmetric nonnegative affinity matrix.
///
/// `isolated_nodes` lists nodes whose row and column are entirely zero; these
/// are reported rather than rejected, and the spectral stage treats them as
/// singleton components.
struct AffinityGraph {
  Matrix values;
  std::vector<Index> isolated_nodes;

  Index size() const noexcept { return values.rows(); }
  bool has_warnings() const noexcept { return !isolated_nodes.empty(); }

  /// Wraps an externally built matrix. Throws InputError unless the matrix is
  /// square, exactly symmetric and nonnegative.
  static AffinityGraph from_matrix(Matrix w);
};

/// Takes |C| and keeps the k largest entries of every column; ties at the
/// k-th magnitude go to the lower row index.
CoefficientMatrix sparsify_topk(const CoefficientMatrix& c, const SparsifyParams& params);

/// W = C_hat + C_hat^T for a nonnegative C_hat.
AffinityGraph build_affinity(const CoefficientMatrix& c_hat);

}  // namespace fssc
