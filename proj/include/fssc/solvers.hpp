#pragma once

#include "fssc/types.hpp"

#include <string_view>

namespace fssc {

struct SolverParams {
  /// Weight of the reconstruction term relative to the regularizer.
  double tau = 1.0;
  /// Singular values at or below rank_eps * sigma_max count as zero.
  double rank_eps = 1e-12;

  void validate() const;
};

enum class Algorithm { fssc, lrsc, l2graph };

std::string_view to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view name);

/// Thin SVD of Y truncated to singular values above rank_eps * sigma_max.
/// A zero matrix yields rank 0 and empty factors.
SvdFactors thin_svd(const DataMatrix& y, double rank_eps);

/// Per-singular-value multiplier of the F-norm solution:
/// tau*l^2 / (1 + tau*l^2), and 0 for l == 0.
double fssc_shrinkage(double lambda, double tau);

/// Per-singular-value multiplier of the closed-form LRSC solution:
/// 1 - 1/(tau*l^2) when l > 1/sqrt(tau), otherwise 0.
double lrsc_shrinkage(double lambda, double tau);

/// How fssc_coefficients evaluates the closed form.
enum class FsscRoute {
  automatic,  ///< ridge when n <= m, spectral otherwise
  spectral,   ///< V diag(delta) V^T from the thin SVD (reference)
  ridge,      ///< (tau Y^T Y + I)^{-1} tau Y^T Y via Cholesky
};

/// Minimizer of (tau/2)||Y - YC||_F^2 + (1/2)||C||_F^2 subject to C = C^T.
CoefficientMatrix fssc_coefficients(const DataMatrix& y, const SolverParams& params,
                                    FsscRoute route = FsscRoute::automatic);

/// Minimizer of ||C||_* + (tau/2)||Y - YC||_F^2 subject to C = C^T.
CoefficientMatrix lrsc_coefficients(const DataMatrix& y, const SolverParams& params);

/// Column-wise ridge codes: column i minimizes
/// (1/2)||y_i - Y_i c||^2 + tau ||c||^2 with Y_i = Y with column i zeroed.
/// When `normalize` is set, nonzero columns are scaled to unit norm.
CoefficientMatrix l2graph_coefficients(const DataMatrix& y, const SolverParams& params,
                                       bool normalize = true);

}  // namespace fssc
