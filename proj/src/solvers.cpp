#include "fssc/solvers.hpp"

#include "fssc/error.hpp"

#include <cmath>
#include <string>

namespace fssc {

void SolverParams::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw ParameterError("tau must be positive and finite, got " + std::to_string(tau));
  }
  if (!(rank_eps >= 0.0 && rank_eps < 1.0)) {
    throw ParameterError("rank_eps must lie in [0, 1), got " + std::to_string(rank_eps));
  }
}

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::fssc:
      return "fssc";
    case Algorithm::lrsc:
      return "lrsc";
    case Algorithm::l2graph:
      return "l2graph";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "fssc") return Algorithm::fssc;
  if (name == "lrsc") return Algorithm::lrsc;
  if (name == "l2graph" || name == "l2-graph") return Algorithm::l2graph;
  throw ParameterError("unknown algorithm '" + std::string(name) +
                       "' (expected fssc, lrsc or l2graph)");
}

SvdFactors thin_svd(const DataMatrix& y, double rank_eps) {
  if (!(rank_eps >= 0.0 && rank_eps < 1.0)) {
    throw ParameterError("rank_eps must lie in [0, 1)");
  }
  const Matrix& values = y.values();
  Eigen::BDCSVD<Matrix> svd(values, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw NumericalError("SVD did not converge");
  }

  const Vector& sigma = svd.singularValues();
  const double largest = sigma.size() > 0 ? sigma(0) : 0.0;
  const double cutoff = rank_eps * largest;
  Index rank = 0;
  if (largest > 0.0) {
    while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;
  }

  SvdFactors factors;
  factors.left_vectors = svd.matrixU().leftCols(rank);
  factors.singular_values = sigma.head(rank);
  factors.right_vectors = svd.matrixV().leftCols(rank);
  factors.rank_tolerance = cutoff;
  return factors;
}

double fssc_shrinkage(double lambda, double tau) {
  if (lambda <= 0.0) return 0.0;
  const double t = tau * lambda * lambda;
  return t / (1.0 + t);
}

double lrsc_shrinkage(double lambda, double tau) {
  if (lambda <= 0.0) return 0.0;
  const double t = tau * lambda * lambda;
  return t > 1.0 ? 1.0 - 1.0 / t : 0.0;
}

namespace {

// C = V diag(delta) V^T, assembled through a symmetric rank update so the
// result is exactly symmetric.
Matrix spectral_product(const Matrix& v, const Vector& delta) {
  const Index n = v.rows();
  Matrix c = Matrix::Zero(n, n);
  Index kept = 0;
  for (Index i = 0; i < delta.size(); ++i) {
    if (delta(i) > 0.0) ++kept;
  }
  if (kept == 0) return c;

  Matrix scaled(n, kept);
  Index col = 0;
  for (Index i = 0; i < delta.size(); ++i) {
    if (delta(i) > 0.0) scaled.col(col++) = v.col(i) * std::sqrt(delta(i));
  }
  c.selfadjointView<Eigen::Lower>().rankUpdate(scaled);
  c.triangularView<Eigen::StrictlyUpper>() = c.transpose();
  return c;
}

void symmetrize(Matrix& c) {
  c = (0.5 * (c + c.transpose())).eval();
}

CoefficientMatrix fssc_spectral(const DataMatrix& y, const SolverParams& params) {
  const SvdFactors svd = thin_svd(y, params.rank_eps);
  Vector delta(svd.rank());
  for (Index i = 0; i < svd.rank(); ++i) {
    delta(i) = fssc_shrinkage(svd.singular_values(i), params.tau);
  }
  CoefficientMatrix out;
  if (svd.rank() == 0) {
    out.values = Matrix::Zero(y.samples(), y.samples());
  } else {
    out.values = spectral_product(svd.right_vectors, delta);
  }
  out.symmetric = true;
  return out;
}

CoefficientMatrix fssc_ridge(const DataMatrix& y, const SolverParams& params) {
  const Index n = y.samples();
  Matrix gram = Matrix::Zero(n, n);
  gram.selfadjointView<Eigen::Lower>().rankUpdate(y.values().transpose(), params.tau);
  gram.triangularView<Eigen::StrictlyUpper>() = gram.transpose();

  Matrix system = gram;
  system.diagonal().array() += 1.0;
  Eigen::LLT<Matrix> llt(system);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("Cholesky factorization of tau*Y^T*Y + I failed");
  }
  CoefficientMatrix out;
  out.values = llt.solve(gram);
  symmetrize(out.values);
  out.symmetric = true;
  return out;
}

}  // namespace

CoefficientMatrix fssc_coefficients(const DataMatrix& y, const SolverParams& params,
                                    FsscRoute route) {
  params.validate();
  if (route == FsscRoute::automatic) {
    route = y.samples() <= y.features() ? FsscRoute::ridge : FsscRoute::spectral;
  }
  return route == FsscRoute::ridge ? fssc_ridge(y, params) : fssc_spectral(y, params);
}

CoefficientMatrix lrsc_coefficients(const DataMatrix& y, const SolverParams& params) {
  params.validate();
  const SvdFactors svd = thin_svd(y, params.rank_eps);
  Vector delta(svd.rank());
  for (Index i = 0; i < svd.rank(); ++i) {
    delta(i) = lrsc_shrinkage(svd.singular_values(i), params.tau);
  }
  CoefficientMatrix out;
  out.values = svd.rank() == 0 ? Matrix::Zero(y.samples(), y.samples())
                               : spectral_product(svd.right_vectors, delta);
  out.symmetric = true;
  return out;
}

namespace {

// Wide data (m < n): solve in the m-dimensional feature space through
// c = Y_i^T (Y_i Y_i^T + 2 tau I)^{-1} y_i, with Y_i Y_i^T = Y Y^T - y_i y_i^T.
void l2graph_wide(const Matrix& y, double tau, Matrix& c) {
  const Index m = y.rows();
  const Index n = y.cols();
  Matrix outer = Matrix::Zero(m, m);
  outer.selfadjointView<Eigen::Lower>().rankUpdate(y);

  Matrix system(m, m);
  Eigen::LLT<Matrix> llt(m);
  for (Index i = 0; i < n; ++i) {
    system = outer;
    system.selfadjointView<Eigen::Lower>().rankUpdate(y.col(i), -1.0);
    system.diagonal().array() += 2.0 * tau;
    llt.compute(system);
    if (llt.info() != Eigen::Success) {
      throw NumericalError("Cholesky factorization failed for column " + std::to_string(i));
    }
    const Vector z = llt.solve(y.col(i));
    c.col(i).noalias() = y.transpose() * z;
    c(i, i) = 0.0;
  }
}

// Tall data (m >= n): with P = (Y^T Y + 2 tau I)^{-1}, the restricted system
// for column i has solution c_{-i} = -P_{-i,i} / P_{ii} (Schur complement).
void l2graph_tall(const Matrix& y, double tau, Matrix& c) {
  const Index n = y.cols();
  Matrix system = Matrix::Zero(n, n);
  system.selfadjointView<Eigen::Lower>().rankUpdate(y.transpose());
  system.triangularView<Eigen::StrictlyUpper>() = system.transpose();
  system.diagonal().array() += 2.0 * tau;
  Eigen::LLT<Matrix> llt(system);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("Cholesky factorization of Y^T*Y + 2*tau*I failed");
  }
  const Matrix inverse = llt.solve(Matrix::Identity(n, n));
  for (Index i = 0; i < n; ++i) {
    if (y.col(i).isZero(0.0)) continue;
    c.col(i) = -inverse.col(i) / inverse(i, i);
    c(i, i) = 0.0;
  }
}

}  // namespace

CoefficientMatrix l2graph_coefficients(const DataMatrix& y, const SolverParams& params,
                                       bool normalize) {
  params.validate();
  const Index n = y.samples();
  CoefficientMatrix out;
  out.values = Matrix::Zero(n, n);
  if (y.features() < n) {
    l2graph_wide(y.values(), params.tau, out.values);
  } else {
    l2graph_tall(y.values(), params.tau, out.values);
  }

  if (normalize) {
    for (Index i = 0; i < n; ++i) {
      const double norm = out.values.col(i).norm();
      if (norm > 0.0) out.values.col(i) /= norm;
    }
  }
  out.symmetric = false;
  return out;
}

}  // namespace fssc
