#include "fssc/graph.hpp"

#include "fssc/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace fssc {

namespace {

std::vector<Index> find_isolated(const Matrix& w) {
  std::vector<Index> isolated;
  for (Index i = 0; i < w.rows(); ++i) {
    if (w.row(i).isZero(0.0) && w.col(i).isZero(0.0)) isolated.push_back(i);
  }
  return isolated;
}

}  // namespace

void SparsifyParams::validate(Index n) const {
  const Index upper = zero_diagonal ? n - 1 : n;
  if (k < 1 || k > upper) {
    throw ParameterError("k must lie in [1, " + std::to_string(upper) + "] for n = " +
                         std::to_string(n) + (zero_diagonal ? " with zero diagonal" : "") +
                         ", got " + std::to_string(k));
  }
}

AffinityGraph AffinityGraph::from_matrix(Matrix w) {
  if (w.rows() != w.cols()) {
    throw InputError("affinity matrix must be square");
  }
  for (Index j = 0; j < w.cols(); ++j) {
    for (Index i = 0; i < w.rows(); ++i) {
      if (!std::isfinite(w(i, j)) || w(i, j) < 0.0) {
        throw InputError("affinity matrix entries must be finite and nonnegative");
      }
      if (w(i, j) != w(j, i)) {
        throw InputError("affinity matrix must be symmetric");
      }
    }
  }
  AffinityGraph graph;
  graph.isolated_nodes = find_isolated(w);
  graph.values = std::move(w);
  return graph;
}

CoefficientMatrix sparsify_topk(const CoefficientMatrix& c, const SparsifyParams& params) {
  const Index n = c.values.rows();
  if (c.values.cols() != n) {
    throw InputError("coefficient matrix must be square");
  }
  params.validate(n);

  CoefficientMatrix out;
  out.values = Matrix::Zero(n, n);
  out.symmetric = false;

  std::vector<Index> order(static_cast<std::size_t>(n));
  Vector magnitude(n);
  for (Index j = 0; j < n; ++j) {
    magnitude = c.values.col(j).cwiseAbs();
    if (params.zero_diagonal) magnitude(j) = 0.0;

    std::iota(order.begin(), order.end(), Index{0});
    const auto kth = order.begin() + params.k;
    std::partial_sort(order.begin(), kth, order.end(), [&](Index a, Index b) {
      if (magnitude(a) != magnitude(b)) return magnitude(a) > magnitude(b);
      return a < b;
    });
    for (auto it = order.begin(); it != kth; ++it) {
      out.values(*it, j) = magnitude(*it);
    }
  }
  return out;
}

AffinityGraph build_affinity(const CoefficientMatrix& c_hat) {
  const Index n = c_hat.values.rows();
  if (c_hat.values.cols() != n) {
    throw InputError("coefficient matrix must be square");
  }
  AffinityGraph graph;
  graph.values.resize(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      const double a = c_hat.values(i, j);
      if (a < 0.0) {
        throw InputError("sparsified coefficients must be nonnegative");
      }
    }
  }
  // Same summation order for (i, j) and (j, i) keeps W exactly symmetric.
  for (Index j = 0; j < n; ++j) {
    for (Index i = j; i < n; ++i) {
      const double sum = c_hat.values(i, j) + c_hat.values(j, i);
      graph.values(i, j) = sum;
      graph.values(j, i) = sum;
    }
  }
  graph.isolated_nodes = find_isolated(graph.values);
  return graph;
}

}  // namespace fssc
