#include "doctest.h"
#include "oracles.hpp"

#include "fssc/error.hpp"
#include "fssc/graph.hpp"

#include <algorithm>
#include <random>

using namespace fssc;

namespace {

CoefficientMatrix coeffs(Matrix m) { return CoefficientMatrix{std::move(m), false}; }

Index column_nnz(const Matrix& m, Index j) {
  return static_cast<Index>((m.col(j).array() != 0.0).count());
}

}  // namespace

TEST_CASE("SparsifyParams range") {
  CHECK_THROWS_AS((SparsifyParams{0, true}.validate(5)), ParameterError);
  CHECK_THROWS_AS((SparsifyParams{5, true}.validate(5)), ParameterError);
  CHECK_NOTHROW((SparsifyParams{4, true}.validate(5)));
  CHECK_NOTHROW((SparsifyParams{5, false}.validate(5)));
  CHECK_THROWS_AS((SparsifyParams{6, false}.validate(5)), ParameterError);
  CHECK_THROWS_AS(sparsify_topk(coeffs(Matrix::Ones(3, 3)), {3, true}), ParameterError);
}

TEST_CASE("sparsify_topk examples") {
  SUBCASE("absolute values, two largest kept") {
    Matrix c = Matrix::Zero(4, 4);
    c.col(3) << 0.5, -0.9, 0.1, 0.3;  // diagonal entry (3,3) is 0.3
    const Matrix out = sparsify_topk(coeffs(c), {2, false}).values;
    CHECK(out(0, 3) == 0.5);
    CHECK(out(1, 3) == 0.9);
    CHECK(out(2, 3) == 0.0);
    CHECK(out(3, 3) == 0.0);
  }
  SUBCASE("k = n without diagonal zeroing is |C|") {
    std::mt19937_64 rng(1);
    const Matrix c = oracle::random_matrix(6, 6, rng);
    CHECK(sparsify_topk(coeffs(c), {6, false}).values == c.cwiseAbs());
  }
  SUBCASE("ties go to the lowest row index") {
    Matrix c = Matrix::Zero(4, 4);
    c.col(3) << 0.4, 0.4, 0.4, 0.1;
    const Matrix out = sparsify_topk(coeffs(c), {2, false}).values;
    CHECK(out(0, 3) == 0.4);
    CHECK(out(1, 3) == 0.4);
    CHECK(out(2, 3) == 0.0);
  }
  SUBCASE("zero diagonal removes self weights before ranking") {
    Matrix c = Matrix::Zero(3, 3);
    c.col(0) << 5.0, 1.0, 2.0;
    const Matrix out = sparsify_topk(coeffs(c), {1, true}).values;
    CHECK(out(0, 0) == 0.0);
    CHECK(out(2, 0) == 2.0);
    CHECK(out(1, 0) == 0.0);
  }
}

TEST_CASE("sparsify_topk properties") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 3 + trial % 12;
    Matrix c = oracle::random_matrix(n, n, rng);
    // Sprinkle exact zeros so some columns have fewer than k nonzeros.
    for (Index i = 0; i < n; ++i) c(trial % n, i) = 0.0;
    c.col(0).tail(n - 1).setZero();
    const Index k = 1 + trial % (n - 1);
    for (bool zero_diag : {true, false}) {
      const SparsifyParams params{k, zero_diag};
      const Matrix once = sparsify_topk(coeffs(c), params).values;
      CHECK(once.minCoeff() >= 0.0);
      CHECK(sparsify_topk(coeffs(once), params).values == once);

      Matrix magnitude = c.cwiseAbs();
      if (zero_diag) magnitude.diagonal().setZero();
      for (Index j = 0; j < n; ++j) {
        CHECK(column_nnz(once, j) == std::min(k, column_nnz(magnitude, j)));
        // Every kept entry is at least as large as every dropped one.
        double smallest_kept = std::numeric_limits<double>::infinity();
        double largest_dropped = 0.0;
        for (Index i = 0; i < n; ++i) {
          if (once(i, j) != 0.0) {
            CHECK(once(i, j) == magnitude(i, j));
            smallest_kept = std::min(smallest_kept, once(i, j));
          } else {
            largest_dropped = std::max(largest_dropped, magnitude(i, j));
          }
        }
        CHECK(largest_dropped <= smallest_kept);
      }
    }
  }
}

TEST_CASE("build_affinity") {
  SUBCASE("zero input warns on every node") {
    const AffinityGraph g = build_affinity(coeffs(Matrix::Zero(3, 3)));
    CHECK(g.values.isZero(0.0));
    CHECK(g.isolated_nodes == std::vector<Index>{0, 1, 2});
    CHECK(g.has_warnings());
  }
  SUBCASE("single entry is mirrored") {
    Matrix c = Matrix::Zero(3, 3);
    c(0, 1) = 0.9;
    const AffinityGraph g = build_affinity(coeffs(c));
    CHECK(g.values(0, 1) == 0.9);
    CHECK(g.values(1, 0) == 0.9);
    CHECK(g.values.sum() == doctest::Approx(1.8));
    CHECK(g.isolated_nodes == std::vector<Index>{2});
  }
  SUBCASE("both directions add up") {
    Matrix c = Matrix::Zero(2, 2);
    c(0, 1) = 0.3;
    c(1, 0) = 0.5;
    const AffinityGraph g = build_affinity(coeffs(c));
    CHECK(g.values(0, 1) == doctest::Approx(0.8));
    CHECK(g.values(1, 0) == g.values(0, 1));
    CHECK_FALSE(g.has_warnings());
  }
  SUBCASE("negative input is rejected") {
    Matrix c = Matrix::Zero(2, 2);
    c(0, 1) = -0.1;
    CHECK_THROWS_AS(build_affinity(coeffs(c)), InputError);
  }
  SUBCASE("random output is exactly symmetric and nonnegative") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix c = oracle::random_matrix(9, 9, rng);
      const AffinityGraph g = build_affinity(sparsify_topk(coeffs(c), {3, true}));
      CHECK(g.values == g.values.transpose());
      CHECK(g.values.minCoeff() >= 0.0);
      CHECK(g.values.diagonal().isZero(0.0));
      CHECK_FALSE(g.has_warnings());
    }
  }
}

TEST_CASE("affinity is permutation equivariant") {
  std::mt19937_64 rng(4);
  const Index n = 10;
  for (int trial = 0; trial < 10; ++trial) {
    // Distinct magnitudes so the tie rule cannot depend on ordering.
    Matrix c = oracle::random_matrix(n, n, rng);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Eigen::PermutationMatrix<Eigen::Dynamic> p(n);
    for (Index i = 0; i < n; ++i) p.indices()(i) = perm[static_cast<std::size_t>(i)];

    const SparsifyParams params{4, true};
    const Matrix w = build_affinity(sparsify_topk(coeffs(c), params)).values;
    const Matrix permuted_c = p.transpose() * c * p;
    const Matrix w_perm = build_affinity(sparsify_topk(coeffs(permuted_c), params)).values;
    CHECK(w_perm == Matrix(p.transpose() * w * p));
  }
}

TEST_CASE("AffinityGraph::from_matrix validation") {
  Matrix w = Matrix::Zero(3, 3);
  w(0, 1) = 1.0;
  CHECK_THROWS_AS(AffinityGraph::from_matrix(w), InputError);
  w(1, 0) = 1.0;
  const AffinityGraph g = AffinityGraph::from_matrix(w);
  CHECK(g.isolated_nodes == std::vector<Index>{2});
  w(0, 1) = w(1, 0) = -1.0;
  CHECK_THROWS_AS(AffinityGraph::from_matrix(w), InputError);
  CHECK_THROWS_AS(AffinityGraph::from_matrix(Matrix::Zero(2, 3)), InputError);
}
